//! Finite presentation of the fundamental group relative to a spanning tree,
//! and its abelianization.
//!
//! Generators, in order: for each vertex by id, `a{v}` (cyclic) or the handle
//! generators `h{v}.{j}` followed by the boundary classes `p{v}.{slot}`
//! (surface); then a stable letter `t{e}` for each edge outside the tree.
//! Relators, in order: one surface relator per surface vertex, then one per
//! edge by id. Every relator is a word equal to the identity.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::model::{Attachment, EdgeId, GraphOfGroups, VertexId, VertexKind};
use crate::snf::smith_normal_form;

/// A letter and its nonzero exponent.
pub type Syllable = (usize, i64);

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Vec<Syllable>>,
}

impl Presentation {
    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// Relator-by-generator matrix of exponent sums.
    pub fn exponent_matrix(&self) -> Vec<Vec<i64>> {
        self.relators
            .iter()
            .map(|word| {
                let mut row = vec![0i64; self.generators.len()];
                for &(g, e) in word {
                    row[g] += e;
                }
                row
            })
            .collect()
    }

    pub fn word_to_string(&self, word: &[Syllable]) -> String {
        word.iter()
            .map(|&(g, e)| match e {
                1 => self.generators[g].clone(),
                _ => format!("{}^{}", self.generators[g], e),
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gen: {}", self.generators.join(" "))?;
        for r in &self.relators {
            writeln!(f, "rel: {}", self.word_to_string(r))?;
        }
        Ok(())
    }
}

/// Breadth-first spanning tree from the lowest vertex id, scanning incident
/// edges in ascending id. Loops are never tree edges.
pub fn spanning_tree(graph: &GraphOfGroups) -> BTreeSet<EdgeId> {
    spanning_tree_from(graph, 0)
}

/// As [`spanning_tree`], rooted at `root`.
pub fn spanning_tree_from(graph: &GraphOfGroups, root: VertexId) -> BTreeSet<EdgeId> {
    let mut tree = BTreeSet::new();
    if root >= graph.vertex_count() {
        return tree;
    }
    let adj = graph.adjacency();
    let mut seen = vec![false; graph.vertex_count()];
    let mut queue = VecDeque::from([root]);
    seen[root] = true;
    while let Some(v) = queue.pop_front() {
        let mut nbrs = adj[v].clone();
        nbrs.sort_unstable();
        for (e, w) in nbrs {
            if !seen[w] {
                seen[w] = true;
                tree.insert(e);
                queue.push_back(w);
            }
        }
    }
    tree
}

pub fn presentation(graph: &GraphOfGroups) -> Presentation {
    presentation_with_tree(graph, &spanning_tree(graph))
}

/// Presentation relative to an arbitrary spanning tree.
pub fn presentation_with_tree(graph: &GraphOfGroups, tree: &BTreeSet<EdgeId>) -> Presentation {
    let mut generators = Vec::new();
    // Per vertex: index of a{v}, or (first handle index, first boundary index).
    let mut base = Vec::with_capacity(graph.vertex_count());
    let mut relators = Vec::new();
    for v in graph.vertices() {
        match &v.kind {
            VertexKind::Cyclic => {
                base.push((generators.len(), generators.len()));
                generators.push(format!("a{}", v.id));
            }
            VertexKind::Surface(s) => {
                let h0 = generators.len();
                for j in 1..=s.handle_generators() {
                    generators.push(format!("h{}.{}", v.id, j));
                }
                let p0 = generators.len();
                for slot in s.slots() {
                    generators.push(format!("p{}.{}", v.id, slot));
                }
                base.push((h0, p0));
                // Π p_k Π [a_j, b_j]  or  Π p_k Π a_j².
                let mut word: Vec<Syllable> = (0..s.boundary).map(|k| (p0 + k, 1)).collect();
                if s.orientable {
                    for j in 0..s.genus as usize {
                        let (a, b) = (h0 + 2 * j, h0 + 2 * j + 1);
                        word.extend([(a, 1), (b, 1), (a, -1), (b, -1)]);
                    }
                } else {
                    word.extend((0..s.genus as usize).map(|j| (h0 + j, 2)));
                }
                relators.push(word);
            }
        }
    }

    let image = |v: VertexId, att: Attachment| -> Syllable {
        match att {
            Attachment::Cyclic { exponent } => (base[v].0, exponent),
            Attachment::Surface { slot, exponent } => (base[v].1 + slot - 1, exponent),
        }
    };
    for e in graph.edges() {
        let (g, n) = image(e.source, e.source_end);
        let (h, m) = image(e.target, e.target_end);
        if tree.contains(&e.id) {
            relators.push(vec![(g, n), (h, -m)]);
        } else {
            let t = generators.len();
            generators.push(format!("t{}", e.id));
            relators.push(vec![(t, 1), (g, n), (t, -1), (h, -m)]);
        }
    }
    Presentation { generators, relators }
}

/// Abelianization `Z^free_rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k` with `d_i | d_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct HomologyDescriptor {
    pub free_rank: usize,
    #[serde(serialize_with = "decimal_strings")]
    pub torsion: Vec<BigInt>,
}

fn decimal_strings<S: serde::Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(ToString::to_string))
}

impl HomologyDescriptor {
    pub fn new(free_rank: usize, torsion: impl IntoIterator<Item = i64>) -> Self {
        HomologyDescriptor { free_rank, torsion: torsion.into_iter().map(BigInt::from).collect() }
    }
}

impl fmt::Display for HomologyDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        match self.free_rank {
            0 => {}
            1 => terms.push("Z".to_string()),
            r => terms.push(format!("Z^{r}")),
        }
        terms.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

pub fn abelianization(p: &Presentation) -> HomologyDescriptor {
    let snf = smith_normal_form(&p.exponent_matrix());
    let one = BigInt::from(1);
    HomologyDescriptor {
        free_rank: p.generators.len() - snf.rank(),
        torsion: snf.invariants.into_iter().filter(|d| *d > one).collect(),
    }
}

/// First homology of the fundamental group of the graph.
pub fn homology(graph: &GraphOfGroups) -> HomologyDescriptor {
    abelianization(&presentation(graph))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::SurfaceData;

    fn bs(m: i64, n: i64) -> GraphOfGroups {
        let mut g = GraphOfGroups::new();
        let a = g.add_cyclic("a");
        g.add_edge("t", a, a, Attachment::cyclic(m), Attachment::cyclic(n));
        g
    }

    fn q1() -> GraphOfGroups {
        let mut g = GraphOfGroups::new();
        let p = g.add_surface("P", SurfaceData::pants());
        let w: Vec<_> = (1..=3).map(|i| g.add_cyclic(format!("w{i}"))).collect();
        for (i, &wi) in w.iter().enumerate() {
            g.add_edge(format!("b{}", i + 1), p, wi, Attachment::surface(i + 1, 2), Attachment::cyclic(3));
        }
        for (i, &wi) in w.iter().enumerate() {
            g.add_edge(format!("l{}", i + 1), wi, wi, Attachment::cyclic(2), Attachment::cyclic(3));
        }
        g
    }

    #[test]
    fn trees() {
        assert!(spanning_tree(&bs(2, 3)).is_empty());
        let mut seg = GraphOfGroups::new();
        let a = seg.add_cyclic("a");
        let b = seg.add_cyclic("b");
        seg.add_edge("e", a, b, Attachment::cyclic(2), Attachment::cyclic(2));
        assert_eq!(spanning_tree(&seg), BTreeSet::from([0]));
        assert_eq!(spanning_tree(&q1()), BTreeSet::from([0, 1, 2]));
    }

    #[test]
    fn baumslag_solitar_presentation() {
        let p = presentation(&bs(2, 3));
        assert_eq!(p.to_string(), "gen: a0 t0\nrel: t0 a0^2 t0^-1 a0^-3\n");
    }

    #[test]
    fn klein_segment_presentation() {
        let mut g = GraphOfGroups::new();
        let a = g.add_cyclic("a");
        let b = g.add_cyclic("b");
        g.add_edge("e", a, b, Attachment::cyclic(2), Attachment::cyclic(2));
        let p = presentation(&g);
        assert_eq!(p.to_string(), "gen: a0 a1\nrel: a0^2 a1^-2\n");
        assert_eq!(abelianization(&p), HomologyDescriptor::new(1, [2]));
    }

    #[test]
    fn q1_presentation_shape() {
        let g = q1();
        let p = presentation(&g);
        assert_eq!(p.generators.len(), 9);
        assert_eq!(p.relators.len(), 7);
        assert_eq!(p.word_to_string(&p.relators[0]), "p0.1 p0.2 p0.3");
        assert_eq!(p.word_to_string(&p.relators[1]), "p0.1^2 a1^-3");
        assert_eq!(p.word_to_string(&p.relators[4]), "t3 a1^2 t3^-1 a1^-3");
    }

    #[test]
    fn surface_relators() {
        let mut g = GraphOfGroups::new();
        let s = g.add_surface("s", SurfaceData::orientable(1, 1));
        let k = g.add_surface("k", SurfaceData::nonorientable(2, 1));
        g.add_edge("e", s, k, Attachment::surface(1, 1), Attachment::surface(1, 1));
        let p = presentation(&g);
        assert_eq!(p.generators, ["h0.1", "h0.2", "p0.1", "h1.1", "h1.2", "p1.1"]);
        assert_eq!(p.word_to_string(&p.relators[0]), "p0.1 h0.1 h0.2 h0.1^-1 h0.2^-1");
        assert_eq!(p.word_to_string(&p.relators[1]), "p1.1 h1.1^2 h1.2^2");
    }

    #[test]
    fn homology_values() {
        assert_eq!(homology(&bs(2, 3)), HomologyDescriptor::new(1, []));
        assert_eq!(homology(&bs(2, 5)), HomologyDescriptor::new(1, [3]));
        assert_eq!(homology(&bs(1, 1)), HomologyDescriptor::new(2, []));
        assert_eq!(homology(&q1()), HomologyDescriptor::new(3, [2, 2]));
    }

    #[test]
    fn homology_display() {
        assert_eq!(HomologyDescriptor::new(1, [2]).to_string(), "Z + Z/2");
        assert_eq!(HomologyDescriptor::new(3, [2, 2]).to_string(), "Z^3 + Z/2 + Z/2");
        assert_eq!(HomologyDescriptor::new(0, []).to_string(), "0");
    }
}
