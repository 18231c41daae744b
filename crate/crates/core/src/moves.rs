//! Elementary deformations and folds.
//!
//! An elementary collapse removes a non-loop edge one of whose boundary maps
//! is an isomorphism onto a cyclic vertex group, merging that vertex into the
//! other endpoint. Expansion is its inverse. A fold enlarges an edge group
//! `C` to an intermediate cyclic group `C ⊂ C₁ ⊂ A` at one endpoint, written
//! here as a subdivision of the edge through a new cyclic vertex for `C₁`.

use serde::Serialize;
use thiserror::Error;

use crate::model::{Attachment, EdgeEnd, EdgeId, GraphOfGroups, Side, VertexId, VertexKind};

/// An edge end whose boundary map is an isomorphism, i.e. a cyclic end with
/// exponent `±1` on a non-loop edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CollapseSite {
    pub edge: EdgeId,
    pub collapsed_end: Side,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("edge {edge} {side} is not a collapse site")]
    NotCollapsible { edge: EdgeId, side: Side },
    #[error("collapsing edge {edge} would merge into surface vertex {survivor}")]
    UnsupportedCollapse { edge: EdgeId, survivor: VertexId },
    #[error("vertex {0} is not cyclic")]
    NotCyclic(VertexId),
    #[error("exponent {exponent} at edge {edge} {side} is not divisible by {n}")]
    NotDivisible { edge: EdgeId, side: Side, exponent: i64, n: i64 },
    #[error("edge {edge} {side} is not attached to vertex {vertex}")]
    NotIncident { edge: EdgeId, side: Side, vertex: VertexId },
    #[error("expansion exponent must be nonzero")]
    ZeroExponent,
    #[error("{k} is not a divisor greater than 1 of {exponent}")]
    NotDivisor { k: i64, exponent: i64 },
    #[error("edge {0} is a loop; loop folds are not supported")]
    LoopEdge(EdgeId),
    #[error("edge {edge} {side} is a surface end; folds apply to cyclic ends only")]
    SurfaceEnd { edge: EdgeId, side: Side },
    #[error("exponent overflow")]
    Overflow,
}

/// All collapse sites in ascending (edge, side) order. Sites whose surviving
/// endpoint is a surface vertex are included; [`collapse`] rejects them.
pub fn find_collapses(graph: &GraphOfGroups) -> Vec<CollapseSite> {
    let mut out = Vec::new();
    for e in graph.edges() {
        if e.is_loop() {
            continue;
        }
        for side in Side::BOTH {
            if let Attachment::Cyclic { exponent: 1 | -1 } = e.end(side) {
                if matches!(graph.kind(e.vertex(side)), Some(VertexKind::Cyclic)) {
                    out.push(CollapseSite { edge: e.id, collapsed_end: side });
                }
            }
        }
    }
    out
}

/// Whether [`collapse`] can rewrite this site (its survivor is cyclic).
pub fn is_supported(graph: &GraphOfGroups, site: CollapseSite) -> bool {
    graph
        .edge(site.edge)
        .is_some_and(|e| !graph.is_surface(e.vertex(site.collapsed_end.opposite())))
}

pub fn collapse(graph: &GraphOfGroups, site: CollapseSite) -> Result<GraphOfGroups, MoveError> {
    let edge = graph.edge(site.edge).ok_or(MoveError::UnknownEdge(site.edge))?;
    if !find_collapses(graph).contains(&site) {
        return Err(MoveError::NotCollapsible { edge: site.edge, side: site.collapsed_end });
    }
    let gone = edge.vertex(site.collapsed_end);
    let survivor = edge.vertex(site.collapsed_end.opposite());
    if graph.is_surface(survivor) {
        return Err(MoveError::UnsupportedCollapse { edge: site.edge, survivor });
    }
    // G_gone = <c>, edge generator g = c^eps, g = a^n at the survivor, so
    // c = a^(eps * n) and c^k becomes a^(eps * n * k).
    let eps = edge.end(site.collapsed_end).exponent();
    let n = edge.end(site.collapsed_end.opposite()).exponent();
    let factor = eps.checked_mul(n).ok_or(MoveError::Overflow)?;

    let mut out = graph.clone();
    for end in graph.ends_at(gone) {
        if end.edge == site.edge {
            continue;
        }
        let e = out.edge_mut(end.edge).expect("edge exists");
        let k = e.end(end.side).exponent();
        let new = k.checked_mul(factor).ok_or(MoveError::Overflow)?;
        *e.end_mut(end.side) = Attachment::cyclic(new);
        e.set_vertex(end.side, survivor);
    }
    out.remove_vertex_and_edge(gone, site.edge);
    Ok(out)
}

/// Inserts an edge `vertex -(n, 1)- w` for a new cyclic vertex `w` standing
/// for the subgroup `<a^n>`, moving the listed ends from `vertex` to `w`.
pub fn expand(
    graph: &GraphOfGroups,
    vertex: VertexId,
    n: i64,
    moved_ends: &[EdgeEnd],
) -> Result<GraphOfGroups, MoveError> {
    match graph.kind(vertex) {
        None => return Err(MoveError::UnknownVertex(vertex)),
        Some(VertexKind::Surface(_)) => return Err(MoveError::NotCyclic(vertex)),
        Some(VertexKind::Cyclic) => {}
    }
    if n == 0 {
        return Err(MoveError::ZeroExponent);
    }
    for end in moved_ends {
        let e = graph.edge(end.edge).ok_or(MoveError::UnknownEdge(end.edge))?;
        if e.vertex(end.side) != vertex {
            return Err(MoveError::NotIncident { edge: end.edge, side: end.side, vertex });
        }
        let exponent = e.end(end.side).exponent();
        if exponent % n != 0 {
            return Err(MoveError::NotDivisible { edge: end.edge, side: end.side, exponent, n });
        }
    }

    let mut out = graph.clone();
    let base = format!("{}_x", graph.vertices()[vertex].name);
    let w = out.add_cyclic(graph.fresh_vertex_name(&base));
    for end in moved_ends {
        let e = out.edge_mut(end.edge).expect("checked");
        let k = e.end(end.side).exponent();
        *e.end_mut(end.side) = Attachment::cyclic(k / n);
        e.set_vertex(end.side, w);
    }
    let name = out.fresh_edge_name(&format!("{}_x", graph.vertices()[vertex].name));
    out.add_edge(name, vertex, w, Attachment::cyclic(n), Attachment::cyclic(1));
    Ok(out)
}

/// Folds edge `edge` at `side`, whose attachment is `a^n`, through
/// `C₁ = <a^k>`: the edge is rerouted to a new cyclic vertex `w` with
/// exponent `|n|/k` and a new edge `v -(sign(n)·k, 1)- w` is appended.
/// Collapsing the new edge at `w` restores the original graph.
pub fn fold(graph: &GraphOfGroups, edge: EdgeId, side: Side, k: i64) -> Result<GraphOfGroups, MoveError> {
    let e = graph.edge(edge).ok_or(MoveError::UnknownEdge(edge))?;
    if e.is_loop() {
        return Err(MoveError::LoopEdge(edge));
    }
    let n = match e.end(side) {
        Attachment::Cyclic { exponent } => exponent,
        Attachment::Surface { .. } => return Err(MoveError::SurfaceEnd { edge, side }),
    };
    if k < 2 || n % k != 0 {
        return Err(MoveError::NotDivisor { k, exponent: n });
    }
    let v = e.vertex(side);
    let mut out = graph.clone();
    let w = out.add_cyclic(graph.fresh_vertex_name(&format!("{}_f", graph.vertices()[v].name)));
    {
        let re = out.edge_mut(edge).expect("exists");
        *re.end_mut(side) = Attachment::cyclic(n.abs() / k);
        re.set_vertex(side, w);
    }
    let name = out.fresh_edge_name(&format!("{}_f", e.name));
    out.add_edge(name, v, w, Attachment::cyclic(n.signum() * k), Attachment::cyclic(1));
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Reducedness {
    pub reduced: bool,
    pub witnesses: Vec<CollapseSite>,
}

pub fn is_reduced(graph: &GraphOfGroups) -> Reducedness {
    let witnesses = find_collapses(graph);
    Reducedness { reduced: witnesses.is_empty(), witnesses }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReduceOutcome {
    pub graph: GraphOfGroups,
    pub collapses: usize,
    /// Remaining sites, all of which merge into a surface vertex.
    pub blocked: Vec<CollapseSite>,
}

impl ReduceOutcome {
    pub fn fully_reduced(&self) -> bool {
        self.blocked.is_empty()
    }
}

/// Collapses at the lowest supported site until none remains.
pub fn reduce(graph: &GraphOfGroups) -> Result<ReduceOutcome, MoveError> {
    let mut g = graph.clone();
    let mut collapses = 0;
    loop {
        let sites = find_collapses(&g);
        match sites.iter().find(|s| is_supported(&g, **s)) {
            Some(&site) => {
                g = collapse(&g, site)?;
                collapses += 1;
            }
            None => return Ok(ReduceOutcome { graph: g, collapses, blocked: sites }),
        }
    }
}

/// The one-edge splitting `Γ_e`: the vertex sets of the components of
/// `Γ − e`. A non-separating edge gives a single part (HNN extension).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OneEdgeSplitting {
    pub edge: EdgeId,
    pub parts: Vec<Vec<VertexId>>,
}

impl OneEdgeSplitting {
    pub fn is_hnn(&self) -> bool {
        self.parts.len() == 1
    }
}

pub fn one_edge_splitting(graph: &GraphOfGroups, edge: EdgeId) -> Result<OneEdgeSplitting, MoveError> {
    graph.edge(edge).ok_or(MoveError::UnknownEdge(edge))?;
    let parts = graph.components_where(|_| true, |e| e.id != edge);
    Ok(OneEdgeSplitting { edge, parts })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "witnesses", rename_all = "snake_case")]
pub enum Unfoldedness {
    Certified,
    /// Ends with label 1; the sufficient criterion does not apply.
    Inconclusive(Vec<EdgeEnd>),
}

/// Sufficient criterion for unfoldedness: every edge group is a proper
/// subgroup of both neighbouring vertex groups, i.e. every label exceeds 1.
pub fn certify_unfolded(graph: &GraphOfGroups) -> Unfoldedness {
    let ones: Vec<EdgeEnd> = graph
        .all_ends()
        .filter(|end| graph.attachment(*end).is_some_and(|a| a.label() <= 1))
        .collect();
    if ones.is_empty() {
        Unfoldedness::Certified
    } else {
        Unfoldedness::Inconclusive(ones)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::equivalent;
    use crate::model::SurfaceData;

    fn cyc(n: i64) -> Attachment {
        Attachment::cyclic(n)
    }

    fn bs(m: i64, n: i64) -> GraphOfGroups {
        let mut g = GraphOfGroups::new();
        let a = g.add_cyclic("a");
        g.add_edge("t", a, a, cyc(m), cyc(n));
        g
    }

    #[test]
    fn loops_are_never_collapse_sites() {
        assert!(find_collapses(&bs(1, 7)).is_empty());
        assert!(find_collapses(&bs(2, 3)).is_empty());
        assert!(is_reduced(&bs(2, 3)).reduced);
    }

    #[test]
    fn segment_site_at_label_one_end() {
        let mut g = GraphOfGroups::new();
        let u = g.add_cyclic("u");
        let w = g.add_cyclic("w");
        g.add_edge("e", u, w, cyc(5), cyc(1));
        assert_eq!(find_collapses(&g), vec![CollapseSite { edge: 0, collapsed_end: Side::Target }]);
        assert!(!is_reduced(&g).reduced);
    }

    #[test]
    fn collapse_substitutes_powers() {
        let mut g = GraphOfGroups::new();
        let u = g.add_cyclic("u");
        let w = g.add_cyclic("w");
        let x = g.add_cyclic("x");
        g.add_edge("e", u, w, cyc(5), cyc(1));
        g.add_edge("f", w, x, cyc(3), cyc(7));
        let out = collapse(&g, CollapseSite { edge: 0, collapsed_end: Side::Target }).unwrap();
        assert_eq!(out.vertex_count(), 2);
        assert_eq!(out.edge_count(), 1);
        let f = &out.edges()[0];
        assert_eq!((f.name.as_str(), f.source, f.target), ("f", 0, 1));
        assert_eq!((f.source_end, f.target_end), (cyc(15), cyc(7)));
        assert_eq!(out.vertices()[1].name, "x");
    }

    #[test]
    fn collapse_with_inverse_generator() {
        // c = g^-1 and g = u^2, so c^3 = u^-6.
        let mut g = GraphOfGroups::new();
        let u = g.add_cyclic("u");
        let w = g.add_cyclic("w");
        g.add_edge("e", u, w, cyc(2), cyc(-1));
        g.add_edge("l", w, w, cyc(3), cyc(4));
        let out = collapse(&g, CollapseSite { edge: 0, collapsed_end: Side::Target }).unwrap();
        assert_eq!(out.edges()[0].source_end, cyc(-6));
        assert_eq!(out.edges()[0].target_end, cyc(-8));
    }

    #[test]
    fn collapse_degree_one_leaf() {
        let mut g = GraphOfGroups::new();
        let u = g.add_cyclic("u");
        let w = g.add_cyclic("w");
        g.add_edge("e", u, w, cyc(2), cyc(-1));
        let out = collapse(&g, CollapseSite { edge: 0, collapsed_end: Side::Target }).unwrap();
        assert_eq!(out.vertex_count(), 1);
        assert_eq!(out.edge_count(), 0);
    }

    #[test]
    fn collapse_into_surface_is_unsupported() {
        let mut g = GraphOfGroups::new();
        let s = g.add_surface("s", SurfaceData::orientable(1, 1));
        let w = g.add_cyclic("w");
        g.add_edge("e", s, w, Attachment::surface(1, 2), cyc(1));
        let site = CollapseSite { edge: 0, collapsed_end: Side::Target };
        assert_eq!(find_collapses(&g), vec![site]);
        assert_eq!(collapse(&g, site), Err(MoveError::UnsupportedCollapse { edge: 0, survivor: s }));
        let r = reduce(&g).unwrap();
        assert!(!r.fully_reduced());
        assert_eq!(r.blocked, vec![site]);
        assert_eq!(r.graph, g);
    }

    #[test]
    fn expand_cases() {
        let mut g = GraphOfGroups::new();
        let u = g.add_cyclic("u");
        g.add_edge("l", u, u, cyc(4), cyc(6));

        let plain = expand(&g, u, 2, &[]).unwrap();
        assert_eq!(plain.vertex_count(), 2);
        let new = &plain.edges()[1];
        assert_eq!((new.source, new.target, new.source_end, new.target_end), (0, 1, cyc(2), cyc(1)));

        let moved = expand(&g, u, 2, &[EdgeEnd::new(0, Side::Source)]).unwrap();
        let l = &moved.edges()[0];
        assert_eq!((l.source, l.source_end, l.target, l.target_end), (1, cyc(2), 0, cyc(6)));

        assert!(matches!(
            expand(&g, u, 3, &[EdgeEnd::new(0, Side::Source)]),
            Err(MoveError::NotDivisible { exponent: 4, n: 3, .. })
        ));
        assert_eq!(expand(&g, u, 0, &[]), Err(MoveError::ZeroExponent));

        let back = collapse(&moved, CollapseSite { edge: 1, collapsed_end: Side::Target }).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn expand_rejects_surface_vertex() {
        let mut g = GraphOfGroups::new();
        let s = g.add_surface("s", SurfaceData::pants());
        assert_eq!(expand(&g, s, 2, &[]), Err(MoveError::NotCyclic(s)));
    }

    #[test]
    fn fold_subdivides_and_round_trips() {
        let mut g = GraphOfGroups::new();
        let v = g.add_cyclic("v");
        let u = g.add_cyclic("u");
        g.add_edge("e", v, u, cyc(6), cyc(5));
        let f = fold(&g, 0, Side::Source, 3).unwrap();
        // e: w -(2, 5)- u and the new edge v -(3, 1)- w.
        let e = &f.edges()[0];
        assert_eq!((e.source, e.source_end, e.target, e.target_end), (2, cyc(2), 1, cyc(5)));
        let n = &f.edges()[1];
        assert_eq!((n.source, n.source_end, n.target, n.target_end), (0, cyc(3), 2, cyc(1)));

        let back = collapse(&f, CollapseSite { edge: 1, collapsed_end: Side::Target }).unwrap();
        assert_eq!(back, g);

        assert_eq!(fold(&g, 0, Side::Source, 4), Err(MoveError::NotDivisor { k: 4, exponent: 6 }));
        assert_eq!(fold(&bs(2, 4), 0, Side::Source, 2), Err(MoveError::LoopEdge(0)));
    }

    #[test]
    fn fold_negative_exponent_round_trips() {
        let mut g = GraphOfGroups::new();
        let v = g.add_cyclic("v");
        let u = g.add_cyclic("u");
        g.add_edge("e", v, u, cyc(-6), cyc(5));
        for k in [2, 3, 6] {
            let f = fold(&g, 0, Side::Source, k).unwrap();
            let back = collapse(&f, CollapseSite { edge: 1, collapsed_end: Side::Target }).unwrap();
            assert_eq!(back, g, "k = {k}");
        }
    }

    #[test]
    fn fold_rejects_surface_end() {
        let mut g = GraphOfGroups::new();
        let s = g.add_surface("s", SurfaceData::orientable(1, 1));
        let u = g.add_cyclic("u");
        g.add_edge("e", s, u, Attachment::surface(1, 4), cyc(5));
        assert_eq!(fold(&g, 0, Side::Source, 2), Err(MoveError::SurfaceEnd { edge: 0, side: Side::Source }));
    }

    #[test]
    fn reduce_chain_to_point() {
        let mut g = GraphOfGroups::new();
        let a = g.add_cyclic("a");
        let b = g.add_cyclic("b");
        let c = g.add_cyclic("c");
        g.add_edge("e", a, b, cyc(1), cyc(2));
        g.add_edge("f", b, c, cyc(1), cyc(3));
        let r = reduce(&g).unwrap();
        assert!(r.fully_reduced());
        assert_eq!(r.collapses, 2);
        assert_eq!((r.graph.vertex_count(), r.graph.edge_count()), (1, 0));
    }

    #[test]
    fn reduce_fixes_reduced_graphs() {
        let g = bs(2, 3);
        let r = reduce(&g).unwrap();
        assert_eq!(r.graph, g);
        assert_eq!(r.collapses, 0);
    }

    #[test]
    fn maximal_collapse_sequences_can_differ() {
        // w has two label-1 ends; merging it into u or into x leaves the
        // third neighbour y attached with exponent 2*5 or 3*5. Both results
        // are reduced and related by a slide, not by an isomorphism.
        let mut g = GraphOfGroups::new();
        let u = g.add_cyclic("u");
        let w = g.add_cyclic("w");
        let x = g.add_cyclic("x");
        let y = g.add_cyclic("y");
        g.add_edge("e0", u, w, cyc(2), cyc(1));
        g.add_edge("e1", w, x, cyc(1), cyc(3));
        g.add_edge("e2", w, y, cyc(5), cyc(7));
        let into_u = collapse(&g, CollapseSite { edge: 0, collapsed_end: Side::Target }).unwrap();
        let into_x = collapse(&g, CollapseSite { edge: 1, collapsed_end: Side::Source }).unwrap();
        assert!(is_reduced(&into_u).reduced && is_reduced(&into_x).reduced);
        assert!(!equivalent(&into_u, &into_x));
    }

    #[test]
    fn one_edge_splittings() {
        let mut g = GraphOfGroups::new();
        let a = g.add_cyclic("a");
        let b = g.add_cyclic("b");
        g.add_edge("e", a, b, cyc(2), cyc(3));
        g.add_edge("l", b, b, cyc(2), cyc(3));
        assert_eq!(one_edge_splitting(&g, 0).unwrap().parts, vec![vec![0], vec![1]]);
        let hnn = one_edge_splitting(&g, 1).unwrap();
        assert!(hnn.is_hnn());
        assert_eq!(hnn.parts, vec![vec![0, 1]]);
    }

    #[test]
    fn unfolded_certificate() {
        assert_eq!(certify_unfolded(&bs(2, 3)), Unfoldedness::Certified);
        assert_eq!(
            certify_unfolded(&bs(1, 3)),
            Unfoldedness::Inconclusive(vec![EdgeEnd::new(0, Side::Source)])
        );
    }
}
