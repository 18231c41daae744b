//! Canonical forms of graphs of groups.
//!
//! Two graphs have equal canonical forms iff one is obtained from the other
//! by renumbering vertices and edges, reversing edges, inverting an edge
//! generator (negating both exponents of an edge), or inverting the
//! generator of a cyclic vertex (negating every exponent at that vertex).
//! Vertex and edge names are ignored. Surface slot numbers are kept as-is.
//!
//! The form is the lexicographic minimum of an encoding over a family of
//! breadth-first labelings. Every choice in the search is made among
//! candidates that are defined invariantly, so the explored family, and hence
//! its minimum, depends only on the equivalence class.

use std::fmt::Write as _;

use sha2::{Digest, Sha256};

use crate::model::{Attachment, GraphOfGroups, VertexId, VertexKind};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    pub vertices: Vec<CanonVertex>,
    pub edges: Vec<CanonEdge>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CanonVertex {
    Cyclic,
    Surface { orientable: bool, genus: u32, boundary: usize },
}

/// `(source position, target position, source end, target end)`.
pub type CanonEdge = (usize, usize, Attachment, Attachment);

impl CanonicalForm {
    /// Stable text rendering, used for fingerprints.
    pub fn encode(&self) -> String {
        let mut s = String::new();
        for v in &self.vertices {
            match v {
                CanonVertex::Cyclic => s.push_str("c;"),
                CanonVertex::Surface { orientable, genus, boundary } => {
                    let _ = write!(s, "s{}g{}m{};", u8::from(*orientable), genus, boundary);
                }
            }
        }
        s.push('|');
        for (a, b, x, y) in &self.edges {
            let _ = write!(s, "{a}-{b}:{}:{};", end_code(x), end_code(y));
        }
        s
    }

    /// Hex SHA-256 of [`CanonicalForm::encode`].
    pub fn fingerprint(&self) -> String {
        let digest = Sha256::digest(self.encode().as_bytes());
        digest.iter().fold(String::with_capacity(64), |mut acc, b| {
            let _ = write!(acc, "{b:02x}");
            acc
        })
    }
}

fn end_code(a: &Attachment) -> String {
    match a {
        Attachment::Cyclic { exponent } => format!("{exponent}"),
        Attachment::Surface { slot, exponent } => format!("p{slot}^{exponent}"),
    }
}

pub fn canonical_form(graph: &GraphOfGroups) -> CanonicalForm {
    Search::new(graph).run()
}

pub fn fingerprint(graph: &GraphOfGroups) -> String {
    canonical_form(graph).fingerprint()
}

/// Equality of canonical forms.
pub fn equivalent(a: &GraphOfGroups, b: &GraphOfGroups) -> bool {
    a.vertex_count() == b.vertex_count()
        && a.edge_count() == b.edge_count()
        && canonical_form(a) == canonical_form(b)
}

fn sign_of(x: i64) -> i64 {
    if x < 0 {
        -1
    } else {
        1
    }
}

fn canon_vertex(kind: &VertexKind) -> CanonVertex {
    match kind {
        VertexKind::Cyclic => CanonVertex::Cyclic,
        VertexKind::Surface(s) => {
            CanonVertex::Surface { orientable: s.orientable, genus: s.genus, boundary: s.boundary }
        }
    }
}

/// Sign-free description of one end.
type EndShape = (Option<usize>, u64);

struct Search<'g> {
    graph: &'g GraphOfGroups,
    /// Per vertex: `(edge, this side's attachment, neighbour, neighbour's attachment)`.
    incident: Vec<Vec<(usize, Attachment, VertexId, Attachment)>>,
    best: Option<CanonicalForm>,
}

#[derive(Clone)]
struct State {
    order: Vec<VertexId>,
    position: Vec<Option<usize>>,
    sign: Vec<i64>,
    head: usize,
}

impl<'g> Search<'g> {
    fn new(graph: &'g GraphOfGroups) -> Self {
        let n = graph.vertex_count();
        let mut incident = vec![Vec::new(); n];
        for e in graph.edges() {
            if e.source >= n || e.target >= n {
                continue;
            }
            incident[e.source].push((e.id, e.source_end, e.target, e.target_end));
            if !e.is_loop() {
                incident[e.target].push((e.id, e.target_end, e.source, e.source_end));
            }
        }
        Search { graph, incident, best: None }
    }

    fn run(mut self) -> CanonicalForm {
        let n = self.graph.vertex_count();
        let state = State { order: Vec::new(), position: vec![None; n], sign: vec![1; n], head: 0 };
        self.explore(state);
        self.best.unwrap_or(CanonicalForm { vertices: Vec::new(), edges: Vec::new() })
    }

    fn is_cyclic(&self, v: VertexId) -> bool {
        !self.graph.vertices()[v].kind.is_surface()
    }

    /// Relabeling-invariant description of a vertex, used to pick roots.
    fn vertex_invariant(&self, v: VertexId) -> (CanonVertex, Vec<EndShape>) {
        let mut ends: Vec<EndShape> = Vec::new();
        for e in self.graph.edges() {
            if e.source == v {
                ends.push((e.source_end.slot(), e.source_end.label()));
            }
            if e.target == v {
                ends.push((e.target_end.slot(), e.target_end.label()));
            }
        }
        ends.sort_unstable();
        (canon_vertex(&self.graph.vertices()[v].kind), ends)
    }

    fn place(state: &mut State, v: VertexId, sign: i64) {
        state.position[v] = Some(state.order.len());
        state.order.push(v);
        state.sign[v] = sign;
    }

    fn signed(&self, state: &State, v: VertexId, a: Attachment) -> Attachment {
        match a {
            Attachment::Cyclic { exponent } => Attachment::cyclic(exponent * state.sign[v]),
            s => s,
        }
    }

    fn explore(&mut self, mut state: State) {
        let n = self.graph.vertex_count();
        loop {
            if state.order.len() == n {
                self.emit(&state);
                return;
            }
            if state.head == state.order.len() {
                // Start a new component at a vertex of minimal invariant.
                let unplaced: Vec<VertexId> = (0..n).filter(|&v| state.position[v].is_none()).collect();
                let invariants: Vec<_> = unplaced.iter().map(|&v| self.vertex_invariant(v)).collect();
                let min = invariants.iter().min().cloned().expect("some vertex unplaced");
                for (&v, inv) in unplaced.iter().zip(&invariants) {
                    if *inv != min {
                        continue;
                    }
                    let signs: &[i64] = if self.is_cyclic(v) { &[1, -1] } else { &[1] };
                    for &s in signs {
                        let mut next = state.clone();
                        Self::place(&mut next, v, s);
                        self.explore(next);
                    }
                }
                return;
            }

            let v = state.order[state.head];
            let candidates = self.discovery_candidates(&state, v);
            if candidates.is_empty() {
                state.head += 1;
                continue;
            }
            let min_key = candidates.iter().map(|c| &c.1).min().cloned().expect("non-empty");
            for (y, key, signs) in &candidates {
                if *key != min_key {
                    continue;
                }
                for &s in signs {
                    let mut next = state.clone();
                    Self::place(&mut next, *y, s);
                    self.explore(next);
                }
            }
            return;
        }
    }

    /// Unplaced neighbours of `v` with their sorting key and admissible signs.
    fn discovery_candidates(
        &self,
        state: &State,
        v: VertexId,
    ) -> Vec<(VertexId, (CanonVertex, Vec<(EndShape, EndShape, i64)>), Vec<i64>)> {
        let mut by_neighbour: Vec<(VertexId, Vec<(Attachment, Attachment)>)> = Vec::new();
        for &(_, here, y, there) in &self.incident[v] {
            if state.position[y].is_some() {
                continue;
            }
            let here = self.signed(state, v, here);
            match by_neighbour.iter_mut().find(|(w, _)| *w == y) {
                Some((_, list)) => list.push((here, there)),
                None => by_neighbour.push((y, vec![(here, there)])),
            }
        }
        let mut out = Vec::new();
        for (y, edges) in by_neighbour {
            let cyclic = self.is_cyclic(y);
            let mut shapes: Vec<(EndShape, EndShape, i64)> = edges
                .iter()
                .map(|(a, b)| {
                    let rel = if cyclic { 0 } else { sign_of(a.exponent()) * sign_of(b.exponent()) };
                    ((a.slot(), a.label()), (b.slot(), b.label()), rel)
                })
                .collect();
            shapes.sort_unstable();
            let signs = if cyclic {
                // Make the relative sign of a minimal-shape edge positive; try
                // every minimal edge since they may disagree.
                let first = (shapes[0].0, shapes[0].1);
                let mut signs: Vec<i64> = edges
                    .iter()
                    .filter(|(a, b)| ((a.slot(), a.label()), (b.slot(), b.label())) == first)
                    .map(|(a, b)| sign_of(a.exponent()) * sign_of(b.exponent()))
                    .collect();
                signs.sort_unstable();
                signs.dedup();
                signs
            } else {
                vec![1]
            };
            let key = (canon_vertex(&self.graph.vertices()[y].kind), shapes);
            out.push((y, key, signs));
        }
        out
    }

    fn emit(&mut self, state: &State) {
        let vertices: Vec<CanonVertex> =
            state.order.iter().map(|&v| canon_vertex(&self.graph.vertices()[v].kind)).collect();
        let mut edges: Vec<CanonEdge> = self
            .graph
            .edges()
            .iter()
            .filter_map(|e| {
                let ps = state.position.get(e.source).copied().flatten()?;
                let pt = state.position.get(e.target).copied().flatten()?;
                let a = self.signed(state, e.source, e.source_end);
                let b = self.signed(state, e.target, e.target_end);
                [(ps, pt, a, b), (pt, ps, b, a), (ps, pt, a.negated(), b.negated()), (pt, ps, b.negated(), a.negated())]
                    .into_iter()
                    .min()
            })
            .collect();
        edges.sort_unstable();
        let form = CanonicalForm { vertices, edges };
        if self.best.as_ref().is_none_or(|b| form < *b) {
            self.best = Some(form);
        }
    }
}
