//! Combinatorial model of graphs of groups whose edge groups are infinite
//! cyclic and whose vertex groups are either infinite cyclic or the
//! fundamental group of a compact surface with boundary.
//!
//! A cyclic vertex `v` carries an implicit generator `a_v`. A surface vertex
//! carries a [`SurfaceData`] whose boundary slots `1..=m` correspond to the
//! boundary classes `p_1, ..., p_m` of the standard presentation. Each edge
//! has an implicit generator, and each end of an edge records the exponent of
//! its image in the vertex group at that end.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub type VertexId = usize;
pub type EdgeId = usize;
/// Boundary slot index on a surface vertex, counted from 1.
pub type SlotId = usize;

/// One of the two ends of an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Source,
    Target,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::Source, Side::Target];

    pub fn opposite(self) -> Side {
        match self {
            Side::Source => Side::Target,
            Side::Target => Side::Source,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Source => f.write_str("source"),
            Side::Target => f.write_str("target"),
        }
    }
}

/// A specific end of a specific edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct EdgeEnd {
    pub edge: EdgeId,
    pub side: Side,
}

impl EdgeEnd {
    pub fn new(edge: EdgeId, side: Side) -> Self {
        EdgeEnd { edge, side }
    }
}

/// Compact surface with at least one boundary component.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SurfaceData {
    pub orientable: bool,
    pub genus: u32,
    pub boundary: usize,
}

impl SurfaceData {
    pub fn orientable(genus: u32, boundary: usize) -> Self {
        SurfaceData { orientable: true, genus, boundary }
    }

    pub fn nonorientable(genus: u32, boundary: usize) -> Self {
        SurfaceData { orientable: false, genus, boundary }
    }

    /// The pair of pants: a sphere with three boundary components.
    pub fn pants() -> Self {
        Self::orientable(0, 3)
    }

    pub fn euler_characteristic(&self) -> i64 {
        let g = i64::from(self.genus);
        let m = self.boundary as i64;
        if self.orientable {
            2 - 2 * g - m
        } else {
            2 - g - m
        }
    }

    pub fn slots(&self) -> impl Iterator<Item = SlotId> {
        1..=self.boundary
    }

    pub fn has_slot(&self, slot: SlotId) -> bool {
        (1..=self.boundary).contains(&slot)
    }

    /// Number of handle generators in the standard presentation.
    pub fn handle_generators(&self) -> usize {
        if self.orientable {
            2 * self.genus as usize
        } else {
            self.genus as usize
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum VertexKind {
    Cyclic,
    Surface(SurfaceData),
}

impl VertexKind {
    pub fn is_surface(&self) -> bool {
        matches!(self, VertexKind::Surface(_))
    }

    pub fn surface(&self) -> Option<&SurfaceData> {
        match self {
            VertexKind::Surface(s) => Some(s),
            VertexKind::Cyclic => None,
        }
    }
}

/// Image of the edge generator in the vertex group at one end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Attachment {
    /// Edge generator maps to `a_v^exponent`.
    Cyclic { exponent: i64 },
    /// Edge generator maps to `p_slot^exponent`.
    Surface { slot: SlotId, exponent: i64 },
}

impl Attachment {
    pub fn cyclic(exponent: i64) -> Self {
        Attachment::Cyclic { exponent }
    }

    pub fn surface(slot: SlotId, exponent: i64) -> Self {
        Attachment::Surface { slot, exponent }
    }

    pub fn exponent(&self) -> i64 {
        match *self {
            Attachment::Cyclic { exponent } | Attachment::Surface { exponent, .. } => exponent,
        }
    }

    pub fn with_exponent(self, exponent: i64) -> Self {
        match self {
            Attachment::Cyclic { .. } => Attachment::Cyclic { exponent },
            Attachment::Surface { slot, .. } => Attachment::Surface { slot, exponent },
        }
    }

    pub fn slot(&self) -> Option<SlotId> {
        match *self {
            Attachment::Surface { slot, .. } => Some(slot),
            Attachment::Cyclic { .. } => None,
        }
    }

    /// Edge label at this end: the largest `m` such that the image is an
    /// `m`-th power, which is the absolute exponent.
    pub fn label(&self) -> u64 {
        self.exponent().unsigned_abs()
    }

    pub fn negated(self) -> Self {
        self.with_exponent(-self.exponent())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Vertex {
    pub id: VertexId,
    pub name: String,
    pub kind: VertexKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub id: EdgeId,
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
    pub source_end: Attachment,
    pub target_end: Attachment,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.source == self.target
    }

    pub fn vertex(&self, side: Side) -> VertexId {
        match side {
            Side::Source => self.source,
            Side::Target => self.target,
        }
    }

    pub fn end(&self, side: Side) -> Attachment {
        match side {
            Side::Source => self.source_end,
            Side::Target => self.target_end,
        }
    }

    pub fn end_mut(&mut self, side: Side) -> &mut Attachment {
        match side {
            Side::Source => &mut self.source_end,
            Side::Target => &mut self.target_end,
        }
    }

    pub fn set_vertex(&mut self, side: Side, v: VertexId) {
        match side {
            Side::Source => self.source = v,
            Side::Target => self.target = v,
        }
    }

    pub fn label(&self, side: Side) -> u64 {
        self.end(side).label()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
}

/// A graph of groups with cyclic edge groups and cyclic or surface vertex
/// groups. Ids are dense and equal to positions in the vertex and edge lists.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct GraphOfGroups {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
}

impl GraphOfGroups {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, name: impl Into<String>, kind: VertexKind) -> VertexId {
        let id = self.vertices.len();
        self.vertices.push(Vertex { id, name: name.into(), kind });
        id
    }

    pub fn add_cyclic(&mut self, name: impl Into<String>) -> VertexId {
        self.add_vertex(name, VertexKind::Cyclic)
    }

    pub fn add_surface(&mut self, name: impl Into<String>, surface: SurfaceData) -> VertexId {
        self.add_vertex(name, VertexKind::Surface(surface))
    }

    /// Adds an edge. Endpoints are not checked here; see [`crate::validate`].
    pub fn add_edge(
        &mut self,
        name: impl Into<String>,
        source: VertexId,
        target: VertexId,
        source_end: Attachment,
        target_end: Attachment,
    ) -> EdgeId {
        let id = self.edges.len();
        self.edges.push(Edge { id, name: name.into(), source, target, source_end, target_end });
        id
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex(&self, id: VertexId) -> Option<&Vertex> {
        self.vertices.get(id)
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.edges.get(id)
    }

    pub(crate) fn edge_mut(&mut self, id: EdgeId) -> Option<&mut Edge> {
        self.edges.get_mut(id)
    }

    pub fn kind(&self, id: VertexId) -> Option<&VertexKind> {
        self.vertices.get(id).map(|v| &v.kind)
    }

    pub fn is_surface(&self, id: VertexId) -> bool {
        self.kind(id).is_some_and(VertexKind::is_surface)
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertices.iter().position(|v| v.name == name)
    }

    pub fn edge_by_name(&self, name: &str) -> Option<EdgeId> {
        self.edges.iter().position(|e| e.name == name)
    }

    /// Label `m_e^±` at the given end.
    pub fn label(&self, edge: EdgeId, side: Side) -> Result<u64, GraphError> {
        self.edge(edge).map(|e| e.label(side)).ok_or(GraphError::UnknownEdge(edge))
    }

    pub fn attachment(&self, end: EdgeEnd) -> Option<Attachment> {
        self.edge(end.edge).map(|e| e.end(end.side))
    }

    /// Every edge end incident to `v`, in ascending (edge, side) order.
    /// A loop at `v` contributes both of its ends.
    pub fn ends_at(&self, v: VertexId) -> Vec<EdgeEnd> {
        let mut out = Vec::new();
        for e in &self.edges {
            for side in Side::BOTH {
                if e.vertex(side) == v {
                    out.push(EdgeEnd::new(e.id, side));
                }
            }
        }
        out
    }

    pub fn all_ends(&self) -> impl Iterator<Item = EdgeEnd> + '_ {
        self.edges
            .iter()
            .flat_map(|e| Side::BOTH.into_iter().map(move |s| EdgeEnd::new(e.id, s)))
    }

    pub fn surface_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().filter(|v| v.kind.is_surface()).map(|v| v.id)
    }

    pub fn is_gbs(&self) -> bool {
        self.vertices.iter().all(|v| !v.kind.is_surface())
    }

    /// Euler characteristic of the graph of groups: the sum of `χ(S)` over
    /// surface vertices. Cyclic vertex and edge groups contribute zero.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices
            .iter()
            .filter_map(|v| v.kind.surface())
            .map(SurfaceData::euler_characteristic)
            .sum()
    }

    /// Adjacency over edges whose endpoints exist, as `(edge, neighbour)`
    /// pairs per vertex. Loops appear once.
    pub(crate) fn adjacency(&self) -> Vec<Vec<(EdgeId, VertexId)>> {
        let n = self.vertices.len();
        let mut adj = vec![Vec::new(); n];
        for e in &self.edges {
            if e.source >= n || e.target >= n {
                continue;
            }
            adj[e.source].push((e.id, e.target));
            if !e.is_loop() {
                adj[e.target].push((e.id, e.source));
            }
        }
        adj
    }

    /// Connected components of the subgraph induced by vertices for which
    /// `keep` holds, using only edges accepted by `keep_edge`. Components are
    /// sorted by lowest vertex id and each is sorted ascending.
    pub(crate) fn components_where(
        &self,
        keep: impl Fn(VertexId) -> bool,
        keep_edge: impl Fn(&Edge) -> bool,
    ) -> Vec<Vec<VertexId>> {
        let n = self.vertices.len();
        let adj = self.adjacency();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || !keep(start) {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &(e, w) in &adj[v] {
                    if !seen[w] && keep(w) && keep_edge(&self.edges[e]) {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        !self.vertices.is_empty() && self.components_where(|_| true, |_| true).len() == 1
    }

    /// Subgraph spanned by `vertices` (sorted, distinct) with the given edges,
    /// renumbered densely in ascending order. Returns the subgraph with maps
    /// from new ids to old ids.
    pub(crate) fn subgraph(
        &self,
        vertices: &[VertexId],
        edges: &[EdgeId],
    ) -> (GraphOfGroups, Vec<VertexId>, Vec<EdgeId>) {
        let index: BTreeMap<VertexId, VertexId> =
            vertices.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        let mut g = GraphOfGroups::new();
        for &old in vertices {
            let v = &self.vertices[old];
            g.add_vertex(v.name.clone(), v.kind.clone());
        }
        for &old in edges {
            let e = &self.edges[old];
            g.add_edge(e.name.clone(), index[&e.source], index[&e.target], e.source_end, e.target_end);
        }
        (g, vertices.to_vec(), edges.to_vec())
    }

    /// Removes a vertex and an edge and renumbers densely, preserving order.
    /// Callers must have detached every other end from `vertex`.
    pub(crate) fn remove_vertex_and_edge(&mut self, vertex: VertexId, edge: EdgeId) {
        self.edges.remove(edge);
        self.vertices.remove(vertex);
        for (i, v) in self.vertices.iter_mut().enumerate() {
            v.id = i;
        }
        for (i, e) in self.edges.iter_mut().enumerate() {
            e.id = i;
            if e.source > vertex {
                e.source -= 1;
            }
            if e.target > vertex {
                e.target -= 1;
            }
        }
    }

    /// A vertex name not used in this graph, derived from `base`.
    pub fn fresh_vertex_name(&self, base: &str) -> String {
        fresh_name(base, |n| self.vertex_by_name(n).is_some())
    }

    pub fn fresh_edge_name(&self, base: &str) -> String {
        fresh_name(base, |n| self.edge_by_name(n).is_some())
    }
}

fn fresh_name(base: &str, taken: impl Fn(&str) -> bool) -> String {
    if !taken(base) {
        return base.to_string();
    }
    (1..)
        .map(|i| format!("{base}_{i}"))
        .find(|n| !taken(n))
        .expect("unbounded name supply")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surface_euler_characteristics() {
        assert_eq!(SurfaceData::pants().euler_characteristic(), -1);
        assert_eq!(SurfaceData::orientable(1, 1).euler_characteristic(), -1);
        assert_eq!(SurfaceData::nonorientable(1, 1).euler_characteristic(), 0);
        assert_eq!(SurfaceData::orientable(0, 1).euler_characteristic(), 1);
    }

    #[test]
    fn labels_absorb_sign() {
        let mut g = GraphOfGroups::new();
        let u = g.add_cyclic("u");
        let s = g.add_surface("s", SurfaceData::orientable(1, 1));
        let e = g.add_edge("e", u, s, Attachment::cyclic(-6), Attachment::surface(1, 3));
        let f = g.add_edge("f", u, u, Attachment::cyclic(1), Attachment::cyclic(-1));
        assert_eq!(g.label(e, Side::Source), Ok(6));
        assert_eq!(g.label(e, Side::Target), Ok(3));
        assert_eq!(g.label(f, Side::Source), Ok(1));
        assert_eq!(g.label(7, Side::Source), Err(GraphError::UnknownEdge(7)));
    }

    #[test]
    fn euler_characteristic_sums_surfaces() {
        let mut g = GraphOfGroups::new();
        let a = g.add_cyclic("a");
        g.add_edge("l", a, a, Attachment::cyclic(2), Attachment::cyclic(3));
        assert_eq!(g.euler_characteristic(), 0);
        let p = g.add_surface("p", SurfaceData::pants());
        assert_eq!(g.euler_characteristic(), -1);
        let q = g.add_surface("q", SurfaceData::pants());
        g.add_edge("pq", p, q, Attachment::surface(1, 2), Attachment::surface(1, 2));
        assert_eq!(g.euler_characteristic(), -2);
    }

    #[test]
    fn ends_at_lists_loops_twice() {
        let mut g = GraphOfGroups::new();
        let a = g.add_cyclic("a");
        let b = g.add_cyclic("b");
        g.add_edge("l", a, a, Attachment::cyclic(2), Attachment::cyclic(3));
        g.add_edge("e", b, a, Attachment::cyclic(1), Attachment::cyclic(5));
        assert_eq!(
            g.ends_at(a),
            vec![
                EdgeEnd::new(0, Side::Source),
                EdgeEnd::new(0, Side::Target),
                EdgeEnd::new(1, Side::Target)
            ]
        );
    }

    #[test]
    fn fresh_names_avoid_collisions() {
        let mut g = GraphOfGroups::new();
        g.add_cyclic("w");
        g.add_cyclic("w_1");
        assert_eq!(g.fresh_vertex_name("w"), "w_2");
        assert_eq!(g.fresh_vertex_name("x"), "x");
    }
}
