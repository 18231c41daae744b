//! GBS components, the shape of their Bass-Serre trees, finite balls in those
//! trees, and the one-endedness check.
//!
//! In the Bass-Serre tree of a GBS graph, a lift of vertex `v` is adjacent,
//! along each edge end at `v`, to as many lifts of the opposite vertex as the
//! index of the edge group in `G_v`, which is the label of that end. A lift of
//! `v` therefore has degree equal to the sum of the labels of the ends at `v`.

use std::collections::VecDeque;
use std::fmt::{self, Write as _};

use serde::Serialize;
use thiserror::Error;

use crate::model::{EdgeId, GraphOfGroups, Side, VertexId};
use crate::moves::{is_reduced, reduce, CollapseSite, MoveError};

pub const DEFAULT_BALL_BUDGET: usize = 100_000;

/// A maximal connected subgraph of cyclic vertices, with maps from its ids
/// back to the parent graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GbsComponent {
    pub graph: GraphOfGroups,
    pub vertex_map: Vec<VertexId>,
    pub edge_map: Vec<EdgeId>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TreeShape {
    Point,
    Line,
    Branching,
}

impl fmt::Display for TreeShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TreeShape::Point => "Point",
            TreeShape::Line => "Line",
            TreeShape::Branching => "Branching",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("graph is not reduced ({} collapse sites)", .0.len())]
    NotReduced(Vec<CollapseSite>),
    #[error("vertex {0} is a surface vertex; only cyclic vertices have finite tree degree")]
    NotGbs(VertexId),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("ball exceeds the node budget of {0}")]
    BudgetExceeded(usize),
    #[error(transparent)]
    Move(#[from] MoveError),
}

/// Components of the subgraph left after deleting surface vertices and every
/// edge touching one, ordered by lowest contained vertex id.
pub fn gbs_components(graph: &GraphOfGroups) -> Vec<GbsComponent> {
    let cyclic = |v: VertexId| !graph.is_surface(v);
    graph
        .components_where(cyclic, |_| true)
        .into_iter()
        .map(|vertices| {
            let edges: Vec<EdgeId> = graph
                .edges()
                .iter()
                .filter(|e| vertices.binary_search(&e.source).is_ok() && vertices.binary_search(&e.target).is_ok())
                .map(|e| e.id)
                .collect();
            let (g, vertex_map, edge_map) = graph.subgraph(&vertices, &edges);
            GbsComponent { graph: g, vertex_map, edge_map }
        })
        .collect()
}

/// Sum of labels of the ends at `v`: the degree of its lifts in the tree.
pub fn tree_degree(graph: &GraphOfGroups, v: VertexId) -> u64 {
    graph.ends_at(v).iter().filter_map(|end| graph.attachment(*end)).map(|a| a.label()).sum()
}

fn require_gbs(graph: &GraphOfGroups) -> Result<(), AnalysisError> {
    match graph.surface_vertices().next() {
        Some(v) => Err(AnalysisError::NotGbs(v)),
        None => Ok(()),
    }
}

/// Point, line or branching tree for a reduced GBS graph.
pub fn classify_tree(graph: &GraphOfGroups) -> Result<TreeShape, AnalysisError> {
    require_gbs(graph)?;
    let r = is_reduced(graph);
    if !r.reduced {
        return Err(AnalysisError::NotReduced(r.witnesses));
    }
    if graph.vertex_count() == 1 && graph.edge_count() == 0 {
        return Ok(TreeShape::Point);
    }
    if graph.vertices().iter().all(|v| tree_degree(graph, v.id) == 2) {
        Ok(TreeShape::Line)
    } else {
        Ok(TreeShape::Branching)
    }
}

/// Whether the graph reduces to a single cyclic vertex, so that `G ≅ Z`.
pub fn is_trivial_z(graph: &GraphOfGroups) -> Result<bool, MoveError> {
    let r = reduce(graph)?;
    Ok(r.fully_reduced() && is_single_cyclic_vertex(&r.graph))
}

fn is_single_cyclic_vertex(g: &GraphOfGroups) -> bool {
    g.vertex_count() == 1 && g.edge_count() == 0 && !g.is_surface(0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum OneEnded {
    /// The graph reduces fully and its group is not `Z`.
    Certified,
    No { reason: String },
    /// Reduction stopped at collapses into surface vertices.
    Inconclusive { blocked: Vec<CollapseSite> },
}

pub fn is_one_ended(graph: &GraphOfGroups) -> Result<OneEnded, MoveError> {
    let r = reduce(graph)?;
    if !r.fully_reduced() {
        return Ok(OneEnded::Inconclusive { blocked: r.blocked });
    }
    if is_single_cyclic_vertex(&r.graph) {
        return Ok(OneEnded::No { reason: "fundamental group is infinite cyclic".into() });
    }
    Ok(OneEnded::Certified)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeNode {
    /// Graph vertex this node lifts.
    pub orbit: VertexId,
    pub depth: usize,
    pub parent: Option<usize>,
    /// Edge end at the parent's orbit used to reach this node.
    pub via: Option<(EdgeId, Side)>,
    pub children: Vec<usize>,
}

/// The radius-`r` ball around a lift of the base vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeBall {
    pub radius: usize,
    pub nodes: Vec<TreeNode>,
}

impl TreeBall {
    pub fn degree(&self, node: usize) -> usize {
        let n = &self.nodes[node];
        n.children.len() + usize::from(n.parent.is_some())
    }

    pub fn max_degree(&self) -> usize {
        (0..self.nodes.len()).map(|i| self.degree(i)).max().unwrap_or(0)
    }

    pub fn is_path(&self) -> bool {
        self.max_degree() <= 2
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph ball {\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let _ = writeln!(s, "  n{i} [label=\"v{}@d{}\"];", n.orbit, n.depth);
        }
        for (i, n) in self.nodes.iter().enumerate() {
            if let Some(p) = n.parent {
                let _ = writeln!(s, "  n{p} -- n{i};");
            }
        }
        s.push_str("}\n");
        s
    }
}

/// Breadth-first expansion of the Bass-Serre tree around `base`. A node
/// sprouts, for each edge end at its orbit, `label` children lifting the
/// opposite vertex, except that the end it was entered through sprouts
/// `label - 1`. Children are ordered by (edge, side), then copy index.
pub fn ball(graph: &GraphOfGroups, base: VertexId, radius: usize, budget: usize) -> Result<TreeBall, AnalysisError> {
    require_gbs(graph)?;
    if base >= graph.vertex_count() {
        return Err(AnalysisError::UnknownVertex(base));
    }
    let ends: Vec<Vec<(EdgeId, Side, u64)>> = (0..graph.vertex_count())
        .map(|v| {
            graph
                .ends_at(v)
                .into_iter()
                .map(|end| (end.edge, end.side, graph.attachment(end).expect("exists").label()))
                .collect()
        })
        .collect();

    let mut nodes = vec![TreeNode { orbit: base, depth: 0, parent: None, via: None, children: Vec::new() }];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let (orbit, depth) = (nodes[i].orbit, nodes[i].depth);
        if depth == radius {
            continue;
        }
        // The end of the edge at this node's orbit through which it was entered.
        let entered = nodes[i].via.map(|(e, side)| (e, side.opposite()));
        for &(edge, side, label) in &ends[orbit] {
            let copies = if entered == Some((edge, side)) { label - 1 } else { label };
            let target = graph.edges()[edge].vertex(side.opposite());
            for _ in 0..copies {
                if nodes.len() >= budget {
                    return Err(AnalysisError::BudgetExceeded(budget));
                }
                let id = nodes.len();
                nodes.push(TreeNode {
                    orbit: target,
                    depth: depth + 1,
                    parent: Some(i),
                    via: Some((edge, side)),
                    children: Vec::new(),
                });
                nodes[i].children.push(id);
                queue.push_back(id);
            }
        }
    }
    Ok(TreeBall { radius, nodes })
}
