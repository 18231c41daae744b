//! Well-formedness of graphs with cyclic and surface vertex groups.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::model::{Attachment, EdgeEnd, EdgeId, GraphOfGroups, Side, SlotId, VertexId, VertexKind};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum Violation {
    EmptyGraph,
    Disconnected { components: usize },
    MissingVertex { edge: EdgeId, side: Side, vertex: VertexId },
    NonInjectiveBoundaryMap { edge: EdgeId, side: Side },
    SurfaceEndAtCyclicVertex { edge: EdgeId, side: Side, vertex: VertexId },
    CyclicEndAtSurfaceVertex { edge: EdgeId, side: Side, vertex: VertexId },
    UnknownSlot { edge: EdgeId, side: Side, vertex: VertexId, slot: SlotId },
    SharedSlot { vertex: VertexId, slot: SlotId, ends: Vec<EdgeEnd> },
    UnattachedSlot { vertex: VertexId, slot: SlotId },
    NoBoundary { vertex: VertexId },
    NonorientableGenusZero { vertex: VertexId },
    NonNegativeEuler { vertex: VertexId, chi: i64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            EmptyGraph => write!(f, "graph has no vertices"),
            Disconnected { components } => write!(f, "graph is disconnected ({components} components)"),
            MissingVertex { edge, side, vertex } => {
                write!(f, "edge {edge} {side} references missing vertex {vertex}")
            }
            NonInjectiveBoundaryMap { edge, side } => {
                write!(f, "non-injective boundary map: edge {edge} {side} has exponent 0")
            }
            SurfaceEndAtCyclicVertex { edge, side, vertex } => {
                write!(f, "edge {edge} {side} names a slot but vertex {vertex} is cyclic")
            }
            CyclicEndAtSurfaceVertex { edge, side, vertex } => {
                write!(f, "edge {edge} {side} has no slot but vertex {vertex} is a surface")
            }
            UnknownSlot { edge, side, vertex, slot } => {
                write!(f, "edge {edge} {side} uses slot {slot} which vertex {vertex} lacks")
            }
            SharedSlot { vertex, slot, ends } => {
                write!(f, "slot {slot} of vertex {vertex} is used by {} edge ends", ends.len())
            }
            UnattachedSlot { vertex, slot } => write!(f, "unattached slot {slot} on vertex {vertex}"),
            NoBoundary { vertex } => write!(f, "surface vertex {vertex} has no boundary"),
            NonorientableGenusZero { vertex } => {
                write!(f, "non-orientable surface vertex {vertex} has genus 0")
            }
            NonNegativeEuler { vertex, chi } => {
                write!(f, "surface vertex {vertex} has Euler characteristic {chi} >= 0")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Reports every violated well-formedness rule. An empty report means the
/// graph is a QBS graph: connected, injective boundary maps, and surface
/// boundary slots in bijection with the edge ends attached to them.
pub fn validate(graph: &GraphOfGroups) -> ValidationReport {
    let mut violations = Vec::new();
    let n = graph.vertex_count();
    if n == 0 {
        violations.push(Violation::EmptyGraph);
    }

    for v in graph.vertices() {
        if let VertexKind::Surface(s) = &v.kind {
            if s.boundary == 0 {
                violations.push(Violation::NoBoundary { vertex: v.id });
            }
            if !s.orientable && s.genus == 0 {
                violations.push(Violation::NonorientableGenusZero { vertex: v.id });
            }
            let chi = s.euler_characteristic();
            if chi >= 0 {
                violations.push(Violation::NonNegativeEuler { vertex: v.id, chi });
            }
        }
    }

    let mut slot_uses: BTreeMap<(VertexId, SlotId), Vec<EdgeEnd>> = BTreeMap::new();
    for e in graph.edges() {
        for side in Side::BOTH {
            let v = e.vertex(side);
            let att = e.end(side);
            if att.exponent() == 0 {
                violations.push(Violation::NonInjectiveBoundaryMap { edge: e.id, side });
            }
            let Some(kind) = graph.kind(v) else {
                violations.push(Violation::MissingVertex { edge: e.id, side, vertex: v });
                continue;
            };
            match (kind, att) {
                (VertexKind::Cyclic, Attachment::Surface { .. }) => {
                    violations.push(Violation::SurfaceEndAtCyclicVertex { edge: e.id, side, vertex: v })
                }
                (VertexKind::Surface(_), Attachment::Cyclic { .. }) => {
                    violations.push(Violation::CyclicEndAtSurfaceVertex { edge: e.id, side, vertex: v })
                }
                (VertexKind::Surface(s), Attachment::Surface { slot, .. }) => {
                    if s.has_slot(slot) {
                        slot_uses.entry((v, slot)).or_default().push(EdgeEnd::new(e.id, side));
                    } else {
                        violations.push(Violation::UnknownSlot { edge: e.id, side, vertex: v, slot });
                    }
                }
                (VertexKind::Cyclic, Attachment::Cyclic { .. }) => {}
            }
        }
    }

    for v in graph.vertices() {
        if let VertexKind::Surface(s) = &v.kind {
            for slot in s.slots() {
                match slot_uses.get(&(v.id, slot)) {
                    None => violations.push(Violation::UnattachedSlot { vertex: v.id, slot }),
                    Some(ends) if ends.len() > 1 => violations.push(Violation::SharedSlot {
                        vertex: v.id,
                        slot,
                        ends: ends.clone(),
                    }),
                    Some(_) => {}
                }
            }
        }
    }

    if n > 0 {
        let components = graph.components_where(|_| true, |_| true).len();
        if components > 1 {
            violations.push(Violation::Disconnected { components });
        }
    }

    violations.sort();
    ValidationReport { violations }
}
