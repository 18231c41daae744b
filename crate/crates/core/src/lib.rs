//! Graphs of groups with cyclic edge groups and cyclic or surface vertex
//! groups: the collapse, expansion and folding moves, presentations and
//! first homology, Bass-Serre tree shapes, four-sheeted surface covers, and a
//! certifier for the hypotheses under which such a graph is the cyclic JSJ
//! decomposition of its fundamental group.

pub mod analysis;
pub mod canonical;
pub mod certifier;
pub mod corpus;
pub mod covers;
pub mod format;
pub mod model;
pub mod moves;
pub mod presentation;
pub mod snf;
pub mod validate;

pub use model::{Attachment, Edge, EdgeEnd, EdgeId, GraphOfGroups, Side, SlotId, SurfaceData, Vertex, VertexId, VertexKind};
