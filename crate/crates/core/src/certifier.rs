//! Mechanical check of the hypotheses under which a QBS graph is the cyclic
//! JSJ decomposition of its fundamental group, and of the preconditions of
//! the universality argument for a set of surface vertices.
//!
//! A `Certified` verdict means every hypothesis holds; the conclusion itself
//! is not re-derived. `Rejected` means some hypothesis fails, which says
//! nothing about whether the graph is a JSJ decomposition by other means.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::analysis::{classify_tree, gbs_components, is_one_ended, OneEnded, TreeShape};
use crate::canonical::fingerprint;
use crate::model::{GraphOfGroups, Side, VertexId};
use crate::moves::{is_reduced, CollapseSite};
use crate::validate::validate;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Certified,
    Rejected,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Certified => "Certified",
            Verdict::Rejected => "Rejected",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// Could not be decided by the available criteria; not a pass.
    Inconclusive,
    /// Not evaluated because the graph is not a valid QBS graph.
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
            Status::Skipped => "skipped",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub name: &'static str,
    pub status: Status,
    pub witnesses: Vec<String>,
}

impl Condition {
    fn from_witnesses(name: &'static str, witnesses: Vec<String>) -> Self {
        let status = if witnesses.is_empty() { Status::Pass } else { Status::Fail };
        Condition { name, status, witnesses }
    }

    fn skipped(name: &'static str) -> Self {
        Condition { name, status: Status::Skipped, witnesses: Vec::new() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    /// Vertex names in the parent graph.
    pub vertices: Vec<String>,
    pub reduced: bool,
    pub shape: Option<TreeShape>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub verdict: Verdict,
    pub fingerprint: String,
    pub conditions: Vec<Condition>,
    pub components: Vec<ComponentReport>,
    pub note: &'static str,
}

impl Certificate {
    pub fn condition(&self, name: &str) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.name == name)
    }

    pub fn failed(&self) -> Vec<&'static str> {
        self.conditions.iter().filter(|c| c.status != Status::Pass).map(|c| c.name).collect()
    }
}

pub const QBS_VALID: &str = "qbs_valid";
pub const REDUCED: &str = "reduced";
pub const LABELS_EXCEED_ONE: &str = "labels_exceed_one";
pub const GBS_COMPONENTS: &str = "gbs_components_not_point_or_line";
pub const ONE_ENDED: &str = "one_ended";

const CERTIFIED_NOTE: &str = "every hypothesis holds, so the graph is a cyclic JSJ decomposition of its \
     fundamental group; the conclusion follows from the recognition criterion and is not re-derived here";
const REJECTED_NOTE: &str = "hypotheses of the recognition criterion not met; this does not show the graph \
     fails to be a JSJ decomposition";

fn site_witness(graph: &GraphOfGroups, s: &CollapseSite) -> String {
    format!("edge {} collapsible at {} end", graph.edges()[s.edge].name, s.collapsed_end)
}

fn label_one_witnesses(graph: &GraphOfGroups, only_between: Option<&BTreeSet<VertexId>>) -> Vec<String> {
    let mut out = Vec::new();
    for e in graph.edges() {
        if let Some(vs) = only_between {
            if !vs.contains(&e.source) || !vs.contains(&e.target) {
                continue;
            }
        }
        for side in Side::BOTH {
            if e.label(side) <= 1 {
                out.push(format!("edge {} {} label {}", e.name, side, e.label(side)));
            }
        }
    }
    out
}

/// Evaluates, in order: validity, reducedness, labels > 1, the tree shape of
/// every GBS component, and one-endedness.
pub fn certify_jsj(graph: &GraphOfGroups) -> Certificate {
    let fingerprint = fingerprint(graph);
    let report = validate(graph);
    let mut conditions =
        vec![Condition::from_witnesses(QBS_VALID, report.violations.iter().map(ToString::to_string).collect())];
    if !report.is_valid() {
        conditions.extend([REDUCED, LABELS_EXCEED_ONE, GBS_COMPONENTS, ONE_ENDED].map(Condition::skipped));
        return Certificate {
            verdict: Verdict::Rejected,
            fingerprint,
            conditions,
            components: Vec::new(),
            note: REJECTED_NOTE,
        };
    }

    let r = is_reduced(graph);
    conditions.push(Condition::from_witnesses(
        REDUCED,
        r.witnesses.iter().map(|s| site_witness(graph, s)).collect(),
    ));
    conditions.push(Condition::from_witnesses(LABELS_EXCEED_ONE, label_one_witnesses(graph, None)));

    let mut components = Vec::new();
    let mut shape_witnesses = Vec::new();
    for c in gbs_components(graph) {
        let vertices: Vec<String> = c.vertex_map.iter().map(|&v| graph.vertices()[v].name.clone()).collect();
        let label = vertices.join(",");
        let reduced = is_reduced(&c.graph).reduced;
        let shape = classify_tree(&c.graph).ok();
        match shape {
            None => shape_witnesses.push(format!("component {{{label}}} not reduced")),
            Some(s @ (TreeShape::Point | TreeShape::Line)) => {
                shape_witnesses.push(format!("component {{{label}}} tree is a {s}"))
            }
            Some(TreeShape::Branching) => {}
        }
        components.push(ComponentReport { vertices, reduced, shape });
    }
    conditions.push(Condition::from_witnesses(GBS_COMPONENTS, shape_witnesses));

    conditions.push(match is_one_ended(graph) {
        Ok(OneEnded::Certified) => Condition::from_witnesses(ONE_ENDED, Vec::new()),
        Ok(OneEnded::No { reason }) => Condition { name: ONE_ENDED, status: Status::Fail, witnesses: vec![reason] },
        Ok(OneEnded::Inconclusive { blocked }) => Condition {
            name: ONE_ENDED,
            status: Status::Inconclusive,
            witnesses: blocked.iter().map(|s| format!("reduction blocked: {}", site_witness(graph, s))).collect(),
        },
        Err(e) => Condition { name: ONE_ENDED, status: Status::Inconclusive, witnesses: vec![e.to_string()] },
    });

    let certified = conditions.iter().all(|c| c.status == Status::Pass);
    Certificate {
        verdict: if certified { Verdict::Certified } else { Verdict::Rejected },
        fingerprint,
        conditions,
        components,
        note: if certified { CERTIFIED_NOTE } else { REJECTED_NOTE },
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifierError {
    #[error("vertex {0} is not a surface vertex")]
    VNotSurface(VertexId),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplementReport {
    pub vertices: Vec<String>,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UniversalityReport {
    pub conditions: Vec<Condition>,
    /// One certificate summary per component of the complement of `V`.
    pub complements: Vec<ComplementReport>,
}

impl UniversalityReport {
    pub fn holds(&self) -> bool {
        self.conditions.iter().all(|c| c.status == Status::Pass)
    }
}

pub const V_EDGE_LABELS: &str = "v_edges_labels_exceed_one";
pub const NO_EDGE_TO_OUTSIDE_SURFACE: &str = "no_edge_to_outside_surface";
pub const COMPLEMENTS_CERTIFIED: &str = "complement_components_certified";

/// Preconditions for a set `V` of surface vertices: labels above 1 on
/// `V`–`V` edges, no edge from `V` to a surface vertex outside `V`, and each
/// component of the complement of `V` certified on its own. The last check
/// is sufficient only, so its failure is reported as inconclusive.
pub fn universality_preconditions(
    graph: &GraphOfGroups,
    v_set: &BTreeSet<VertexId>,
) -> Result<UniversalityReport, CertifierError> {
    if let Some(&v) = v_set.iter().find(|&&v| !graph.is_surface(v)) {
        return Err(CertifierError::VNotSurface(v));
    }
    let c1 = Condition::from_witnesses(V_EDGE_LABELS, label_one_witnesses(graph, Some(v_set)));

    let mut outside = Vec::new();
    for e in graph.edges() {
        for side in Side::BOTH {
            let (here, there) = (e.vertex(side), e.vertex(side.opposite()));
            if v_set.contains(&here) && !v_set.contains(&there) && graph.is_surface(there) {
                outside.push(format!("edge {} reaches surface vertex {}", e.name, graph.vertices()[there].name));
            }
        }
    }
    outside.dedup();
    let c2 = Condition::from_witnesses(NO_EDGE_TO_OUTSIDE_SURFACE, outside);

    let mut complements = Vec::new();
    let mut uncertified = Vec::new();
    for vertices in graph.components_where(|v| !v_set.contains(&v), |_| true) {
        let edges: Vec<_> = graph
            .edges()
            .iter()
            .filter(|e| vertices.binary_search(&e.source).is_ok() && vertices.binary_search(&e.target).is_ok())
            .map(|e| e.id)
            .collect();
        let (sub, vmap, _) = graph.subgraph(&vertices, &edges);
        let names: Vec<String> = vmap.iter().map(|&v| graph.vertices()[v].name.clone()).collect();
        let cert = certify_jsj(&sub);
        if cert.verdict != Verdict::Certified {
            uncertified.push(format!("component {{{}}} fails {}", names.join(","), cert.failed().join(",")));
        }
        complements.push(ComplementReport { vertices: names, verdict: cert.verdict });
    }
    let c3 = if uncertified.is_empty() {
        Condition::from_witnesses(COMPLEMENTS_CERTIFIED, Vec::new())
    } else {
        Condition { name: COMPLEMENTS_CERTIFIED, status: Status::Inconclusive, witnesses: uncertified }
    };
    Ok(UniversalityReport { conditions: vec![c1, c2, c3], complements })
}
