//! Four-sheeted surface covers in which every boundary curve lifts to two
//! curves of degree 2, the induced cover `Δ̂` of a subgraph of surface
//! vertices joined by edges with both labels 2, and the surface obtained by
//! gluing the covers along the `f₀`, `f₁` lifts of each edge.
//!
//! Covers are built from an explicit monodromy: a transitive action of the
//! surface group on four sheets, given by one permutation per generator and
//! checked against the surface relator. Boundary curves of the cover over a
//! slot are the cycles of that slot's permutation.
//!
//! Which action is used depends on the surface:
//! - at least two boundary curves, even count: boundary classes go to
//!   elements of order 2 in `Z/2 × Z/2`, with the first handle generator (or
//!   the first two boundary classes, when there are no handles) covering the
//!   other factor;
//! - odd count, at least three: `p_1 .. p_{m-2} ↦ (1,0)`, `p_{m-1} ↦ (0,1)`,
//!   `p_m ↦ (1,1)`;
//! - one boundary curve: its class is a product of commutators or squares, so
//!   no abelian action works; the first permutation pair (in lexicographic
//!   order of `S_4`) for the first two handle generators that makes the
//!   boundary act as a double transposition is used.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::model::{Attachment, EdgeId, GraphOfGroups, SlotId, SurfaceData, VertexId, VertexKind};

/// Sheets are `0..4`; `perm[s]` is the image of sheet `s`.
pub type Perm = [u8; 4];

const IDENTITY: Perm = [0, 1, 2, 3];

fn compose(first: &Perm, then: &Perm) -> Perm {
    let mut out = [0; 4];
    for s in 0..4 {
        out[s] = then[first[s] as usize];
    }
    out
}

fn inverse(p: &Perm) -> Perm {
    let mut out = [0; 4];
    for s in 0..4 {
        out[p[s] as usize] = s as u8;
    }
    out
}

fn power(p: &Perm, e: i64) -> Perm {
    let base = if e < 0 { inverse(p) } else { *p };
    (0..e.unsigned_abs()).fold(IDENTITY, |acc, _| compose(&acc, &base))
}

/// Cycles of a permutation, each starting at its least sheet, ordered by
/// that sheet.
fn cycles(p: &Perm) -> Vec<Vec<u8>> {
    let mut seen = [false; 4];
    let mut out = Vec::new();
    for s in 0..4u8 {
        if seen[s as usize] {
            continue;
        }
        let mut cycle = vec![s];
        seen[s as usize] = true;
        let mut t = p[s as usize];
        while t != s {
            seen[t as usize] = true;
            cycle.push(t);
            t = p[t as usize];
        }
        out.push(cycle);
    }
    out
}

/// Translation by an element of `Z/2 × Z/2`, with sheets read as bit pairs.
fn klein(x: u8, y: u8) -> Perm {
    let e = x | (y << 1);
    [e, 1 ^ e, 2 ^ e, 3 ^ e]
}

fn all_perms() -> Vec<Perm> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4u8 {
        for b in 0..4u8 {
            for c in 0..4u8 {
                for d in 0..4u8 {
                    let p = [a, b, c, d];
                    let mut seen = [false; 4];
                    if p.iter().all(|&x| !std::mem::replace(&mut seen[x as usize], true)) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("surface with Euler characteristic {chi} and {boundary} boundary curves has no such cover")]
    DegenerateSurface { chi: i64, boundary: usize },
    #[error("edge {0} is not eligible: {1}")]
    NotEligible(EdgeId, String),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverConstruction {
    /// Even boundary count; a handle generator supplies the second factor.
    EvenBoundaryWithHandle,
    /// Even boundary count on a planar surface.
    EvenBoundaryPlanar,
    /// Odd boundary count, at least three.
    OddBoundary,
    /// A single boundary curve; non-abelian action on the first two handle
    /// generators.
    SingleBoundary,
}

/// Two covering slots of degree 2 over one base slot.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SlotLift {
    pub base_slot: SlotId,
    /// `(covering slot, degree)` for `δ₀` then `δ₁`.
    pub lifts: [(SlotId, u32); 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverDescriptor {
    pub base: SurfaceData,
    pub construction: CoverConstruction,
    /// One permutation per generator in presentation order: handle
    /// generators, then boundary classes.
    pub monodromy: Vec<Perm>,
    pub cover: SurfaceData,
    pub cover_chi: i64,
    pub cover_boundary_count: usize,
    pub boundary_map: Vec<SlotLift>,
}

impl CoverDescriptor {
    /// `(genus, orientable)` of the cover.
    pub fn cover_genus_orientable(&self) -> (u32, bool) {
        (self.cover.genus, self.cover.orientable)
    }
}

/// Evaluates the surface relator under a monodromy.
fn relator_image(surface: &SurfaceData, images: &[Perm]) -> Perm {
    let h = surface.handle_generators();
    let mut acc = IDENTITY;
    for k in 0..surface.boundary {
        acc = compose(&acc, &images[h + k]);
    }
    if surface.orientable {
        for j in 0..surface.genus as usize {
            let (a, b) = (images[2 * j], images[2 * j + 1]);
            for p in [a, b, inverse(&a), inverse(&b)] {
                acc = compose(&acc, &p);
            }
        }
    } else {
        for j in 0..surface.genus as usize {
            acc = compose(&acc, &power(&images[j], 2));
        }
    }
    acc
}

fn is_transitive(images: &[Perm]) -> bool {
    let mut seen = [false; 4];
    seen[0] = true;
    let mut queue = VecDeque::from([0u8]);
    while let Some(s) = queue.pop_front() {
        for p in images {
            for t in [p[s as usize], inverse(p)[s as usize]] {
                if !std::mem::replace(&mut seen[t as usize], true) {
                    queue.push_back(t);
                }
            }
        }
    }
    seen.iter().all(|&x| x)
}

fn is_double_transposition(p: &Perm) -> bool {
    let c = cycles(p);
    c.len() == 2 && c.iter().all(|x| x.len() == 2)
}

fn monodromy(surface: &SurfaceData) -> Option<(CoverConstruction, Vec<Perm>)> {
    let h = surface.handle_generators();
    let m = surface.boundary;
    let mut images = vec![IDENTITY; h + m];
    let construction = if m >= 2 && m.is_multiple_of(2) {
        if h >= 1 {
            images[0] = klein(1, 0);
            images[h..].fill(klein(0, 1));
            CoverConstruction::EvenBoundaryWithHandle
        } else {
            images[h..].fill(klein(0, 1));
            images[h] = klein(1, 0);
            images[h + 1] = klein(1, 0);
            CoverConstruction::EvenBoundaryPlanar
        }
    } else if m >= 3 {
        images[h..h + m - 2].fill(klein(1, 0));
        images[h + m - 2] = klein(0, 1);
        images[h + m - 1] = klein(1, 1);
        CoverConstruction::OddBoundary
    } else if m == 1 && h >= 2 {
        let perms = all_perms();
        let mut found = None;
        'search: for x in &perms {
            for y in &perms {
                images[0] = *x;
                images[1] = *y;
                // Solve the relator for p_1 with the other generators trivial.
                images[h] = IDENTITY;
                let rest = relator_image(surface, &images);
                let p1 = inverse(&rest);
                images[h] = p1;
                if is_double_transposition(&p1) && is_transitive(&images) {
                    found = Some(images.clone());
                    break 'search;
                }
            }
        }
        images = found?;
        CoverConstruction::SingleBoundary
    } else {
        return None;
    };
    Some((construction, images))
}

/// Whether the sheets admit an orientation labelling compatible with the
/// orientation character (handle generators reverse orientation on a
/// non-orientable surface, boundary classes preserve it).
fn cover_is_orientable(surface: &SurfaceData, images: &[Perm]) -> bool {
    if surface.orientable {
        return true;
    }
    let h = surface.handle_generators();
    let mut label: [Option<u8>; 4] = [None; 4];
    label[0] = Some(0);
    let mut queue = VecDeque::from([0u8]);
    while let Some(s) = queue.pop_front() {
        let ls = label[s as usize].expect("labelled");
        for (g, p) in images.iter().enumerate() {
            let flip = u8::from(g < h);
            for (t, lt) in [(p[s as usize], ls ^ flip), (inverse(p)[s as usize], ls ^ flip)] {
                match label[t as usize] {
                    None => {
                        label[t as usize] = Some(lt);
                        queue.push_back(t);
                    }
                    Some(existing) if existing != lt => return false,
                    Some(_) => {}
                }
            }
        }
    }
    true
}

/// Four-sheeted cover in which every boundary curve is covered by two curves,
/// each of degree 2.
pub fn four_cover(surface: &SurfaceData) -> Result<CoverDescriptor, CoverError> {
    let chi = surface.euler_characteristic();
    let degenerate = CoverError::DegenerateSurface { chi, boundary: surface.boundary };
    if surface.boundary == 0 || chi >= 0 || (!surface.orientable && surface.genus == 0) {
        return Err(degenerate);
    }
    let (construction, images) = monodromy(surface).ok_or(degenerate)?;
    debug_assert_eq!(relator_image(surface, &images), IDENTITY);
    debug_assert!(is_transitive(&images));

    let h = surface.handle_generators();
    let boundary_map: Vec<SlotLift> = surface
        .slots()
        .map(|slot| {
            let c = cycles(&images[h + slot - 1]);
            debug_assert!(c.len() == 2 && c.iter().all(|x| x.len() == 2));
            SlotLift {
                base_slot: slot,
                lifts: [(2 * slot - 1, c[0].len() as u32), (2 * slot, c[1].len() as u32)],
            }
        })
        .collect();

    let cover_chi = 4 * chi;
    let cover_boundary_count = 2 * surface.boundary;
    let orientable = cover_is_orientable(surface, &images);
    let b = cover_boundary_count as i64;
    let genus = if orientable { (2 - cover_chi - b) / 2 } else { 2 - cover_chi - b };
    let cover = SurfaceData {
        orientable,
        genus: u32::try_from(genus).expect("genus is nonnegative for a valid cover"),
        boundary: cover_boundary_count,
    };
    Ok(CoverDescriptor {
        base: surface.clone(),
        construction,
        monodromy: images,
        cover,
        cover_chi,
        cover_boundary_count,
        boundary_map,
    })
}

/// A connected subgraph of surface vertices joined by edges with both labels
/// equal to 2, with maps back to the parent graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeltaSubgraph {
    pub graph: GraphOfGroups,
    pub vertex_map: Vec<VertexId>,
    pub edge_map: Vec<EdgeId>,
}

fn eligibility(graph: &GraphOfGroups, edge: EdgeId) -> Result<(), String> {
    let e = graph.edge(edge).ok_or_else(|| "unknown edge".to_string())?;
    for v in [e.source, e.target] {
        if !graph.is_surface(v) {
            return Err(format!("endpoint {v} is not a surface vertex"));
        }
    }
    if e.source_end.label() != 2 || e.target_end.label() != 2 {
        return Err(format!("labels are ({}, {})", e.source_end.label(), e.target_end.label()));
    }
    Ok(())
}

/// The component containing `edge` of the graph on surface vertices whose
/// edges are the surface-to-surface edges with both labels 2.
pub fn delta_subgraph(graph: &GraphOfGroups, edge: EdgeId) -> Result<DeltaSubgraph, CoverError> {
    if graph.edge(edge).is_none() {
        return Err(CoverError::UnknownEdge(edge));
    }
    eligibility(graph, edge).map_err(|why| CoverError::NotEligible(edge, why))?;
    let eligible = |e: &crate::model::Edge| eligibility(graph, e.id).is_ok();
    let start = graph.edges()[edge].source;
    let vertices = graph
        .components_where(|v| graph.is_surface(v), eligible)
        .into_iter()
        .find(|c| c.binary_search(&start).is_ok())
        .expect("source lies in some component");
    let edges: Vec<EdgeId> = graph
        .edges()
        .iter()
        .filter(|e| eligible(e) && vertices.binary_search(&e.source).is_ok())
        .map(|e| e.id)
        .collect();
    let (g, vertex_map, edge_map) = graph.subgraph(&vertices, &edges);
    Ok(DeltaSubgraph { graph: g, vertex_map, edge_map })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoveredGraph {
    /// `Δ̂`: same vertices as `Δ` with covering surfaces, four edges per edge.
    pub graph: GraphOfGroups,
    /// For each edge `f` of `Δ`, the ids of `f₀, f₁, f₂, f₃`.
    pub edge_lifts: Vec<[EdgeId; 4]>,
    pub covers: Vec<CoverDescriptor>,
    /// Euler characteristic of the base `Δ`.
    pub base_chi: i64,
    base_edge_names: Vec<String>,
}

impl CoveredGraph {
    /// One line per base edge: `f -> f_0 f_1 f_2 f_3`.
    pub fn sidecar(&self) -> String {
        let mut s = String::new();
        for (name, lifts) in self.base_edge_names.iter().zip(&self.edge_lifts) {
            let names: Vec<&str> = lifts.iter().map(|&e| self.graph.edges()[e].name.as_str()).collect();
            let _ = writeln!(s, "{name} -> {}", names.join(" "));
        }
        s
    }
}

/// Builds `Δ̂`. Over an edge `f` whose end at `v` uses slot `δ`, the lifts
/// `f₀, f₂` attach to the first covering curve `δ₀` and `f₁, f₃` to `δ₁`,
/// each with exponent `±1` carrying the sign of the original attachment.
pub fn hat_delta(delta: &DeltaSubgraph) -> Result<CoveredGraph, CoverError> {
    let base = &delta.graph;
    let mut graph = GraphOfGroups::new();
    let mut covers = Vec::with_capacity(base.vertex_count());
    for v in base.vertices() {
        let VertexKind::Surface(s) = &v.kind else {
            return Err(CoverError::NotEligible(0, format!("vertex {} is not a surface vertex", v.id)));
        };
        let c = four_cover(s)?;
        graph.add_surface(v.name.clone(), c.cover.clone());
        covers.push(c);
    }
    let lift_end = |covers: &[CoverDescriptor], v: VertexId, att: Attachment, which: usize| match att {
        Attachment::Surface { slot, exponent } => {
            Attachment::surface(covers[v].boundary_map[slot - 1].lifts[which].0, exponent.signum())
        }
        Attachment::Cyclic { exponent } => Attachment::cyclic(exponent.signum()),
    };
    let mut edge_lifts = Vec::with_capacity(base.edge_count());
    for f in base.edges() {
        let mut ids = [0; 4];
        for (k, id) in ids.iter_mut().enumerate() {
            let which = k % 2;
            *id = graph.add_edge(
                format!("{}_{k}", f.name),
                f.source,
                f.target,
                lift_end(&covers, f.source, f.source_end, which),
                lift_end(&covers, f.target, f.target_end, which),
            );
        }
        edge_lifts.push(ids);
    }
    Ok(CoveredGraph {
        graph,
        edge_lifts,
        covers,
        base_chi: base.euler_characteristic(),
        base_edge_names: base.edges().iter().map(|e| e.name.clone()).collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientability {
    Orientable,
    NonOrientable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GluedSurface {
    pub chi: i64,
    pub glued_pairs: usize,
    pub boundary_count: usize,
    pub component_count: usize,
    pub orientability: Orientability,
    /// Genus when the result is connected.
    pub genus: Option<u32>,
    /// Covering slots left unglued, as `(vertex, slot)`.
    pub boundary_slots: Vec<(VertexId, SlotId)>,
}

/// Glues the covering surfaces along the curves joined by `f₀` and `f₁`
/// edges; `f₂` and `f₃` edges are dropped.
pub fn glued_surface(cg: &CoveredGraph) -> GluedSurface {
    let g = &cg.graph;
    let pieces: Vec<&SurfaceData> =
        g.vertices().iter().map(|v| v.kind.surface().expect("covered vertices are surfaces")).collect();
    let chi = pieces.iter().map(|s| s.euler_characteristic()).sum();

    let kept: Vec<EdgeId> = cg.edge_lifts.iter().flat_map(|l| [l[0], l[1]]).collect();
    let mut glued: BTreeMap<(VertexId, SlotId), ()> = BTreeMap::new();
    // Orientation label per piece; a gluing of slot classes with exponent
    // signs (s, t) is orientation-compatible iff o_a * s == -o_b * t.
    let mut orientation: Vec<Option<i64>> = vec![None; pieces.len()];
    let mut adjacency: Vec<Vec<(VertexId, i64)>> = vec![Vec::new(); pieces.len()];
    let mut consistent = pieces.iter().all(|s| s.orientable);
    for &id in &kept {
        let e = &g.edges()[id];
        for (v, att) in [(e.source, e.source_end), (e.target, e.target_end)] {
            if let Some(slot) = att.slot() {
                glued.insert((v, slot), ());
            }
        }
        let rel = -e.source_end.exponent().signum() * e.target_end.exponent().signum();
        if e.is_loop() {
            if rel != 1 {
                consistent = false;
            }
        } else {
            adjacency[e.source].push((e.target, rel));
            adjacency[e.target].push((e.source, rel));
        }
    }

    let mut component_count = 0;
    for start in 0..pieces.len() {
        if orientation[start].is_some() {
            continue;
        }
        component_count += 1;
        orientation[start] = Some(1);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            let ov = orientation[v].expect("set");
            for &(w, rel) in &adjacency[v] {
                let want = ov * rel;
                match orientation[w] {
                    None => {
                        orientation[w] = Some(want);
                        queue.push_back(w);
                    }
                    Some(x) if x != want => consistent = false,
                    Some(_) => {}
                }
            }
        }
    }

    let boundary_slots: Vec<(VertexId, SlotId)> = pieces
        .iter()
        .enumerate()
        .flat_map(|(v, s)| s.slots().map(move |slot| (v, slot)))
        .filter(|key| !glued.contains_key(key))
        .collect();
    let boundary_count = boundary_slots.len();
    let orientability = if consistent { Orientability::Orientable } else { Orientability::NonOrientable };
    let genus = (component_count == 1).then(|| {
        let rest = 2 - chi - boundary_count as i64;
        let genus = if consistent { rest / 2 } else { rest };
        u32::try_from(genus).expect("nonnegative genus")
    });
    GluedSurface {
        chi,
        glued_pairs: kept.len(),
        boundary_count,
        component_count,
        orientability,
        genus,
        boundary_slots,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pants_cover() {
        let c = four_cover(&SurfaceData::pants()).unwrap();
        assert_eq!((c.cover_chi, c.cover_boundary_count), (-4, 6));
        assert_eq!(c.cover_genus_orientable(), (0, true));
        assert_eq!(c.construction, CoverConstruction::OddBoundary);
    }

    #[test]
    fn one_holed_torus_cover() {
        let c = four_cover(&SurfaceData::orientable(1, 1)).unwrap();
        assert_eq!((c.cover_chi, c.cover_boundary_count), (-4, 2));
        assert_eq!(c.cover_genus_orientable(), (2, true));
        assert_eq!(c.construction, CoverConstruction::SingleBoundary);
        assert_eq!(c.boundary_map, vec![SlotLift { base_slot: 1, lifts: [(1, 2), (2, 2)] }]);
    }

    #[test]
    fn degenerate_surfaces() {
        for s in [
            SurfaceData::orientable(0, 1),
            SurfaceData::orientable(0, 2),
            SurfaceData::nonorientable(1, 1),
            SurfaceData::orientable(2, 0),
        ] {
            assert!(matches!(four_cover(&s), Err(CoverError::DegenerateSurface { .. })), "{s:?}");
        }
    }

    #[test]
    fn every_small_surface_has_a_valid_monodromy() {
        for orientable in [true, false] {
            for genus in 0..4 {
                for boundary in 1..7 {
                    let s = SurfaceData { orientable, genus, boundary };
                    let Ok(c) = four_cover(&s) else {
                        assert!(s.euler_characteristic() >= 0 || (!orientable && genus == 0));
                        continue;
                    };
                    assert_eq!(relator_image(&s, &c.monodromy), IDENTITY, "{s:?}");
                    assert!(is_transitive(&c.monodromy));
                    for lift in &c.boundary_map {
                        assert_eq!(lift.lifts.iter().map(|l| l.1).sum::<u32>(), 4);
                    }
                    let b = c.cover.boundary as i64;
                    let g = i64::from(c.cover.genus);
                    let chi = if c.cover.orientable { 2 - 2 * g - b } else { 2 - g - b };
                    assert_eq!(chi, 4 * s.euler_characteristic());
                    if orientable {
                        assert!(c.cover.orientable);
                    }
                }
            }
        }
    }

    #[test]
    fn cover_of_nonorientable_surface_is_determined() {
        // Boundary-only action: handle generators act trivially, so an
        // orientation-reversing loop lifts and the cover stays non-orientable.
        let c = four_cover(&SurfaceData::nonorientable(1, 3)).unwrap();
        assert!(!c.cover.orientable);
        // Handle generator acting nontrivially: the orientation character can
        // factor through the action and the cover is orientable.
        let c = four_cover(&SurfaceData::nonorientable(1, 2)).unwrap();
        assert_eq!(c.construction, CoverConstruction::EvenBoundaryWithHandle);
        assert_eq!(c.cover_chi, -4);
    }

    fn two_pants() -> GraphOfGroups {
        let mut g = GraphOfGroups::new();
        let p = g.add_surface("P", SurfaceData::pants());
        let q = g.add_surface("Q", SurfaceData::pants());
        g.add_edge("e", p, q, Attachment::surface(1, 2), Attachment::surface(1, 2));
        g.add_edge("f", p, q, Attachment::surface(2, 3), Attachment::surface(2, 3));
        g.add_edge("h", p, q, Attachment::surface(3, 2), Attachment::surface(3, 3));
        g
    }

    #[test]
    fn delta_excludes_other_labels() {
        let d = delta_subgraph(&two_pants(), 0).unwrap();
        assert_eq!(d.vertex_map, vec![0, 1]);
        assert_eq!(d.edge_map, vec![0]);
        assert!(matches!(delta_subgraph(&two_pants(), 2), Err(CoverError::NotEligible(2, _))));
    }

    #[test]
    fn delta_rejects_cyclic_endpoint() {
        let mut g = GraphOfGroups::new();
        let p = g.add_surface("P", SurfaceData::orientable(1, 1));
        let w = g.add_cyclic("w");
        g.add_edge("e", p, w, Attachment::surface(1, 2), Attachment::cyclic(2));
        assert!(matches!(delta_subgraph(&g, 0), Err(CoverError::NotEligible(0, _))));
    }

    #[test]
    fn hat_delta_of_two_pants() {
        let d = delta_subgraph(&two_pants(), 0).unwrap();
        let cg = hat_delta(&d).unwrap();
        assert_eq!(cg.graph.vertex_count(), 2);
        assert_eq!(cg.graph.edge_count(), 4);
        assert!(cg.graph.all_ends().all(|end| cg.graph.attachment(end).unwrap().label() == 1));
        assert_eq!(d.graph.euler_characteristic(), -2);
        assert_eq!(cg.graph.euler_characteristic(), -8);
        assert_eq!(cg.sidecar(), "e -> e_0 e_1 e_2 e_3\n");
        // f0, f2 share the first covering slot; f1, f3 the second.
        let slots: Vec<_> = cg.graph.edges().iter().map(|e| e.source_end.slot().unwrap()).collect();
        assert_eq!(slots, vec![1, 2, 1, 2]);

        let s = glued_surface(&cg);
        assert_eq!((s.chi, s.glued_pairs, s.boundary_count, s.component_count), (-8, 2, 8, 1));
        assert_eq!(s.orientability, Orientability::Orientable);
        // 2 - 2g - 8 = -8.
        assert_eq!(s.genus, Some(1));
    }

    #[test]
    fn hat_delta_of_loop() {
        let mut g = GraphOfGroups::new();
        let p = g.add_surface("P", SurfaceData::orientable(0, 4));
        g.add_edge("l", p, p, Attachment::surface(1, 2), Attachment::surface(2, 2));
        let cg = hat_delta(&delta_subgraph(&g, 0).unwrap()).unwrap();
        assert_eq!((cg.graph.vertex_count(), cg.graph.edge_count()), (1, 4));
        assert!(cg.graph.edges().iter().all(|e| e.is_loop()));
        // Gluing boundary classes with equal signs on one orientable piece.
        let s = glued_surface(&cg);
        assert_eq!(s.orientability, Orientability::NonOrientable);
        assert_eq!(s.boundary_count, 4);
    }

    #[test]
    fn edgeless_delta_glues_nothing() {
        let mut g = GraphOfGroups::new();
        g.add_surface("P", SurfaceData::pants());
        let d = DeltaSubgraph { graph: g, vertex_map: vec![0], edge_map: vec![] };
        let s = glued_surface(&hat_delta(&d).unwrap());
        assert_eq!((s.chi, s.glued_pairs, s.boundary_count, s.component_count), (-4, 0, 6, 1));
    }
}
