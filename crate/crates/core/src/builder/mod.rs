//! Constructive patch machinery: belts, peeling, corner surgery, lattice
//! tessellations and their truncations, the assembled three-corner
//! patches, strips, generic enlargement and the named patch families.

mod families;
mod lattice;

pub use families::{family_patch, insert_strip};
pub use lattice::{
    boundary_part_lengths, build_030, build_tessellation, truncate_tessellation, truncate_type,
    AssemblySpec, Identification, TruncSpec, Truncation,
};

use crate::analysis::{classify_patch, AnalysisError, PatchSignature};
use crate::surface::{BuildError, Patch, VertexId};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuilderError {
    #[error("parameter domain: {0}")]
    Domain(String),
    #[error("vertex {0} is not a boundary corner of degree four")]
    NotDegree4Corner(VertexId),
    #[error("opposite vertices already form an edge; corner cannot be cut")]
    ForbiddenChord,
    #[error("boundary vertices {0:?} do not have degree six")]
    BoundaryDegreeNotSix(Vec<VertexId>),
    #[error("patch lacks the requested boundary points of degree {0}")]
    InsufficientBoundaryPoints(usize),
    #[error("no witness construction is known for {0}")]
    FamilyWitnessUnavailable(String),
    #[error("construction produced {got} but {expected} was required")]
    SignatureMismatch { expected: String, got: String },
    #[error("identified segments differ in length")]
    SegmentLengthMismatch,
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
}

/// A disc-like object: peeling a belt (and the two-corner family at its
/// degenerate end) can leave a patch, a one-dimensional core, or points.
#[derive(Debug, Clone)]
pub enum Disc {
    Proper(Patch),
    Graph {
        vertices: Vec<VertexId>,
        edges: Vec<(VertexId, VertexId)>,
    },
    Points(Vec<VertexId>),
}

impl Disc {
    pub fn as_patch(&self) -> Option<&Patch> {
        match self {
            Disc::Proper(p) => Some(p),
            _ => None,
        }
    }

    /// Closed walk around the object: the boundary cycle of a proper patch,
    /// or the doubled traversal of a path core.
    pub fn boundary_walk(&self) -> Option<Vec<VertexId>> {
        match self {
            Disc::Proper(p) => Some(p.boundary_labels()),
            Disc::Graph { vertices, edges } => {
                // Only a simple path doubles into a closed walk.
                let mut deg: BTreeMap<VertexId, usize> = BTreeMap::new();
                let mut adj: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
                for &(a, b) in edges {
                    *deg.entry(a).or_default() += 1;
                    *deg.entry(b).or_default() += 1;
                    adj.entry(a).or_default().push(b);
                    adj.entry(b).or_default().push(a);
                }
                if vertices.iter().any(|v| !deg.contains_key(v)) {
                    return None;
                }
                let ends: Vec<VertexId> = deg
                    .iter()
                    .filter(|(_, &d)| d == 1)
                    .map(|(&v, _)| v)
                    .collect();
                if ends.len() != 2 || deg.values().any(|&d| d > 2) {
                    return None;
                }
                let mut path = vec![ends[0]];
                let mut prev = None;
                while *path.last().unwrap() != ends[1] {
                    let cur = *path.last().unwrap();
                    let next = *adj[&cur].iter().find(|&&w| Some(w) != prev)?;
                    prev = Some(cur);
                    path.push(next);
                }
                if path.len() != vertices.len() {
                    return None;
                }
                let mut walk = path.clone();
                walk.extend(path.iter().rev().skip(1).take(path.len().saturating_sub(2)));
                Some(walk)
            }
            Disc::Points(_) => None,
        }
    }

    /// Degree of a vertex under the disc convention, extended to the
    /// degenerate cores: each traversal of the boundary walk past a vertex
    /// contributes two.
    pub fn degree_of(&self, label: VertexId) -> Option<usize> {
        match self {
            Disc::Proper(p) => p.degree_of(label),
            Disc::Graph {
                vertices, edges, ..
            } => {
                if !vertices.contains(&label) {
                    return None;
                }
                let d = edges
                    .iter()
                    .filter(|&&(a, b)| a == label || b == label)
                    .count();
                Some(d + if d == 1 { 2 } else { 4 })
            }
            Disc::Points(pts) => pts.contains(&label).then_some(0),
        }
    }
}

pub(crate) fn expect_signature(
    patch: &Patch,
    expected: (usize, usize, usize, usize),
    b: usize,
) -> Result<PatchSignature, BuilderError> {
    let sig = classify_patch(patch)?;
    if (sig.a3, sig.a4, sig.a5, sig.a6) != expected || sig.b != b {
        return Err(BuilderError::SignatureMismatch {
            expected: format!(
                "({},{},{},{})_{}",
                expected.0, expected.1, expected.2, expected.3, b
            ),
            got: sig.notation(),
        });
    }
    Ok(sig)
}

/// Relabel densely as 1..f1 preserving label order.
pub fn compacted(patch: &Patch) -> Patch {
    let map: BTreeMap<VertexId, VertexId> = patch
        .labels()
        .iter()
        .enumerate()
        .map(|(i, &l)| (l, i as VertexId + 1))
        .collect();
    patch
        .relabeled(&map)
        .expect("relabeling preserves validity")
}

/// Boundary vertices of degree four, in boundary order.
pub fn boundary_corners(patch: &Patch) -> Vec<VertexId> {
    patch
        .boundary_labels()
        .into_iter()
        .filter(|&l| patch.degree_of(l) == Some(4))
        .collect()
}

/// Enlarge a patch by a ring of new vertices, pushing the requested number
/// of boundary degree-4 and degree-5 vertices out of their position. With
/// `(0, 0)` this is the plain belt: every degree is preserved and the old
/// boundary becomes interior.
pub fn generic_enlarge(patch: &Patch, use_b4: usize, use_b5: usize) -> Result<Patch, BuilderError> {
    let bd = patch.boundary_labels();
    let b = bd.len();
    let chosen4: Vec<usize> = (0..b)
        .filter(|&i| patch.degree_of(bd[i]) == Some(4))
        .collect();
    let chosen5: Vec<usize> = (0..b)
        .filter(|&i| patch.degree_of(bd[i]) == Some(5))
        .collect();
    if chosen4.len() < use_b4 {
        return Err(BuilderError::InsufficientBoundaryPoints(4));
    }
    if chosen5.len() < use_b5 {
        return Err(BuilderError::InsufficientBoundaryPoints(5));
    }
    let chosen4: BTreeSet<usize> = chosen4.into_iter().take(use_b4).collect();
    let chosen5: BTreeSet<usize> = chosen5.into_iter().take(use_b5).collect();

    let mut next = patch.next_label();
    let mut fresh = || {
        let l = next;
        next += 1;
        l
    };
    let mut tris = patch.triangles();
    // One ring vertex per boundary edge.
    let ring: Vec<VertexId> = (0..b).map(|_| fresh()).collect();
    for i in 0..b {
        tris.push([bd[i], bd[(i + 1) % b], ring[i]]);
    }
    let mut new_bd: Vec<VertexId> = Vec::new();
    for j in 0..b {
        // Ring vertex on the edge entering bd[j] is ring[(j+b-1)%b].
        let prev_ring = ring[(j + b - 1) % b];
        let next_ring = ring[j];
        new_bd.push(prev_ring);
        if chosen4.contains(&j) {
            let (x, y, z) = (fresh(), fresh(), fresh());
            tris.push([bd[j], prev_ring, x]);
            tris.push([bd[j], x, y]);
            tris.push([bd[j], y, next_ring]);
            tris.push([x, y, z]);
            new_bd.push(x);
            new_bd.push(z);
            new_bd.push(y);
        } else if chosen5.contains(&j) {
            let w = fresh();
            tris.push([bd[j], prev_ring, w]);
            tris.push([bd[j], w, next_ring]);
            new_bd.push(w);
        } else {
            tris.push([prev_ring, bd[j], next_ring]);
        }
    }
    let out = Patch::from_triangles(&tris, Some(&new_bd))?;
    debug_assert_eq!(out.boundary_len(), b + 3 * use_b4 + use_b5);
    Ok(out)
}

pub fn add_belt(patch: &Patch) -> Result<Patch, BuilderError> {
    generic_enlarge(patch, 0, 0)
}

pub fn add_belts(patch: &Patch, m: usize) -> Result<Patch, BuilderError> {
    let mut cur = patch.clone();
    for _ in 0..m {
        cur = add_belt(&cur)?;
    }
    Ok(cur)
}

/// Remove the boundary vertices and everything incident to them. Requires
/// every boundary vertex to have degree six; asserts the face-number
/// deltas when the result is two-dimensional.
pub fn peel_belt(patch: &Patch) -> Result<Disc, BuilderError> {
    let bd = patch.boundary_labels();
    let offending: Vec<VertexId> = bd
        .iter()
        .copied()
        .filter(|&l| patch.degree_of(l) != Some(6))
        .collect();
    if !offending.is_empty() {
        return Err(BuilderError::BoundaryDegreeNotSix(offending));
    }
    let bd_set: BTreeSet<VertexId> = bd.iter().copied().collect();
    let kept: Vec<[VertexId; 3]> = patch
        .triangles()
        .into_iter()
        .filter(|t| t.iter().all(|v| !bd_set.contains(v)))
        .collect();
    let survivors: Vec<VertexId> = patch
        .labels()
        .iter()
        .copied()
        .filter(|l| !bd_set.contains(l))
        .collect();
    if kept.is_empty() {
        // One-dimensional or zero-dimensional residue: surviving edges are
        // the old interior edges between survivors.
        let surv: BTreeSet<VertexId> = survivors.iter().copied().collect();
        let mut edges: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
        for t in patch.triangles() {
            for k in 0..3 {
                let (a, c) = (t[k], t[(k + 1) % 3]);
                if surv.contains(&a) && surv.contains(&c) {
                    edges.insert((a.min(c), a.max(c)));
                }
            }
        }
        if edges.is_empty() {
            return Ok(Disc::Points(survivors));
        }
        return Ok(Disc::Graph {
            vertices: survivors,
            edges: edges.into_iter().collect(),
        });
    }
    let peeled = Patch::from_triangles(&kept, None)?;
    let b = bd.len();
    if peeled.vertex_count() != patch.vertex_count() - b
        || peeled.edge_count() != patch.edge_count() - 3 * b
        || peeled.triangle_count() != patch.triangle_count() - 2 * b
    {
        return Err(BuilderError::SignatureMismatch {
            expected: format!("face deltas (-{}, -{}, -{})", b, 3 * b, 2 * b),
            got: "peel produced different face numbers".to_string(),
        });
    }
    Ok(Disc::Proper(peeled))
}

/// Replace the four triangles around a boundary corner of degree four by
/// the single opposite triangle, shortening the boundary by three.
pub fn cut_corner(patch: &Patch, corner: VertexId) -> Result<Patch, BuilderError> {
    if patch.degree_of(corner) != Some(4) || patch.is_on_boundary(corner) != Some(true) {
        return Err(BuilderError::NotDegree4Corner(corner));
    }
    let fan = patch.link_of(corner).expect("corner exists");
    debug_assert_eq!(fan.len(), 2);
    let (x2, x3) = (fan[0], fan[1]);
    // Apex of the edge x2-x3 away from the corner.
    let x5 = common_triangle_apex(patch, x2, x3, corner).ok_or(BuilderError::ForbiddenChord)?;
    let x4 = common_triangle_apex(patch, x2, x5, x3).ok_or(BuilderError::ForbiddenChord)?;
    let x6 = common_triangle_apex(patch, x3, x5, x2).ok_or(BuilderError::ForbiddenChord)?;
    if x4 == x6 || x4 == corner || x6 == corner {
        return Err(BuilderError::ForbiddenChord);
    }
    let sk = crate::surface::Surface::Patch(patch.clone());
    let sk = sk.skeleton();
    let (i4, i6) = (sk.index_of(x4).unwrap(), sk.index_of(x6).unwrap());
    if sk.are_adjacent(i4, i6) {
        return Err(BuilderError::ForbiddenChord);
    }
    let remove: BTreeSet<[VertexId; 3]> = [
        sorted([corner, x2, x3]),
        sorted([x2, x4, x5]),
        sorted([x2, x3, x5]),
        sorted([x3, x5, x6]),
    ]
    .into_iter()
    .collect();
    let mut tris: Vec<[VertexId; 3]> = patch
        .triangles()
        .into_iter()
        .filter(|t| !remove.contains(&sorted(*t)))
        .collect();
    if tris.len() != patch.triangle_count() - 4 {
        return Err(BuilderError::ForbiddenChord);
    }
    tris.push([x4, x5, x6]);
    let out = Patch::from_triangles(&tris, None)?;
    if out.boundary_len() != patch.boundary_len() - 3 {
        return Err(BuilderError::SignatureMismatch {
            expected: format!("boundary {}", patch.boundary_len() - 3),
            got: format!("boundary {}", out.boundary_len()),
        });
    }
    Ok(out)
}

fn sorted(mut t: [VertexId; 3]) -> [VertexId; 3] {
    t.sort_unstable();
    t
}

/// Third vertex of the triangle on edge `a-b` that is not `avoid`.
fn common_triangle_apex(
    patch: &Patch,
    a: VertexId,
    b: VertexId,
    avoid: VertexId,
) -> Option<VertexId> {
    patch
        .triangles()
        .into_iter()
        .filter(|t| t.contains(&a) && t.contains(&b) && !t.contains(&avoid))
        .map(|t| *t.iter().find(|&&v| v != a && v != b).unwrap())
        .next()
}

/// Delete a consecutive run of boundary vertices, returning the new patch
/// and the boundary path that replaces the run (flanking vertices
/// included).
pub fn remove_boundary_run(
    patch: &Patch,
    run: &[VertexId],
) -> Result<(Patch, Vec<VertexId>), BuilderError> {
    let bd = patch.boundary_labels();
    let b = bd.len();
    let start = bd
        .iter()
        .position(|&v| v == run[0])
        .ok_or_else(|| BuilderError::Domain(format!("{} not on boundary", run[0])))?;
    // The run must sit consecutively on the cycle in one direction or the
    // other.
    let fwd = (0..run.len()).all(|i| bd[(start + i) % b] == run[i]);
    let bwd = (0..run.len()).all(|i| bd[(start + b - i) % b] == run[i]);
    if !fwd && !bwd {
        return Err(BuilderError::Domain(
            "run is not consecutive on the boundary".into(),
        ));
    }
    let (before, after) = if fwd {
        (bd[(start + b - 1) % b], bd[(start + run.len()) % b])
    } else {
        (bd[(start + 1) % b], bd[(start + b - run.len()) % b])
    };
    if before == after || run.contains(&before) || run.contains(&after) {
        return Err(BuilderError::Domain(
            "run removal would exhaust the boundary".into(),
        ));
    }
    let gone: BTreeSet<VertexId> = run.iter().copied().collect();
    let kept: Vec<[VertexId; 3]> = patch
        .triangles()
        .into_iter()
        .filter(|t| t.iter().all(|v| !gone.contains(v)))
        .collect();
    let out = Patch::from_triangles(&kept, None)?;
    // Replacement path: walk the new boundary from `before` to `after` on
    // the side avoiding surviving old-boundary vertices.
    let new_bd = out.boundary_labels();
    let nb = new_bd.len();
    let pos = new_bd.iter().position(|&v| v == before).unwrap();
    let old_bd: BTreeSet<VertexId> = bd.iter().copied().collect();
    for dir in [1isize, -1isize] {
        let mut path = vec![before];
        let mut i = pos as isize;
        loop {
            i = (i + dir).rem_euclid(nb as isize);
            let v = new_bd[i as usize];
            path.push(v);
            if v == after {
                // Interior of the path must be newly exposed vertices.
                if path[1..path.len() - 1].iter().all(|v| !old_bd.contains(v)) {
                    return Ok((out, path));
                }
                break;
            }
            if old_bd.contains(&v) {
                break;
            }
        }
    }
    Err(BuilderError::Domain("replacement path not found".into()))
}

/// Two-corner patch: a path of `k` edges wrapped in `r` rings. With no
/// rings the object degenerates to the bare path.
pub fn build_200(k: usize, r: usize) -> Result<Disc, BuilderError> {
    if k < 2 {
        return Err(BuilderError::Domain(format!("need k >= 2, got {}", k)));
    }
    let path: Vec<VertexId> = (1..=k as VertexId + 1).collect();
    if r == 0 {
        let edges = (0..k).map(|i| (path[i], path[i + 1])).collect();
        return Ok(Disc::Graph {
            vertices: path,
            edges,
        });
    }
    let mut walk: Vec<VertexId> = path.clone();
    walk.extend(path.iter().rev().skip(1).take(k - 1));
    let mut tris: Vec<[VertexId; 3]> = Vec::new();
    let mut next = k as VertexId + 2;
    let mut prev = walk;
    for _ in 0..r {
        let ring: Vec<VertexId> = (0..2 * k)
            .map(|_| {
                let l = next;
                next += 1;
                l
            })
            .collect();
        for i in 0..2 * k {
            let (a0, a1) = (prev[i], prev[(i + 1) % (2 * k)]);
            let (b0, b1) = (ring[i], ring[(i + 1) % (2 * k)]);
            tris.push([a0, a1, b0]);
            tris.push([a1, b0, b1]);
        }
        prev = ring;
    }
    let patch = Patch::from_triangles(&tris, Some(&prev))?;
    let m = 2 * k * r + k - 1;
    expect_signature(&patch, (2, 0, 0, m), 2 * k)?;
    Ok(Disc::Proper(patch))
}

/// Remove the corner sub-tessellation of side `g` at a degree-4 boundary
/// corner by `g` successive diagonal deletions.
pub fn truncate_corner(
    patch: &Patch,
    corner: VertexId,
    g: usize,
) -> Result<(Patch, Vec<VertexId>), BuilderError> {
    if patch.degree_of(corner) != Some(4) || patch.is_on_boundary(corner) != Some(true) {
        return Err(BuilderError::NotDegree4Corner(corner));
    }
    let mut cur = patch.clone();
    let mut diag = vec![corner];
    for _ in 0..g {
        let (next, exposed) = remove_boundary_run(&cur, &diag)?;
        cur = next;
        diag = exposed;
    }
    Ok((cur, diag))
}
