//! Gluing discs into spheres: circular strips with optional intermediate
//! rings, the three special methods producing `(2,3,0)` triangulations,
//! and the connected sum.

use crate::analysis::classify_closed;
use crate::builder::Disc;
use crate::surface::{BuildError, ClosedTriangulation, VertexId};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GlueError {
    #[error("boundary walks have different lengths: {0} vs {1}")]
    BoundaryLengthMismatch(usize, usize),
    #[error("degenerate core has no usable boundary walk")]
    NoBoundaryWalk,
    #[error("no alignment produced a valid gluing")]
    NoValidAlignment,
    #[error("the required boundary placement is not satisfied: {0}")]
    PlacementUnsatisfied(String),
    #[error("triangle choice invalid: {0:?}")]
    InvalidTriangleChoice([VertexId; 3]),
    #[error(transparent)]
    Build(#[from] BuildError),
}

#[derive(Debug, Clone)]
pub struct GlueOutcome {
    pub triangulation: ClosedTriangulation,
    /// Vertices of degree above six, when the seam left any.
    pub not_elliptic: Option<Vec<VertexId>>,
    pub alignment: (usize, bool),
}

fn shift_labels(tris: &[[VertexId; 3]], by: VertexId) -> Vec<[VertexId; 3]> {
    tris.iter()
        .map(|t| [t[0] + by, t[1] + by, t[2] + by])
        .collect()
}

/// Triangles of the band between two closed walks of equal length.
fn band(a: &[VertexId], b: &[VertexId]) -> Vec<[VertexId; 3]> {
    let n = a.len();
    let mut tris = Vec::with_capacity(2 * n);
    for i in 0..n {
        let (a0, a1) = (a[i], a[(i + 1) % n]);
        let (b0, b1) = (b[i], b[(i + 1) % n]);
        tris.push([a0, a1, b0]);
        tris.push([a1, b0, b1]);
    }
    tris
}

fn aligned(walk: &[VertexId], offset: usize, reflect: bool) -> Vec<VertexId> {
    let n = walk.len();
    (0..n)
        .map(|i| {
            if reflect {
                walk[(offset + n - i) % n]
            } else {
                walk[(offset + i) % n]
            }
        })
        .collect()
}

fn try_strip_glue(
    a: &Disc,
    b_tris: &[[VertexId; 3]],
    walk_b: &[VertexId],
    belts: usize,
    offset: usize,
    reflect: bool,
    fresh_base: VertexId,
) -> Result<ClosedTriangulation, BuildError> {
    let walk_a = a.boundary_walk().expect("checked by caller");
    let n = walk_a.len();
    let mut tris: Vec<[VertexId; 3]> = match a {
        Disc::Proper(p) => p.triangles(),
        Disc::Graph { .. } => Vec::new(),
        Disc::Points(_) => Vec::new(),
    };
    tris.extend_from_slice(b_tris);
    let mut rings: Vec<Vec<VertexId>> = Vec::new();
    let mut next = fresh_base;
    for _ in 0..belts {
        rings.push(
            (0..n)
                .map(|_| {
                    let l = next;
                    next += 1;
                    l
                })
                .collect(),
        );
    }
    let target = aligned(walk_b, offset, reflect);
    let mut prev: Vec<VertexId> = walk_a;
    for ring in &rings {
        tris.extend(band(&prev, ring));
        prev = ring.clone();
    }
    tris.extend(band(&prev, &target));
    ClosedTriangulation::from_triangles(&tris)
}

/// Glue two discs along their boundary walks through `belts` intermediate
/// rings of new degree-6 vertices. With no alignment given, offsets are
/// tried in ascending order, unreflected first, and the first elliptic
/// result wins; if none is elliptic the first valid result is returned
/// with a diagnostic.
pub fn glue_strip(
    a: &Disc,
    b: &Disc,
    belts: usize,
    alignment: Option<(usize, bool)>,
) -> Result<GlueOutcome, GlueError> {
    let walk_a = a.boundary_walk().ok_or(GlueError::NoBoundaryWalk)?;
    let walk_b = b.boundary_walk().ok_or(GlueError::NoBoundaryWalk)?;
    if walk_a.len() != walk_b.len() {
        return Err(GlueError::BoundaryLengthMismatch(
            walk_a.len(),
            walk_b.len(),
        ));
    }
    let max_a = match a {
        Disc::Proper(p) => p.labels().last().copied().unwrap_or(0),
        Disc::Graph { vertices, .. } => vertices.iter().max().copied().unwrap_or(0),
        Disc::Points(_) => return Err(GlueError::NoBoundaryWalk),
    };
    let b_tris_raw = match b {
        Disc::Proper(p) => p.triangles(),
        Disc::Graph { .. } => Vec::new(),
        Disc::Points(_) => return Err(GlueError::NoBoundaryWalk),
    };
    let b_tris = shift_labels(&b_tris_raw, max_a);
    let walk_b: Vec<VertexId> = walk_b.iter().map(|&v| v + max_a).collect();
    let max_b = walk_b
        .iter()
        .copied()
        .chain(b_tris.iter().flatten().copied())
        .max()
        .unwrap_or(max_a);

    let candidates: Vec<(usize, bool)> = match alignment {
        Some(al) => vec![al],
        None => {
            let n = walk_a.len();
            (0..n).flat_map(|o| [(o, false), (o, true)]).collect()
        }
    };
    let mut fallback: Option<GlueOutcome> = None;
    for (offset, reflect) in candidates {
        match try_strip_glue(a, &b_tris, &walk_b, belts, offset, reflect, max_b + 1) {
            Ok(t) => {
                let over: Vec<VertexId> = t
                    .labels()
                    .iter()
                    .copied()
                    .filter(|&v| t.degree_of(v).unwrap_or(0) > 6)
                    .collect();
                let outcome = GlueOutcome {
                    triangulation: t,
                    not_elliptic: if over.is_empty() { None } else { Some(over) },
                    alignment: (offset, reflect),
                };
                if outcome.not_elliptic.is_none() {
                    return Ok(outcome);
                }
                fallback.get_or_insert(outcome);
            }
            Err(_) => continue,
        }
    }
    fallback.ok_or(GlueError::NoValidAlignment)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GlueMethod {
    /// Through one belt; the two boundary degree-5 vertices end up opposite
    /// a common edge and a degree-4 vertex is inserted between them.
    A,
    /// Direct identification of the boundaries, then the same insertion.
    B,
    /// Direct identification where one degree-5 vertex sits just inside
    /// its patch, opposite a boundary edge.
    C,
}

/// Insert a degree-4 vertex between two degree-5 vertices lying opposite a
/// common edge: the edge is removed and the new vertex joined to the four
/// surrounding vertices. Both degree-5 vertices gain a degree.
pub fn insert_between_fives(t: &ClosedTriangulation) -> Option<ClosedTriangulation> {
    let tris = t.triangles();
    let mut apexes: BTreeMap<(VertexId, VertexId), Vec<VertexId>> = BTreeMap::new();
    for tr in &tris {
        for k in 0..3 {
            let (a, b, c) = (tr[k], tr[(k + 1) % 3], tr[(k + 2) % 3]);
            apexes.entry((a.min(b), a.max(b))).or_default().push(c);
        }
    }
    let fresh = t.labels().last().copied().unwrap_or(0) + 1;
    for (&(u, v), ap) in &apexes {
        if ap.len() != 2 {
            continue;
        }
        let (s1, s2) = (ap[0], ap[1]);
        if t.degree_of(s1) != Some(5) || t.degree_of(s2) != Some(5) {
            continue;
        }
        let mut out: Vec<[VertexId; 3]> = tris
            .iter()
            .copied()
            .filter(|tr| !(tr.contains(&u) && tr.contains(&v)))
            .collect();
        let w = fresh;
        out.extend([[u, s1, w], [s1, v, w], [v, s2, w], [s2, u, w]]);
        if let Ok(new_t) = ClosedTriangulation::from_triangles(&out) {
            return Some(new_t);
        }
    }
    None
}

/// Glue two type-(1,1,1) patches into a `(2,3,0)` triangulation by one of
/// the three special methods.
pub fn glue_method(
    p1: &crate::Patch,
    p2: &crate::Patch,
    method: GlueMethod,
) -> Result<ClosedTriangulation, GlueError> {
    let bd_five = |p: &crate::Patch| {
        p.boundary_labels()
            .iter()
            .any(|&l| p.degree_of(l) == Some(5))
    };
    let inner_five_near_boundary = |p: &crate::Patch| {
        // A degree-5 interior vertex opposite a boundary edge.
        let bd = p.boundary_labels();
        let b = bd.len();
        (0..b).any(|i| {
            let (u, v) = (bd[i], bd[(i + 1) % b]);
            p.triangles().iter().any(|t| {
                t.contains(&u) && t.contains(&v) && {
                    let w = *t.iter().find(|&&x| x != u && x != v).unwrap();
                    p.is_on_boundary(w) == Some(false) && p.degree_of(w) == Some(5)
                }
            })
        })
    };
    match method {
        GlueMethod::A | GlueMethod::B => {
            if !bd_five(p1) || !bd_five(p2) {
                return Err(GlueError::PlacementUnsatisfied(
                    "both patches need a boundary vertex of degree five".into(),
                ));
            }
        }
        GlueMethod::C => {
            if !inner_five_near_boundary(p1) || !bd_five(p2) {
                return Err(GlueError::PlacementUnsatisfied(
                    "first patch needs a degree-5 vertex opposite a boundary edge, second a boundary degree-5".into(),
                ));
            }
        }
    }
    let b = p1.boundary_len();
    if b != p2.boundary_len() {
        return Err(GlueError::BoundaryLengthMismatch(b, p2.boundary_len()));
    }
    // Expected count of degree-6 vertices in the result.
    let five_count = |p: &crate::Patch| {
        p.labels()
            .iter()
            .filter(|&&v| p.degree_of(v) == Some(6))
            .count()
    };
    let belts = usize::from(method == GlueMethod::A);
    let expected_n6 = five_count(p1) + five_count(p2) + belts * b + 2;
    let candidates: Vec<(usize, bool)> = (0..b).flat_map(|o| [(o, false), (o, true)]).collect();
    for (offset, reflect) in candidates {
        let joined = match glue_strip(
            &Disc::Proper(p1.clone()),
            &Disc::Proper(p2.clone()),
            belts,
            Some((offset, reflect)),
        ) {
            Ok(outcome) if outcome.not_elliptic.is_none() => outcome.triangulation,
            _ => continue,
        };
        if let Ok(sig) = classify_closed(&joined) {
            if sig.type_tuple() != (2, 2, 2) {
                continue;
            }
            if let Some(result) = insert_between_fives(&joined) {
                if let Ok(sig) = classify_closed(&result) {
                    if sig.type_tuple() == (2, 3, 0) && sig.n6 == expected_n6 {
                        return Ok(result);
                    }
                }
            }
        }
    }
    Err(GlueError::NoValidAlignment)
}

/// Connected sum: remove a triangle from each side and identify the holes.
/// The six alignments are tried in order unless one is pinned.
pub fn connected_sum(
    t1: &ClosedTriangulation,
    tri1: [VertexId; 3],
    t2: &ClosedTriangulation,
    tri2: [VertexId; 3],
    alignment: Option<(usize, bool)>,
) -> Result<ClosedTriangulation, GlueError> {
    let has = |t: &ClosedTriangulation, tri: [VertexId; 3]| {
        let mut want = tri;
        want.sort_unstable();
        t.triangles().iter().any(|x| {
            let mut s = *x;
            s.sort_unstable();
            s == want
        })
    };
    if !has(t1, tri1) {
        return Err(GlueError::InvalidTriangleChoice(tri1));
    }
    if !has(t2, tri2) {
        return Err(GlueError::InvalidTriangleChoice(tri2));
    }
    let max1 = t1.labels().last().copied().unwrap_or(0);
    let strip = |t: &ClosedTriangulation, tri: [VertexId; 3]| -> Vec<[VertexId; 3]> {
        t.triangles()
            .into_iter()
            .filter(|x| {
                let mut s = *x;
                s.sort_unstable();
                let mut w = tri;
                w.sort_unstable();
                s != w
            })
            .collect()
    };
    let base1 = strip(t1, tri1);
    let base2 = strip(t2, tri2);
    let candidates: Vec<(usize, bool)> = match alignment {
        Some(al) => vec![al],
        None => (0..3).flat_map(|o| [(o, false), (o, true)]).collect(),
    };
    for (rot, reflect) in candidates {
        let t2v = if reflect {
            [tri2[0], tri2[2], tri2[1]]
        } else {
            tri2
        };
        let mut map: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        for i in 0..3 {
            map.insert(t2v[(i + rot) % 3], tri1[i]);
        }
        let mut tris = base1.clone();
        for t in &base2 {
            tris.push(t.map(|v| map.get(&v).copied().unwrap_or(v + max1)));
        }
        if let Ok(out) = ClosedTriangulation::from_triangles(&tris) {
            return Ok(out);
        }
    }
    Err(GlueError::NoValidAlignment)
}

/// Subdivide a triangle with a new degree-3 vertex.
pub fn insert_cubic_vertex(
    t: &ClosedTriangulation,
    tri: [VertexId; 3],
) -> Result<ClosedTriangulation, GlueError> {
    let mut want = tri;
    want.sort_unstable();
    let mut tris: Vec<[VertexId; 3]> = t
        .triangles()
        .into_iter()
        .filter(|x| {
            let mut s = *x;
            s.sort_unstable();
            s != want
        })
        .collect();
    if tris.len() != t.triangle_count() - 1 {
        return Err(GlueError::InvalidTriangleChoice(tri));
    }
    let p = t.labels().last().copied().unwrap_or(0) + 1;
    tris.extend([
        [p, tri[0], tri[1]],
        [p, tri[0], tri[2]],
        [p, tri[1], tri[2]],
    ]);
    Ok(ClosedTriangulation::from_triangles(&tris)?)
}

/// Remove a degree-3 vertex, replacing its three triangles by the link
/// triangle.
pub fn remove_cubic_vertex(
    t: &ClosedTriangulation,
    v: VertexId,
) -> Result<ClosedTriangulation, GlueError> {
    if t.degree_of(v) != Some(3) {
        return Err(GlueError::PlacementUnsatisfied(format!(
            "{v} does not have degree 3"
        )));
    }
    let link = t.link_of(v).unwrap();
    let mut tris: Vec<[VertexId; 3]> = t
        .triangles()
        .into_iter()
        .filter(|x| !x.contains(&v))
        .collect();
    tris.push([link[0], link[1], link[2]]);
    Ok(ClosedTriangulation::from_triangles(&tris)?)
}
