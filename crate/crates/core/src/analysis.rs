//! Degree histograms, type classification, ellipticity checks and boundary
//! metrics.

use crate::surface::{Patch, Surface, VertexId};
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

/// Degree histogram plus face numbers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParamVector {
    /// Sparse histogram: degree -> number of vertices of that degree.
    pub alpha: BTreeMap<usize, usize>,
    pub f1: usize,
    pub f2: usize,
    pub f3: usize,
    pub euler: i64,
}

impl ParamVector {
    pub fn alpha_at(&self, d: usize) -> usize {
        self.alpha.get(&d).copied().unwrap_or(0)
    }

    /// Weighted deficiency sum over all degrees.
    pub fn curvature_sum(&self) -> i64 {
        self.alpha
            .iter()
            .map(|(&d, &c)| (6 - d as i64) * c as i64)
            .sum()
    }
}

/// Signature of a patch: type counts, boundary length and boundary
/// composition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PatchSignature {
    pub a3: usize,
    pub a4: usize,
    pub a5: usize,
    pub a6: usize,
    pub b: usize,
    pub beta4: usize,
    pub beta5: usize,
    /// Degrees along the boundary cycle.
    pub boundary_degrees: Vec<usize>,
}

impl PatchSignature {
    pub fn type_tuple(&self) -> (usize, usize, usize) {
        (self.a3, self.a4, self.a5)
    }

    /// Inline notation, e.g. `(1,1,1,2)_4 β4=1 β5=1`.
    pub fn notation(&self) -> String {
        let mut s = format!(
            "({},{},{},{})_{}",
            self.a3, self.a4, self.a5, self.a6, self.b
        );
        if self.beta4 > 0 {
            s.push_str(&format!(" β4={}", self.beta4));
        }
        if self.beta5 > 0 {
            s.push_str(&format!(" β5={}", self.beta5));
        }
        s
    }
}

/// Signature of a closed triangulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ClosedSignature {
    pub a3: usize,
    pub a4: usize,
    pub a5: usize,
    pub n6: usize,
}

impl ClosedSignature {
    pub fn type_tuple(&self) -> (usize, usize, usize) {
        (self.a3, self.a4, self.a5)
    }

    pub fn notation(&self) -> String {
        format!("({},{},{},{})", self.a3, self.a4, self.a5, self.n6)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Signature {
    Closed(ClosedSignature),
    Patch(PatchSignature),
}

impl Signature {
    pub fn notation(&self) -> String {
        match self {
            Signature::Closed(c) => c.notation(),
            Signature::Patch(p) => p.notation(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("not elliptic: vertices {0:?} have degree above six")]
    NotElliptic(Vec<VertexId>),
    #[error("vertex {0} lies on the boundary")]
    VertexOnBoundary(VertexId),
    #[error("degree identity violated: {0}")]
    Identity(String),
}

pub fn degree(surface: &Surface, label: VertexId) -> Result<usize, AnalysisError> {
    let sk = surface.skeleton();
    let v = sk
        .index_of(label)
        .ok_or(AnalysisError::UnknownVertex(label))?;
    Ok(sk.degree(v))
}

/// Histogram and face numbers, with the Euler-side identity asserted:
/// the weighted deficiency sum is 12 for spheres and 6 for discs.
pub fn parameters(surface: &Surface) -> ParamVector {
    let sk = surface.skeleton();
    let mut alpha: BTreeMap<usize, usize> = BTreeMap::new();
    for v in 0..sk.vertex_count() {
        *alpha.entry(sk.degree(v)).or_default() += 1;
    }
    let f1 = sk.vertex_count();
    let f2 = sk.edge_count();
    let f3 = sk.tris.len();
    let euler = f1 as i64 - f2 as i64 + f3 as i64;
    let pv = ParamVector {
        alpha,
        f1,
        f2,
        f3,
        euler,
    };
    let want = match surface {
        Surface::Closed(_) => 12,
        Surface::Patch(_) => 6,
    };
    debug_assert_eq!(pv.curvature_sum(), want, "deficiency sum");
    pv
}

/// Classify an elliptic surface into its type tuple plus N, and for patches
/// the boundary composition as well.
pub fn classify(surface: &Surface) -> Result<Signature, AnalysisError> {
    let sk = surface.skeleton();
    let over: Vec<VertexId> = (0..sk.vertex_count())
        .filter(|&v| sk.degree(v) > 6)
        .map(|v| sk.labels[v])
        .collect();
    if !over.is_empty() {
        return Err(AnalysisError::NotElliptic(over));
    }
    let pv = parameters(surface);
    match surface {
        Surface::Closed(_) => Ok(Signature::Closed(ClosedSignature {
            a3: pv.alpha_at(3),
            a4: pv.alpha_at(4),
            a5: pv.alpha_at(5),
            n6: pv.alpha_at(6),
        })),
        Surface::Patch(p) => {
            let boundary_degrees: Vec<usize> = p
                .boundary_labels()
                .iter()
                .map(|&l| p.degree_of(l).unwrap())
                .collect();
            Ok(Signature::Patch(PatchSignature {
                a3: pv.alpha_at(3),
                a4: pv.alpha_at(4),
                a5: pv.alpha_at(5),
                a6: pv.alpha_at(6),
                b: p.boundary_len(),
                beta4: boundary_degrees.iter().filter(|&&d| d == 4).count(),
                beta5: boundary_degrees.iter().filter(|&&d| d == 5).count(),
                boundary_degrees,
            }))
        }
    }
}

pub fn classify_closed(t: &crate::ClosedTriangulation) -> Result<ClosedSignature, AnalysisError> {
    match classify(&Surface::Closed(t.clone()))? {
        Signature::Closed(c) => Ok(c),
        _ => unreachable!(),
    }
}

pub fn classify_patch(p: &Patch) -> Result<PatchSignature, AnalysisError> {
    match classify(&Surface::Patch(p.clone()))? {
        Signature::Patch(s) => Ok(s),
        _ => unreachable!(),
    }
}

/// Result of a distance query, flagged when the strict peeling process
/// stalls and a breadth-first fallback was used instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InteriorDistance {
    pub distance: usize,
    pub approximate: bool,
}

/// Distance of an interior vertex to the boundary, measured by rounds of
/// corner cutting followed by peeling the belt. Falls back to a
/// breadth-first estimate when the patch becomes too small to process.
pub fn interior_distance(
    patch: &Patch,
    label: VertexId,
) -> Result<InteriorDistance, AnalysisError> {
    if patch.is_on_boundary(label) == Some(true) {
        return Err(AnalysisError::VertexOnBoundary(label));
    }
    if patch.degree_of(label).is_none() {
        return Err(AnalysisError::UnknownVertex(label));
    }
    let mut cur = patch.clone();
    let mut rounds = 0usize;
    loop {
        if cur.is_on_boundary(label) == Some(true) {
            return Ok(InteriorDistance {
                distance: rounds,
                approximate: false,
            });
        }
        match peel_round(&cur) {
            Some(next) if next.degree_of(label).is_some() => {
                rounds += 1;
                cur = next;
            }
            _ => {
                // Strict process stalled; finish with a breadth-first layer
                // count on what is left.
                let extra = bfs_distance(&cur, label);
                return Ok(InteriorDistance {
                    distance: rounds + extra,
                    approximate: true,
                });
            }
        }
    }
}

/// Breadth-first distance of a vertex to the boundary: layers of vertices
/// sharing a triangle with the previous layer.
pub fn bfs_distance(patch: &Patch, label: VertexId) -> usize {
    let sk = &patch.sk;
    let mut dist: Vec<Option<usize>> = (0..sk.vertex_count())
        .map(|v| if sk.on_boundary[v] { Some(0) } else { None })
        .collect();
    let mut frontier: Vec<usize> = (0..sk.vertex_count())
        .filter(|&v| sk.on_boundary[v])
        .collect();
    let mut d = 0;
    while !frontier.is_empty() {
        d += 1;
        let mut next = Vec::new();
        for &v in &frontier {
            for &w in &sk.rot[v] {
                if dist[w].is_none() {
                    dist[w] = Some(d);
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    let v = sk.index_of(label).expect("known vertex");
    dist[v].unwrap_or(0)
}

/// One round of the reduction process: cut every degree-4 boundary corner,
/// then peel the all-degree-6 belt. `None` when the process cannot run.
fn peel_round(patch: &Patch) -> Option<Patch> {
    let mut cur = patch.clone();
    loop {
        let corner = cur
            .boundary_labels()
            .into_iter()
            .find(|&l| cur.degree_of(l) == Some(4));
        match corner {
            Some(c) => match crate::builder::cut_corner(&cur, c) {
                Ok(next) => cur = next,
                Err(_) => return None,
            },
            None => break,
        }
    }
    match crate::builder::peel_belt(&cur) {
        Ok(crate::builder::Disc::Proper(p)) => Some(p),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::parse_face_list;

    fn patch(text: &str) -> Patch {
        match parse_face_list(text).unwrap() {
            Surface::Patch(p) => p,
            _ => panic!("expected patch"),
        }
    }

    fn closed(text: &str) -> Surface {
        let s = parse_face_list(text).unwrap();
        assert!(matches!(s, Surface::Closed(_)));
        s
    }

    #[test]
    fn degrees_follow_the_boundary_convention() {
        let p = Surface::Patch(patch("123"));
        assert_eq!(degree(&p, 1).unwrap(), 4);

        let p = Surface::Patch(patch("124 134 234"));
        assert_eq!(degree(&p, 4).unwrap(), 3);
        assert_eq!(degree(&p, 1).unwrap(), 5);

        let o = closed("123 126 135 156 234 246 345 456");
        for v in 1..=6 {
            assert_eq!(degree(&o, v).unwrap(), 4);
        }
    }

    #[test]
    fn parameters_of_the_tetrahedron() {
        let tet = closed("123 124 134 234");
        let pv = parameters(&tet);
        assert_eq!(pv.alpha_at(3), 4);
        assert_eq!(pv.curvature_sum(), 12);
        assert_eq!((pv.f1, pv.f2, pv.f3), (4, 6, 4));
    }

    #[test]
    fn icosahedron_is_0_0_12() {
        // Gyroelongated bipyramid labeling: apexes 1 and 12, two pentagon
        // rings 2-6 and 7-11.
        let mut tris: Vec<[u32; 3]> = Vec::new();
        for i in 0..5u32 {
            let a = 2 + i;
            let b = 2 + (i + 1) % 5;
            let c = 7 + i;
            let d = 7 + (i + 1) % 5;
            tris.push([1, a, b]);
            tris.push([a, b, d]);
            tris.push([a, c, d]);
            tris.push([12, c, d]);
        }
        let t = crate::ClosedTriangulation::from_triangles(&tris).unwrap();
        let sig = classify_closed(&t).unwrap();
        assert_eq!((sig.a3, sig.a4, sig.a5, sig.n6), (0, 0, 12, 0));
    }

    #[test]
    fn classify_patch_signatures() {
        let p = patch("126 156 236 346 456\nboundary: 12345");
        let sig = classify_patch(&p).unwrap();
        assert_eq!(sig.notation(), "(0,0,6,0)_5 β5=5");

        let p = patch("123 124 134 235");
        let sig = classify_patch(&p).unwrap();
        assert_eq!((sig.a3, sig.a4, sig.a5, sig.a6, sig.b), (1, 1, 1, 2, 4));
        assert_eq!((sig.beta4, sig.beta5), (1, 1));
    }

    #[test]
    fn classify_2_3_0() {
        let s = parse_face_list("123 124 134 235 245 345").unwrap();
        match classify(&s).unwrap() {
            Signature::Closed(c) => {
                assert_eq!((c.a3, c.a4, c.a5, c.n6), (2, 3, 0, 0));
            }
            _ => panic!("closed"),
        }
    }

    #[test]
    fn degree_seven_is_not_elliptic() {
        // Wheel of seven around vertex 1, closed up by a second hub 9.
        let mut tris: Vec<[u32; 3]> = Vec::new();
        for i in 0..7u32 {
            let a = 2 + i;
            let b = 2 + (i + 1) % 7;
            tris.push([1, a, b]);
            tris.push([9, a, b]);
        }
        let t = crate::ClosedTriangulation::from_triangles(&tris).unwrap();
        let err = classify(&Surface::Closed(t)).unwrap_err();
        match err {
            AnalysisError::NotElliptic(vs) => {
                assert!(vs.contains(&1));
                assert!(vs.contains(&9));
            }
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn interior_distance_of_small_patches() {
        // Seven-vertex patch with one interior degree-4 vertex next to the
        // boundary.
        let p = patch("123 145 125 256 236 367");
        let d = interior_distance(&p, 2).unwrap();
        assert_eq!(d.distance, 1);
    }

    #[test]
    fn interior_distance_by_peeling_rounds() {
        // One interior corner two reduction rounds deep.
        let p = crate::builder::build_030(5, 2, 0).unwrap();
        let corner = p
            .interior_labels()
            .into_iter()
            .find(|&v| p.degree_of(v) == Some(4))
            .expect("interior corner");
        let d = interior_distance(&p, corner).unwrap();
        assert_eq!(d.distance, 2);

        let boundary_vertex = p.boundary_labels()[0];
        assert!(matches!(
            interior_distance(&p, boundary_vertex),
            Err(AnalysisError::VertexOnBoundary(_))
        ));
    }

    #[test]
    fn relabeling_preserves_parameters() {
        let s = parse_face_list("123 124 134 235 245 345").unwrap();
        let c = match &s {
            Surface::Closed(c) => c.clone(),
            _ => panic!(),
        };
        let map: std::collections::BTreeMap<u32, u32> = [(1, 9), (2, 4), (3, 17), (4, 2), (5, 30)]
            .into_iter()
            .collect();
        let r = c.relabeled(&map).unwrap();
        assert_eq!(
            parameters(&Surface::Closed(c)).alpha,
            parameters(&Surface::Closed(r)).alpha
        );
    }
}
