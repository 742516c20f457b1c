//! Fullering refinements: the face subdivision tripling the triangle count
//! and the edge subdivision quadrupling it, both preserving every degree
//! other than six.

use crate::surface::{BuildError, ClosedTriangulation, Patch, VertexId};
use std::collections::BTreeMap;

/// Face fullering: one new vertex per triangle, triangles spanned by each
/// shared edge's endpoints and the two new vertices. `f1` grows by `f3`.
pub fn face_fullering(t: &ClosedTriangulation) -> Result<ClosedTriangulation, BuildError> {
    let tris = t.triangles();
    let mut next = t.labels().last().copied().unwrap_or(0) + 1;
    let centers: Vec<VertexId> = tris
        .iter()
        .map(|_| {
            let l = next;
            next += 1;
            l
        })
        .collect();
    let mut edge_tris: BTreeMap<(VertexId, VertexId), Vec<usize>> = BTreeMap::new();
    for (ti, t) in tris.iter().enumerate() {
        for k in 0..3 {
            let (a, b) = (t[k], t[(k + 1) % 3]);
            edge_tris.entry((a.min(b), a.max(b))).or_default().push(ti);
        }
    }
    let mut out = Vec::with_capacity(3 * tris.len());
    for (&(a, b), ts) in &edge_tris {
        let (s, u) = (ts[0], ts[1]);
        out.push([a, centers[s], centers[u]]);
        out.push([b, centers[s], centers[u]]);
    }
    ClosedTriangulation::from_triangles(&out)
}

fn midpoint_table(
    tris: &[[VertexId; 3]],
    first_fresh: VertexId,
) -> BTreeMap<(VertexId, VertexId), VertexId> {
    let mut mid: BTreeMap<(VertexId, VertexId), VertexId> = BTreeMap::new();
    let mut next = first_fresh;
    for t in tris {
        for k in 0..3 {
            let (a, b) = (t[k], t[(k + 1) % 3]);
            mid.entry((a.min(b), a.max(b))).or_insert_with(|| {
                let l = next;
                next += 1;
                l
            });
        }
    }
    mid
}

fn subdivided(
    tris: &[[VertexId; 3]],
    mid: &BTreeMap<(VertexId, VertexId), VertexId>,
) -> Vec<[VertexId; 3]> {
    let m = |a: VertexId, b: VertexId| mid[&(a.min(b), a.max(b))];
    let mut out = Vec::with_capacity(4 * tris.len());
    for t in tris {
        let [a, b, c] = *t;
        out.push([a, m(a, b), m(a, c)]);
        out.push([b, m(a, b), m(b, c)]);
        out.push([c, m(a, c), m(b, c)]);
        out.push([m(a, b), m(b, c), m(a, c)]);
    }
    out
}

/// Edge fullering of a closed triangulation: one new vertex per edge.
pub fn edge_fullering(t: &ClosedTriangulation) -> Result<ClosedTriangulation, BuildError> {
    let tris = t.triangles();
    let mid = midpoint_table(&tris, t.labels().last().copied().unwrap_or(0) + 1);
    ClosedTriangulation::from_triangles(&subdivided(&tris, &mid))
}

/// Edge fullering of a patch: the boundary doubles in length.
pub fn edge_fullering_patch(p: &Patch) -> Result<Patch, BuildError> {
    let tris = p.triangles();
    let mid = midpoint_table(&tris, p.next_label());
    Patch::from_triangles(&subdivided(&tris, &mid), None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{classify_closed, classify_patch};
    use crate::catalog;

    #[test]
    fn face_fullering_of_the_tetrahedron() {
        let tet = catalog::closed("3.19/(4,0,0,0)");
        let out = face_fullering(&tet).unwrap();
        assert_eq!(out.vertex_count(), 8);
        assert_eq!(out.edge_count(), 18);
        assert_eq!(out.triangle_count(), 12);
        let sig = classify_closed(&out).unwrap();
        assert_eq!((sig.a3, sig.a4, sig.a5, sig.n6), (4, 0, 0, 4));
    }

    #[test]
    fn face_fullering_of_the_octahedron() {
        let oct = catalog::closed("3.7/(0,6,0,0)");
        let out = face_fullering(&oct).unwrap();
        let sig = classify_closed(&out).unwrap();
        assert_eq!((sig.a3, sig.a4, sig.a5, sig.n6), (0, 6, 0, 8));
        assert_eq!(out.vertex_count(), 14);
    }

    #[test]
    fn edge_fullering_of_the_tetrahedron() {
        let tet = catalog::closed("3.19/(4,0,0,0)");
        let out = edge_fullering(&tet).unwrap();
        let sig = classify_closed(&out).unwrap();
        assert_eq!((sig.a3, sig.a4, sig.a5, sig.n6), (4, 0, 0, 6));
        assert_eq!(out.vertex_count(), 10);
        assert_eq!(out.edge_count(), 24);
        assert_eq!(out.triangle_count(), 16);
    }

    #[test]
    fn edge_fullering_of_a_patch_doubles_the_boundary() {
        let p = catalog::patch("2.4/(1,0,3,7)_6");
        let out = edge_fullering_patch(&p).unwrap();
        let sig = classify_patch(&out).unwrap();
        assert_eq!((sig.a3, sig.a4, sig.a5, sig.a6, sig.b), (1, 0, 3, 31, 12));
    }
}
