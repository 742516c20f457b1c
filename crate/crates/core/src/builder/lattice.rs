//! Triangular-lattice constructions: tessellations, corner truncations,
//! the glued multi-part patches with interior corners, and the seven
//! corner-truncated kinds.

use super::{
    boundary_corners, compacted, expect_signature, generic_enlarge, truncate_corner, BuilderError,
};
use crate::formulas::{binom2, n_030};
use crate::surface::{Patch, VertexId};
use std::collections::BTreeMap;

const STRIDE: u32 = 256;

fn coord(i: usize, j: usize) -> VertexId {
    (i as u32) * STRIDE + (j as u32) + 1
}

/// Triangles of the lattice triangle of side `h`, truncated to rows
/// `0..=rows`.
fn lattice_tris(h: usize, rows: usize) -> Vec<[VertexId; 3]> {
    let mut tris = Vec::new();
    for j in 0..rows.min(h) {
        for i in 0..h {
            if i + j < h {
                tris.push([coord(i, j), coord(i + 1, j), coord(i, j + 1)]);
            }
            if i + j + 2 <= h {
                tris.push([coord(i + 1, j), coord(i, j + 1), coord(i + 1, j + 1)]);
            }
        }
    }
    tris
}

/// Full tessellation of side `h`: three boundary corners of degree four.
pub fn build_tessellation(h: usize) -> Result<Patch, BuilderError> {
    if h < 1 {
        return Err(BuilderError::Domain(format!(
            "side {} must be at least 1",
            h
        )));
    }
    let patch = Patch::from_triangles(&lattice_tris(h, h), None)?;
    let patch = compacted(&patch);
    let n = n_030(h as i64, 0, 0).map_err(|e| BuilderError::Domain(e.to_string()))? as usize;
    let sig = expect_signature(&patch, (0, 3, 0, n), 3 * h)?;
    debug_assert_eq!(sig.beta4, 3);
    Ok(patch)
}

/// Tessellation of side `h` with the sub-tessellation of side `g` removed
/// at one corner, exposing the named boundary ranges.
#[derive(Debug, Clone)]
pub struct Truncation {
    pub patch: Patch,
    pub lower: Vec<VertexId>,
    pub upper: Vec<VertexId>,
    pub left: Vec<VertexId>,
    pub right: Vec<VertexId>,
}

pub fn truncate_tessellation(h: usize, g: usize) -> Result<Truncation, BuilderError> {
    if h < 1 || g == 0 || g >= h {
        return Err(BuilderError::Domain(format!(
            "truncation needs 0 < g < h, got g = {}, h = {}",
            g, h
        )));
    }
    let rows = h - g;
    let raw = Patch::from_triangles(&lattice_tris(h, rows), None)?;
    let map: BTreeMap<VertexId, VertexId> = raw
        .labels()
        .iter()
        .enumerate()
        .map(|(i, &l)| (l, i as VertexId + 1))
        .collect();
    let patch = raw.relabeled(&map)?;
    let lower = (0..=h).map(|i| map[&coord(i, 0)]).collect();
    let upper = (0..=g).map(|i| map[&coord(i, rows)]).collect();
    let left = (0..=rows).map(|j| map[&coord(0, j)]).collect();
    let right = (0..=rows).map(|j| map[&coord(h - j, j)]).collect();
    Ok(Truncation {
        patch,
        lower,
        upper,
        left,
        right,
    })
}

/// Named parts glued along boundary segments. Identified segments must
/// pair off vertex by vertex; gluing unifies them and rebuilds the patch,
/// so every identified edge ends up in exactly two triangles or the glue
/// fails validation.
#[derive(Debug, Clone)]
pub struct AssemblySpec {
    pub parts: Vec<(String, Vec<[VertexId; 3]>)>,
    pub identifications: Vec<Identification>,
}

/// Segment identification between `(part, path)` pairs.
#[derive(Debug, Clone)]
pub struct Identification {
    pub a: (usize, Vec<VertexId>),
    pub b: (usize, Vec<VertexId>),
}

impl AssemblySpec {
    pub fn glue(&self) -> Result<Patch, BuilderError> {
        // Union-find over (part, label) pairs.
        let mut key_of: BTreeMap<(usize, VertexId), usize> = BTreeMap::new();
        let mut parent: Vec<usize> = Vec::new();
        for (pi, (_, tris)) in self.parts.iter().enumerate() {
            for t in tris {
                for &v in t {
                    key_of.entry((pi, v)).or_insert_with(|| {
                        parent.push(parent.len());
                        parent.len() - 1
                    });
                }
            }
        }
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let r = find(parent, parent[x]);
                parent[x] = r;
            }
            parent[x]
        }
        for ident in &self.identifications {
            let (pa, path_a) = (&ident.a.0, &ident.a.1);
            let (pb, path_b) = (&ident.b.0, &ident.b.1);
            if path_a.len() != path_b.len() {
                return Err(BuilderError::SegmentLengthMismatch);
            }
            for (&va, &vb) in path_a.iter().zip(path_b) {
                let ka = *key_of
                    .get(&(*pa, va))
                    .ok_or_else(|| BuilderError::Domain(format!("unknown vertex {va}")))?;
                let kb = *key_of
                    .get(&(*pb, vb))
                    .ok_or_else(|| BuilderError::Domain(format!("unknown vertex {vb}")))?;
                let (ra, rb) = (find(&mut parent, ka), find(&mut parent, kb));
                if ra != rb {
                    parent[ra] = rb;
                }
            }
        }
        // Canonical labels per class, in first-appearance order.
        let mut label_of: BTreeMap<usize, VertexId> = BTreeMap::new();
        let mut next: VertexId = 1;
        let mut tris: Vec<[VertexId; 3]> = Vec::new();
        for (pi, (_, part_tris)) in self.parts.iter().enumerate() {
            for t in part_tris {
                let mut mapped = [0u32; 3];
                for (slot, &v) in mapped.iter_mut().zip(t.iter()) {
                    let root = find(&mut parent, key_of[&(pi, v)]);
                    *slot = *label_of.entry(root).or_insert_with(|| {
                        let l = next;
                        next += 1;
                        l
                    });
                }
                tris.push(mapped);
            }
        }
        Ok(Patch::from_triangles(&tris, None)?)
    }
}

/// The three-corner patch family, keyed by how many corners are interior:
/// `(h, 0, 0)` is the tessellation, `(h, k, 0)` has one interior corner at
/// distance `k`, `(h, k, l)` has interior corners at distances `k >= l`.
pub fn build_030(h: usize, k: usize, l: usize) -> Result<Patch, BuilderError> {
    let n = n_030(h as i64, k as i64, l as i64).map_err(|e| BuilderError::Domain(e.to_string()))?
        as usize;
    if k == 0 && l == 0 {
        return build_tessellation(h);
    }
    if l == 0 {
        let patch = capped_trapezoid(h, k)?;
        let sig = expect_signature(&patch, (0, 3, 0, n), 3 * h)?;
        if sig.beta4 != 2 {
            return Err(BuilderError::SignatureMismatch {
                expected: "two boundary corners".into(),
                got: format!("beta4 = {}", sig.beta4),
            });
        }
        // Boundary parts between the two corners.
        let parts = boundary_part_lengths(&patch);
        let want = {
            let lpar = h - k;
            let mut w = vec![h + lpar, 2 * h - lpar];
            w.sort_unstable();
            w
        };
        let mut got = parts.clone();
        got.sort_unstable();
        if got != want {
            return Err(BuilderError::SignatureMismatch {
                expected: format!("boundary parts {:?}", want),
                got: format!("{:?}", parts),
            });
        }
        return Ok(patch);
    }
    // Two interior corners: push a corner inward l times.
    let base = build_030(h - l, k - l, 0)?;
    let mut cur = base;
    for _ in 0..l {
        cur = generic_enlarge(&cur, 1, 0)?;
    }
    let cur = compacted(&cur);
    let sig = expect_signature(&cur, (0, 3, 0, n), 3 * h)?;
    if sig.beta4 != 1 {
        return Err(BuilderError::SignatureMismatch {
            expected: "one boundary corner".into(),
            got: format!("beta4 = {}", sig.beta4),
        });
    }
    Ok(cur)
}

/// Gaps between consecutive degree-4 boundary vertices.
pub fn boundary_part_lengths(patch: &Patch) -> Vec<usize> {
    let bd = patch.boundary_labels();
    let b = bd.len();
    let corners: Vec<usize> = (0..b)
        .filter(|&i| patch.degree_of(bd[i]) == Some(4))
        .collect();
    if corners.is_empty() {
        return vec![];
    }
    let mut parts = Vec::new();
    for w in 0..corners.len() {
        let from = corners[w];
        let to = corners[(w + 1) % corners.len()];
        parts.push((to + b - from) % b + if corners.len() == 1 { b } else { 0 });
    }
    parts
}

/// Trapezoid of `k` lattice rows capped so that exactly one corner moves
/// inside, to distance `k` from the lower boundary. Assembled from a base,
/// two sediment strips, a two-triangle core and a tessellation top.
fn capped_trapezoid(h: usize, k: usize) -> Result<Patch, BuilderError> {
    if !(k >= 1 && k < h) {
        return Err(BuilderError::Domain(format!(
            "need 1 <= k < h, got k = {}, h = {}",
            k, h
        )));
    }
    let l = h - k;
    if l == 1 {
        // Base rows plus a single flat cap triangle on the top row.
        let mut tris = lattice_tris(k + 2, k);
        tris.push([coord(0, k), coord(1, k), coord(2, k)]);
        let patch = compacted(&Patch::from_triangles(&tris, None)?);
        return Ok(patch);
    }
    let base = lattice_tris(2 * l + k, k);
    let sediment = lattice_tris(l - 1, 1);
    let core: Vec<[VertexId; 3]> = vec![[1, 2, 3], [1, 3, 4]];
    let mut parts = vec![
        ("base".to_string(), base),
        ("left sediment".to_string(), sediment.clone()),
        ("right sediment".to_string(), sediment),
        ("core".to_string(), core),
    ];
    let (ib, isl, isr, ic) = (0usize, 1usize, 2usize, 3usize);
    let seg =
        |f: &dyn Fn(usize) -> VertexId, n: usize| -> Vec<VertexId> { (0..=n).map(f).collect() };
    let mut idents = vec![
        // Base top row, left stretch, onto the left sediment's bottom.
        Identification {
            a: (ib, seg(&|i| coord(i, k), l - 1)),
            b: (isl, seg(&|i| coord(i, 0), l - 1)),
        },
        // Center of the base top row onto the inner core edge pair.
        Identification {
            a: (ib, vec![coord(l - 1, k), coord(l, k), coord(l + 1, k)]),
            b: (ic, vec![1, 2, 3]),
        },
        // Base top row, right stretch, onto the right sediment's bottom.
        Identification {
            a: (ib, seg(&|i| coord(l + 1 + i, k), l - 1)),
            b: (isr, seg(&|i| coord(i, 0), l - 1)),
        },
        // Side edges of the sediments close around the core apex.
        Identification {
            a: (isl, vec![coord(l - 1, 0), coord(l - 2, 1)]),
            b: (ic, vec![1, 4]),
        },
        Identification {
            a: (isr, vec![coord(0, 0), coord(0, 1)]),
            b: (ic, vec![3, 4]),
        },
    ];
    if l >= 3 {
        let it = parts.len();
        parts.push(("top".to_string(), lattice_tris(l - 2, l - 2)));
        // Two sides of the top tessellation land on the sediment tops,
        // both read away from the core apex.
        idents.push(Identification {
            a: (it, seg(&|i| coord(i, 0), l - 2)),
            b: (isl, seg(&|i| coord(l - 2 - i, 1), l - 2)),
        });
        idents.push(Identification {
            a: (it, seg(&|j| coord(0, j), l - 2)),
            b: (isr, seg(&|i| coord(i, 1), l - 2)),
        });
    }
    let spec = AssemblySpec {
        parts,
        identifications: idents,
    };
    Ok(compacted(&spec.glue()?))
}

/// Parameters for the seven corner-truncated kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TruncSpec {
    /// `(0,2,2)` with two boundary corners: tessellation minus one corner.
    Kind1 { h: usize, c: usize },
    /// `(0,2,2)` with one boundary corner.
    Kind2 { h: usize, k: usize, c: usize },
    /// `(0,2,2)` with no boundary corner.
    Kind3 {
        h: usize,
        k: usize,
        l: usize,
        c: usize,
    },
    /// `(0,1,4)` with one boundary corner: tessellation minus two corners.
    Kind4 { h: usize, c1: usize, c2: usize },
    /// `(0,1,4)` with no boundary corner.
    Kind5 {
        h: usize,
        k: usize,
        c1: usize,
        c2: usize,
    },
    /// `(0,0,6)`: tessellation minus all three corners.
    Kind6 {
        h: usize,
        c1: usize,
        c2: usize,
        c3: usize,
    },
    /// `(0,2,2)` with corners alternating 4,5,4,5: the rectangular strip.
    Kind7 { u: usize, v: usize },
}

/// Build one of the truncated kinds and verify its signature against the
/// closed-form count.
pub fn truncate_type(spec: TruncSpec) -> Result<Patch, BuilderError> {
    let bad = |msg: String| Err(BuilderError::Domain(msg));
    let cut_next = |patch: &Patch, c: usize| -> Result<Patch, BuilderError> {
        let corners = boundary_corners(patch);
        let corner = *corners
            .first()
            .ok_or_else(|| BuilderError::Domain("no corner left to cut".into()))?;
        Ok(truncate_corner(patch, corner, c - 1)?.0)
    };
    match spec {
        TruncSpec::Kind1 { h, c } => {
            if !(2 <= c && c <= h) {
                return bad(format!(
                    "kind 1 needs 2 <= c <= h, got c = {}, h = {}",
                    c, h
                ));
            }
            let cut = cut_next(&build_030(h, 0, 0)?, c)?;
            let n = (binom2(h as i64 + 2).unwrap() - binom2(c as i64).unwrap() - 4) as usize;
            let sig = expect_signature(&cut, (0, 2, 2, n), 3 * h - c + 1)?;
            if (sig.beta4, sig.beta5) != (2, 2) {
                return bad(format!(
                    "kind 1 boundary profile: {:?}",
                    (sig.beta4, sig.beta5)
                ));
            }
            Ok(cut)
        }
        TruncSpec::Kind2 { h, k, c } => {
            if !(2 <= c && c + k <= h + 1) {
                return bad(format!("kind 2 needs 2 <= c <= h-k+1, got c = {}", c));
            }
            let cut = cut_next(&build_030(h, k, 0)?, c)?;
            let n =
                (n_030(h as i64, k as i64, 0).unwrap() - binom2(c as i64).unwrap() - 1) as usize;
            let sig = expect_signature(&cut, (0, 2, 2, n), 3 * h - c + 1)?;
            if (sig.beta4, sig.beta5) != (1, 2) {
                return bad(format!(
                    "kind 2 boundary profile: {:?}",
                    (sig.beta4, sig.beta5)
                ));
            }
            Ok(cut)
        }
        TruncSpec::Kind3 { h, k, l, c } => {
            if !(2 <= c && c <= h + 1) {
                return bad(format!("kind 3 needs 2 <= c <= h+1, got c = {}", c));
            }
            let cut = cut_next(&build_030(h, k, l)?, c)?;
            let n = (n_030(h as i64, k as i64, l as i64).unwrap() - binom2(c as i64).unwrap() - 1)
                as usize;
            let sig = expect_signature(&cut, (0, 2, 2, n), 3 * h - c + 1)?;
            if (sig.beta4, sig.beta5) != (0, 2) {
                return bad(format!(
                    "kind 3 boundary profile: {:?}",
                    (sig.beta4, sig.beta5)
                ));
            }
            Ok(cut)
        }
        TruncSpec::Kind4 { h, c1, c2 } => {
            if !(2 <= c1 && 2 <= c2 && (c1 - 1) + (c2 - 1) < h) {
                return bad(format!(
                    "kind 4 needs (c1-1)+(c2-1) < h, got {}, {}",
                    c1, c2
                ));
            }
            let cut = cut_next(&cut_next(&build_030(h, 0, 0)?, c1)?, c2)?;
            let n = (binom2(h as i64 + 2).unwrap()
                - binom2(c1 as i64).unwrap()
                - binom2(c2 as i64).unwrap()
                - 5) as usize;
            let sig = expect_signature(&cut, (0, 1, 4, n), 3 * h - c1 - c2 + 2)?;
            if (sig.beta4, sig.beta5) != (1, 4) {
                return bad(format!(
                    "kind 4 boundary profile: {:?}",
                    (sig.beta4, sig.beta5)
                ));
            }
            Ok(cut)
        }
        TruncSpec::Kind5 { h, k, c1, c2 } => {
            if !(2 <= c1 && 2 <= c2 && (c1 - 1) + (c2 - 1) < h) {
                return bad(format!(
                    "kind 5 needs (c1-1)+(c2-1) < h, got {}, {}",
                    c1, c2
                ));
            }
            let cut = cut_next(&cut_next(&build_030(h, k, 0)?, c1)?, c2)?;
            let n = (n_030(h as i64, k as i64, 0).unwrap()
                - binom2(c1 as i64).unwrap()
                - binom2(c2 as i64).unwrap()
                - 2) as usize;
            let sig = expect_signature(&cut, (0, 1, 4, n), 3 * h - c1 - c2 + 2)?;
            if (sig.beta4, sig.beta5) != (0, 4) {
                return bad(format!(
                    "kind 5 boundary profile: {:?}",
                    (sig.beta4, sig.beta5)
                ));
            }
            Ok(cut)
        }
        TruncSpec::Kind6 { h, c1, c2, c3 } => {
            for (x, y) in [(c1, c2), (c1, c3), (c2, c3)] {
                if x + y < 4 || x + y - 2 >= h {
                    return bad(format!("kind 6 needs ci+cj-2 < h, got {} + {}", x, y));
                }
            }
            let cut = cut_next(&cut_next(&cut_next(&build_030(h, 0, 0)?, c1)?, c2)?, c3)?;
            let n = (binom2(h as i64 + 2).unwrap()
                - binom2(c1 as i64).unwrap()
                - binom2(c2 as i64).unwrap()
                - binom2(c3 as i64).unwrap()
                - 6) as usize;
            let sig = expect_signature(&cut, (0, 0, 6, n), 3 * h - c1 - c2 - c3 + 3)?;
            if (sig.beta4, sig.beta5) != (0, 6) {
                return bad(format!(
                    "kind 6 boundary profile: {:?}",
                    (sig.beta4, sig.beta5)
                ));
            }
            Ok(cut)
        }
        TruncSpec::Kind7 { u, v } => {
            if u < 1 || v < 1 {
                return bad(format!("kind 7 needs u, v >= 1, got {}, {}", u, v));
            }
            let mut tris = Vec::new();
            for j in 0..u {
                for i in 0..v {
                    tris.push([coord(i, j), coord(i + 1, j), coord(i, j + 1)]);
                    tris.push([coord(i + 1, j), coord(i, j + 1), coord(i + 1, j + 1)]);
                }
            }
            let patch = compacted(&Patch::from_triangles(&tris, None)?);
            let n = (u + 1) * (v + 1) - 4;
            let sig = expect_signature(&patch, (0, 2, 2, n), 2 * (u + v))?;
            if (sig.beta4, sig.beta5) != (2, 2) {
                return bad(format!(
                    "kind 7 boundary profile: {:?}",
                    (sig.beta4, sig.beta5)
                ));
            }
            Ok(patch)
        }
    }
}
