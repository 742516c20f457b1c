//! Label-invariant canonical codes for oriented maps, minimized over all
//! root edges and, optionally, over the mirror image.

use super::{ClosedTriangulation, Patch, Skeleton, Surface};
use thiserror::Error;

/// Canonical byte code. Two surfaces of the same kind have equal codes iff
/// they are isomorphic as combinatorial maps (up to reflection when
/// `reflections_identified` is set).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode {
    pub bytes: Vec<u8>,
    pub reflections_identified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsoError {
    #[error("cannot compare a closed triangulation with a patch")]
    KindMismatch,
}

const SEP: u32 = u32::MAX;
const BOUNDARY_MARK: u32 = u32::MAX - 1;

/// Breadth-first traversal code from a root directed edge. `mirror` reads
/// every rotation backwards, which encodes the reflected map.
fn traversal_code(sk: &Skeleton, root: (usize, usize), mirror: bool) -> Vec<u32> {
    let n = sk.vertex_count();
    let mut label = vec![usize::MAX; n];
    let mut entry = vec![usize::MAX; n];
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let (u, v) = root;
    label[u] = 0;
    entry[u] = v;
    order.push(u);
    let mut code: Vec<u32> = Vec::with_capacity(4 * n);
    let mut head = 0usize;
    while head < order.len() {
        let x = order[head];
        head += 1;
        let rot = &sk.rot[x];
        let seq: Vec<usize> = if sk.on_boundary[x] {
            // Boundary fans are paths; their reading direction is fixed by
            // the chirality alone.
            if mirror {
                rot.iter().rev().copied().collect()
            } else {
                rot.clone()
            }
        } else {
            let start = rot
                .iter()
                .position(|&w| w == entry[x])
                .expect("entry in rotation");
            let d = rot.len();
            (0..d)
                .map(|i| {
                    if mirror {
                        rot[(start + d - i) % d]
                    } else {
                        rot[(start + i) % d]
                    }
                })
                .collect()
        };
        if sk.on_boundary[x] {
            code.push(BOUNDARY_MARK);
        }
        for w in seq {
            if label[w] == usize::MAX {
                label[w] = order.len();
                entry[w] = x;
                order.push(w);
            }
            code.push(label[w] as u32);
        }
        code.push(SEP);
    }
    code
}

fn roots_closed(sk: &Skeleton) -> Vec<(usize, usize)> {
    let mut roots = Vec::new();
    for v in 0..sk.vertex_count() {
        for &w in &sk.rot[v] {
            roots.push((v, w));
        }
    }
    roots
}

fn roots_patch(p: &Patch) -> Vec<(usize, usize)> {
    // Any isomorphism maps boundary to boundary, so boundary-directed roots
    // suffice and also quotient by boundary rotations/reflections.
    let b = p.boundary.len();
    let mut roots = Vec::with_capacity(2 * b);
    for i in 0..b {
        roots.push((p.boundary[i], p.boundary[(i + 1) % b]));
        roots.push((p.boundary[(i + 1) % b], p.boundary[i]));
    }
    roots
}

fn min_code(sk: &Skeleton, roots: &[(usize, usize)], identify_reflections: bool) -> Vec<u32> {
    let mut best: Option<Vec<u32>> = None;
    let mirror_opts: &[bool] = if identify_reflections {
        &[false, true]
    } else {
        &[false]
    };
    for &root in roots {
        for &m in mirror_opts {
            let code = traversal_code(sk, root, m);
            if best.as_ref().is_none_or(|b| code < *b) {
                best = Some(code);
            }
        }
    }
    best.expect("at least one root")
}

fn to_bytes(code: &[u32]) -> Vec<u8> {
    let mut out = Vec::with_capacity(code.len() * 4);
    for &c in code {
        out.extend_from_slice(&c.to_be_bytes());
    }
    out
}

impl ClosedTriangulation {
    pub fn canonical_code(&self, identify_reflections: bool) -> CanonicalCode {
        let code = min_code(&self.sk, &roots_closed(&self.sk), identify_reflections);
        CanonicalCode {
            bytes: to_bytes(&code),
            reflections_identified: identify_reflections,
        }
    }

    pub fn is_isomorphic(&self, other: &ClosedTriangulation) -> bool {
        self.canonical_code(true) == other.canonical_code(true)
    }
}

impl Patch {
    pub fn canonical_code(&self, identify_reflections: bool) -> CanonicalCode {
        let code = min_code(&self.sk, &roots_patch(self), identify_reflections);
        CanonicalCode {
            bytes: to_bytes(&code),
            reflections_identified: identify_reflections,
        }
    }

    pub fn is_isomorphic(&self, other: &Patch) -> bool {
        self.canonical_code(true) == other.canonical_code(true)
    }
}

impl Surface {
    pub fn canonical_code(&self, identify_reflections: bool) -> CanonicalCode {
        match self {
            Surface::Closed(c) => c.canonical_code(identify_reflections),
            Surface::Patch(p) => p.canonical_code(identify_reflections),
        }
    }

    pub fn is_isomorphic(&self, other: &Surface) -> Result<bool, IsoError> {
        match (self, other) {
            (Surface::Closed(a), Surface::Closed(b)) => Ok(a.is_isomorphic(b)),
            (Surface::Patch(a), Surface::Patch(b)) => Ok(a.is_isomorphic(b)),
            _ => Err(IsoError::KindMismatch),
        }
    }
}
