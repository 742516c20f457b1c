//! Embedded-triangulation data model: closed sphere triangulations and disc
//! patches as rotation systems over integer vertex ids.

mod canonical;
mod parse;
mod validate;

pub use canonical::CanonicalCode;
pub use parse::{parse_face_list, parse_face_list_raw, serialize_face_list, FaceList, ParseError};
pub use validate::{validate, validate_faces, CheckResult, ValidationReport};

use std::collections::BTreeMap;
use thiserror::Error;

/// External vertex label. Labels 1-9 and 10-35 round-trip through the
/// single-character alphabet `1`-`9`, `A`-`Z`.
pub type VertexId = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("malformed token: {0}")]
    MalformedToken(String),
    #[error("duplicate triangle {0:?}")]
    DuplicateTriangle([VertexId; 3]),
    #[error("edge {0}-{1} lies in three or more triangles")]
    NonManifoldEdge(VertexId, VertexId),
    #[error("triangles around vertex {0} do not form a single fan")]
    BrokenLink(VertexId),
    #[error("triangle set is not connected")]
    Disconnected,
    #[error("boundary edges do not form a single simple cycle")]
    BoundaryNotSingleCycle,
    #[error("declared boundary does not match the inferred boundary cycle")]
    BoundaryMismatch,
    #[error("closed surface is not a sphere (euler characteristic {0})")]
    NotSphere(i64),
    #[error("bounded surface is not a disc (euler characteristic {0})")]
    NotDisc(i64),
    #[error("orientation propagation failed")]
    Unorientable,
    #[error("empty triangle list")]
    Empty,
}

/// Shared internals of both surface kinds. Triangles are stored with a
/// consistent orientation; `rot[v]` is the neighbor sequence around `v`,
/// cyclic for interior vertices and a path for boundary vertices.
#[derive(Debug, Clone)]
pub(crate) struct Skeleton {
    pub labels: Vec<VertexId>,
    pub tris: Vec<[usize; 3]>,
    pub rot: Vec<Vec<usize>>,
    pub on_boundary: Vec<bool>,
}

impl Skeleton {
    pub fn index_of(&self, label: VertexId) -> Option<usize> {
        self.labels.binary_search(&label).ok()
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.rot.iter().map(|r| r.len()).sum::<usize>() / 2
    }

    /// Triangle count a vertex lies in.
    pub fn triangles_at(&self, v: usize) -> usize {
        if self.on_boundary[v] {
            self.rot[v].len() - 1
        } else {
            self.rot[v].len()
        }
    }

    /// Degree under the disc convention: interior vertices count incident
    /// triangles, boundary vertices count incident edges plus two.
    pub fn degree(&self, v: usize) -> usize {
        if self.on_boundary[v] {
            self.rot[v].len() + 2
        } else {
            self.rot[v].len()
        }
    }

    pub fn labeled_tris(&self) -> Vec<[VertexId; 3]> {
        self.tris
            .iter()
            .map(|t| [self.labels[t[0]], self.labels[t[1]], self.labels[t[2]]])
            .collect()
    }

    pub fn are_adjacent(&self, u: usize, v: usize) -> bool {
        self.rot[u].contains(&v)
    }
}

/// Oriented triangulation of the 2-sphere.
#[derive(Debug, Clone)]
pub struct ClosedTriangulation {
    pub(crate) sk: Skeleton,
}

/// Triangulation of a disc with a distinguished boundary cycle.
#[derive(Debug, Clone)]
pub struct Patch {
    pub(crate) sk: Skeleton,
    pub(crate) boundary: Vec<usize>,
}

#[derive(Debug, Clone)]
pub enum Surface {
    Closed(ClosedTriangulation),
    Patch(Patch),
}

impl ClosedTriangulation {
    pub fn from_triangles(tris: &[[VertexId; 3]]) -> Result<Self, BuildError> {
        match Surface::build(&FaceList {
            triangles: tris.to_vec(),
            boundary: None,
        })? {
            Surface::Closed(c) => Ok(c),
            Surface::Patch(_) => Err(BuildError::BoundaryNotSingleCycle),
        }
    }

    pub fn labels(&self) -> &[VertexId] {
        &self.sk.labels
    }

    pub fn triangles(&self) -> Vec<[VertexId; 3]> {
        self.sk.labeled_tris()
    }

    pub fn vertex_count(&self) -> usize {
        self.sk.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.sk.edge_count()
    }

    pub fn triangle_count(&self) -> usize {
        self.sk.tris.len()
    }

    pub fn degree_of(&self, label: VertexId) -> Option<usize> {
        self.sk.index_of(label).map(|v| self.sk.degree(v))
    }

    /// Neighbor labels around `label` in rotation order.
    pub fn link_of(&self, label: VertexId) -> Option<Vec<VertexId>> {
        let v = self.sk.index_of(label)?;
        Some(self.sk.rot[v].iter().map(|&u| self.sk.labels[u]).collect())
    }

    pub fn mirrored(&self) -> Self {
        let tris: Vec<[VertexId; 3]> = self
            .triangles()
            .iter()
            .map(|t| [t[0], t[2], t[1]])
            .collect();
        Self::from_triangles(&tris).expect("mirror of a valid triangulation is valid")
    }

    pub fn relabeled(&self, map: &BTreeMap<VertexId, VertexId>) -> Result<Self, BuildError> {
        let tris: Vec<[VertexId; 3]> = self
            .triangles()
            .iter()
            .map(|t| [map[&t[0]], map[&t[1]], map[&t[2]]])
            .collect();
        Self::from_triangles(&tris)
    }
}

impl Patch {
    pub fn from_triangles(
        tris: &[[VertexId; 3]],
        boundary: Option<&[VertexId]>,
    ) -> Result<Self, BuildError> {
        let fl = FaceList {
            triangles: tris.to_vec(),
            boundary: boundary.map(|b| b.to_vec()),
        };
        match Surface::build(&fl)? {
            Surface::Patch(p) => Ok(p),
            Surface::Closed(_) => Err(BuildError::BoundaryNotSingleCycle),
        }
    }

    pub fn labels(&self) -> &[VertexId] {
        &self.sk.labels
    }

    pub fn triangles(&self) -> Vec<[VertexId; 3]> {
        self.sk.labeled_tris()
    }

    pub fn vertex_count(&self) -> usize {
        self.sk.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.sk.edge_count()
    }

    pub fn triangle_count(&self) -> usize {
        self.sk.tris.len()
    }

    pub fn boundary_len(&self) -> usize {
        self.boundary.len()
    }

    pub fn boundary_labels(&self) -> Vec<VertexId> {
        self.boundary.iter().map(|&v| self.sk.labels[v]).collect()
    }

    pub fn is_on_boundary(&self, label: VertexId) -> Option<bool> {
        self.sk.index_of(label).map(|v| self.sk.on_boundary[v])
    }

    pub fn degree_of(&self, label: VertexId) -> Option<usize> {
        self.sk.index_of(label).map(|v| self.sk.degree(v))
    }

    pub fn interior_labels(&self) -> Vec<VertexId> {
        self.sk
            .labels
            .iter()
            .enumerate()
            .filter(|&(v, _)| !self.sk.on_boundary[v])
            .map(|(_, &l)| l)
            .collect()
    }

    /// Neighbor labels around `label`: cyclic for interior vertices, the
    /// fan path for boundary vertices.
    pub fn link_of(&self, label: VertexId) -> Option<Vec<VertexId>> {
        let v = self.sk.index_of(label)?;
        Some(self.sk.rot[v].iter().map(|&u| self.sk.labels[u]).collect())
    }

    pub fn mirrored(&self) -> Self {
        let tris: Vec<[VertexId; 3]> = self
            .triangles()
            .iter()
            .map(|t| [t[0], t[2], t[1]])
            .collect();
        Self::from_triangles(&tris, None).expect("mirror of a valid patch is valid")
    }

    pub fn relabeled(&self, map: &BTreeMap<VertexId, VertexId>) -> Result<Self, BuildError> {
        let tris: Vec<[VertexId; 3]> = self
            .triangles()
            .iter()
            .map(|t| [map[&t[0]], map[&t[1]], map[&t[2]]])
            .collect();
        Self::from_triangles(&tris, None)
    }

    /// Fresh label strictly larger than everything in use.
    pub fn next_label(&self) -> VertexId {
        self.sk.labels.last().copied().unwrap_or(0) + 1
    }
}

impl Surface {
    pub fn build(fl: &FaceList) -> Result<Surface, BuildError> {
        build_surface(fl)
    }

    pub fn triangles(&self) -> Vec<[VertexId; 3]> {
        match self {
            Surface::Closed(c) => c.triangles(),
            Surface::Patch(p) => p.triangles(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            Surface::Closed(c) => c.vertex_count(),
            Surface::Patch(p) => p.vertex_count(),
        }
    }

    pub fn as_closed(&self) -> Option<&ClosedTriangulation> {
        match self {
            Surface::Closed(c) => Some(c),
            _ => None,
        }
    }

    pub fn as_patch(&self) -> Option<&Patch> {
        match self {
            Surface::Patch(p) => Some(p),
            _ => None,
        }
    }

    pub(crate) fn skeleton(&self) -> &Skeleton {
        match self {
            Surface::Closed(c) => &c.sk,
            Surface::Patch(p) => &p.sk,
        }
    }
}

fn build_surface(fl: &FaceList) -> Result<Surface, BuildError> {
    if fl.triangles.is_empty() {
        return Err(BuildError::Empty);
    }
    let mut labels: Vec<VertexId> = fl.triangles.iter().flatten().copied().collect();
    labels.sort_unstable();
    labels.dedup();
    let idx: BTreeMap<VertexId, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let n = labels.len();

    let mut tris: Vec<[usize; 3]> = Vec::with_capacity(fl.triangles.len());
    let mut seen = std::collections::HashSet::new();
    for t in &fl.triangles {
        if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
            return Err(BuildError::MalformedToken(format!("{:?}", t)));
        }
        let mut key = *t;
        key.sort_unstable();
        if !seen.insert(key) {
            return Err(BuildError::DuplicateTriangle(key));
        }
        tris.push([idx[&t[0]], idx[&t[1]], idx[&t[2]]]);
    }

    // Edge table: unordered pair -> incident triangles.
    let mut edges: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (ti, t) in tris.iter().enumerate() {
        for k in 0..3 {
            let (a, b) = (t[k], t[(k + 1) % 3]);
            let key = (a.min(b), a.max(b));
            let e = edges.entry(key).or_default();
            if e.len() >= 2 {
                return Err(BuildError::NonManifoldEdge(labels[key.0], labels[key.1]));
            }
            e.push(ti);
        }
    }

    orient(&mut tris, &edges)?;

    // Rotations from oriented triangles: at vertex a of (a,b,c), c follows b.
    let mut succ: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new(); n];
    for t in &tris {
        for k in 0..3 {
            let (a, b, c) = (t[k], t[(k + 1) % 3], t[(k + 2) % 3]);
            if succ[a].insert(b, c).is_some() {
                return Err(BuildError::BrokenLink(labels[a]));
            }
        }
    }
    let mut rot: Vec<Vec<usize>> = Vec::with_capacity(n);
    let mut on_boundary = vec![false; n];
    for v in 0..n {
        let map = &succ[v];
        if map.is_empty() {
            return Err(BuildError::BrokenLink(labels[v]));
        }
        let targets: std::collections::HashSet<usize> = map.values().copied().collect();
        let starts: Vec<usize> = map
            .keys()
            .filter(|k| !targets.contains(k))
            .copied()
            .collect();
        let (start, is_path) = match starts.len() {
            0 => (*map.keys().next().unwrap(), false),
            1 => (starts[0], true),
            _ => return Err(BuildError::BrokenLink(labels[v])),
        };
        let mut seq = vec![start];
        let mut cur = start;
        while let Some(&nx) = succ[v].get(&cur) {
            if nx == start {
                break;
            }
            seq.push(nx);
            if seq.len() > map.len() + 1 {
                return Err(BuildError::BrokenLink(labels[v]));
            }
            cur = nx;
        }
        let nbr_count = if is_path { map.len() + 1 } else { map.len() };
        if seq.len() != nbr_count {
            return Err(BuildError::BrokenLink(labels[v]));
        }
        on_boundary[v] = is_path;
        rot.push(seq);
    }

    let bd_edges: Vec<(usize, usize)> = edges
        .iter()
        .filter(|(_, ts)| ts.len() == 1)
        .map(|(&e, _)| e)
        .collect();

    let sk = Skeleton {
        labels,
        tris,
        rot,
        on_boundary,
    };

    if bd_edges.is_empty() {
        let f1 = sk.vertex_count() as i64;
        let f2 = sk.edge_count() as i64;
        let f3 = sk.tris.len() as i64;
        if f1 - f2 + f3 != 2 {
            return Err(BuildError::NotSphere(f1 - f2 + f3));
        }
        if fl.boundary.is_some() {
            return Err(BuildError::BoundaryMismatch);
        }
        return Ok(Surface::Closed(ClosedTriangulation { sk }));
    }

    // Boundary cycle: the unique triangle on a boundary edge traverses it in
    // one direction; walking against that direction closes the cycle.
    let mut bd_succ: BTreeMap<usize, usize> = BTreeMap::new();
    for &(a, b) in &bd_edges {
        // Find traversal direction in the incident triangle.
        let ti = edges[&(a, b)][0];
        let t = &sk.tris[ti];
        let k = (0..3)
            .find(|&k| (t[k] == a && t[(k + 1) % 3] == b) || (t[k] == b && t[(k + 1) % 3] == a))
            .unwrap();
        let (from, to) = (t[k], t[(k + 1) % 3]);
        if bd_succ.insert(to, from).is_some() {
            return Err(BuildError::BoundaryNotSingleCycle);
        }
    }
    let start = *bd_succ.keys().next().unwrap();
    let mut boundary = vec![start];
    let mut cur = start;
    loop {
        let nx = *bd_succ
            .get(&cur)
            .ok_or(BuildError::BoundaryNotSingleCycle)?;
        if nx == start {
            break;
        }
        boundary.push(nx);
        if boundary.len() > bd_edges.len() {
            return Err(BuildError::BoundaryNotSingleCycle);
        }
        cur = nx;
    }
    if boundary.len() != bd_edges.len() || boundary.len() < 3 {
        return Err(BuildError::BoundaryNotSingleCycle);
    }
    // A single boundary cycle with proper fans still allows positive
    // genus; the Euler count pins the disc.
    {
        let f1 = sk.vertex_count() as i64;
        let f2 = sk.edge_count() as i64;
        let f3 = sk.tris.len() as i64;
        if f1 - f2 + f3 != 1 {
            return Err(BuildError::NotDisc(f1 - f2 + f3));
        }
    }
    let on_cycle: std::collections::HashSet<usize> = boundary.iter().copied().collect();
    for v in 0..sk.vertex_count() {
        if sk.on_boundary[v] != on_cycle.contains(&v) {
            return Err(BuildError::BoundaryNotSingleCycle);
        }
    }

    if let Some(declared) = &fl.boundary {
        let decl: Option<Vec<usize>> = declared.iter().map(|l| sk.index_of(*l)).collect();
        let decl = decl.ok_or(BuildError::BoundaryMismatch)?;
        if !cyclic_equivalent(&decl, &boundary) {
            return Err(BuildError::BoundaryMismatch);
        }
    }

    Ok(Surface::Patch(Patch { sk, boundary }))
}

/// Flip triangles so that every interior edge is traversed in opposite
/// directions by its two triangles. Also rejects disconnected inputs.
fn orient(
    tris: &mut [[usize; 3]],
    edges: &BTreeMap<(usize, usize), Vec<usize>>,
) -> Result<(), BuildError> {
    let m = tris.len();
    let mut seen = vec![false; m];
    let mut flip = vec![false; m];
    let mut queue = std::collections::VecDeque::new();
    seen[0] = true;
    queue.push_back(0usize);
    let mut visited = 1usize;
    while let Some(ti) = queue.pop_front() {
        let t = oriented(&tris[ti], flip[ti]);
        for k in 0..3 {
            let (a, b) = (t[k], t[(k + 1) % 3]);
            let key = (a.min(b), a.max(b));
            for &tj in &edges[&key] {
                if tj == ti {
                    continue;
                }
                let u = oriented(&tris[tj], flip[tj]);
                // tj must traverse the shared edge b -> a.
                let same_dir = (0..3).any(|k| u[k] == a && u[(k + 1) % 3] == b);
                if !seen[tj] {
                    seen[tj] = true;
                    visited += 1;
                    if same_dir {
                        flip[tj] = !flip[tj];
                    }
                    queue.push_back(tj);
                } else if same_dir {
                    return Err(BuildError::Unorientable);
                }
            }
        }
    }
    if visited != m {
        return Err(BuildError::Disconnected);
    }
    for (ti, f) in flip.iter().enumerate() {
        if *f {
            tris[ti].swap(1, 2);
        }
    }
    Ok(())
}

fn oriented(t: &[usize; 3], flip: bool) -> [usize; 3] {
    if flip {
        [t[0], t[2], t[1]]
    } else {
        *t
    }
}

/// Equality of cyclic sequences up to rotation and reflection.
pub(crate) fn cyclic_equivalent(a: &[usize], b: &[usize]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let n = a.len();
    for off in 0..n {
        if (0..n).all(|i| a[i] == b[(i + off) % n]) {
            return true;
        }
        if (0..n).all(|i| a[i] == b[(n + off - i) % n]) {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn tetrahedron() -> ClosedTriangulation {
        ClosedTriangulation::from_triangles(&[[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]]).unwrap()
    }

    #[test]
    fn tetrahedron_builds_closed() {
        let t = tetrahedron();
        assert_eq!(t.vertex_count(), 4);
        assert_eq!(t.edge_count(), 6);
        assert_eq!(t.triangle_count(), 4);
        for &v in t.labels() {
            assert_eq!(t.degree_of(v), Some(3));
        }
    }

    #[test]
    fn single_triangle_is_a_patch() {
        let p = Patch::from_triangles(&[[1, 2, 3]], None).unwrap();
        assert_eq!(p.boundary_len(), 3);
        assert_eq!(p.triangle_count(), 1);
        for &v in &[1, 2, 3] {
            assert_eq!(p.degree_of(v), Some(4));
        }
    }

    #[test]
    fn two_triangles_share_an_edge() {
        let p = Patch::from_triangles(&[[1, 2, 3], [1, 2, 4]], None).unwrap();
        assert_eq!(p.boundary_len(), 4);
        let bd = p.boundary_labels();
        assert!(cyclic_equivalent(
            &bd.iter().map(|&l| l as usize).collect::<Vec<_>>(),
            &[1, 3, 2, 4]
        ));
    }

    #[test]
    fn non_manifold_edge_rejected() {
        let err = Surface::build(&FaceList {
            triangles: vec![[1, 2, 3], [1, 2, 4], [1, 2, 5], [1, 3, 4], [1, 3, 5]],
            boundary: None,
        })
        .unwrap_err();
        assert_eq!(err, BuildError::NonManifoldEdge(1, 2));
    }

    #[test]
    fn disconnected_rejected() {
        let err = Surface::build(&FaceList {
            triangles: vec![[1, 2, 3], [4, 5, 6]],
            boundary: None,
        })
        .unwrap_err();
        assert_eq!(err, BuildError::Disconnected);
    }

    #[test]
    fn punctured_torus_is_not_a_patch() {
        // Fourteen triangles on eight vertices with one boundary square:
        // every fan is proper but the Euler count is -1.
        let tris = [
            [1, 2, 5],
            [1, 4, 6],
            [1, 5, 7],
            [1, 6, 8],
            [1, 7, 8],
            [2, 3, 8],
            [2, 5, 8],
            [3, 4, 7],
            [3, 6, 7],
            [3, 6, 8],
            [4, 5, 6],
            [4, 5, 8],
            [4, 7, 8],
            [5, 6, 7],
        ];
        assert_eq!(
            Surface::build(&FaceList {
                triangles: tris.to_vec(),
                boundary: None
            })
            .unwrap_err(),
            BuildError::NotDisc(-1)
        );
    }

    #[test]
    fn declared_boundary_checked_cyclically() {
        assert!(Patch::from_triangles(&[[1, 2, 3], [1, 2, 4]], Some(&[1, 3, 2, 4])).is_ok());
        assert!(Patch::from_triangles(&[[1, 2, 3], [1, 2, 4]], Some(&[4, 2, 3, 1])).is_ok());
        assert_eq!(
            Patch::from_triangles(&[[1, 2, 3], [1, 2, 4]], Some(&[1, 2, 3, 4])).unwrap_err(),
            BuildError::BoundaryMismatch
        );
    }
}
