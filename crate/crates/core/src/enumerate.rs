//! Isomorph-free exhaustive generation of sphere triangulations and of
//! small patches, used as the independent oracle for existence and
//! nonexistence claims.

use crate::analysis::{classify_closed, classify_patch, ClosedSignature};
use crate::surface::{CanonicalCode, ClosedTriangulation, Patch, VertexId};
use rayon::prelude::*;
use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("requested size {0} exceeds the configured cap {1}")]
    CapExceeded(usize, usize),
    #[error("size must be at least {0}")]
    TooSmall(usize),
}

#[derive(Debug, Clone, Default)]
pub struct SearchStats {
    pub candidates: u64,
    pub duplicates: u64,
}

#[derive(Debug)]
pub struct EnumerationResult<T> {
    pub n: usize,
    pub objects: Vec<T>,
    pub codes: Vec<CanonicalCode>,
    pub elapsed_ms: u128,
    pub stats: SearchStats,
}

impl EnumerationResult<ClosedTriangulation> {
    /// Tally of elliptic objects by signature.
    pub fn tally(&self) -> BTreeMap<ClosedSignature, usize> {
        let mut out = BTreeMap::new();
        for t in &self.objects {
            if let Ok(sig) = classify_closed(t) {
                *out.entry(sig).or_default() += 1;
            }
        }
        out
    }
}

/// Split a vertex along two of its fan corners: the inverse of an edge
/// contraction. Applied over all vertices and corner pairs this expands a
/// sphere triangulation on `n` vertices to candidates on `n + 1`.
fn vertex_splits(t: &ClosedTriangulation) -> Vec<ClosedTriangulation> {
    let fresh = t.labels().last().copied().unwrap_or(0) + 1;
    let mut out = Vec::new();
    for &v in t.labels() {
        let link = t.link_of(v).unwrap();
        let d = link.len();
        for i in 0..d {
            for j in i + 1..d {
                // Fan triangles from position j around to position i stay
                // with the new vertex.
                let mut tris: Vec<[VertexId; 3]> = Vec::with_capacity(t.triangle_count() + 2);
                for tr in t.triangles() {
                    if !tr.contains(&v) {
                        tris.push(tr);
                    }
                }
                for s in 0..d {
                    let (a, b) = (link[s], link[(s + 1) % d]);
                    let keep_old = (i..j).contains(&s);
                    let owner = if keep_old { v } else { fresh };
                    tris.push([owner, a, b]);
                }
                tris.push([v, fresh, link[i]]);
                tris.push([v, fresh, link[j]]);
                if let Ok(new_t) = ClosedTriangulation::from_triangles(&tris) {
                    out.push(new_t);
                }
            }
        }
    }
    out
}

/// Every sphere triangulation on `n` vertices, one per isomorphism class
/// (reflections identified), generated level by level from the
/// tetrahedron by vertex splitting.
pub fn enumerate_closed(
    n: usize,
    elliptic_only: bool,
    cap: usize,
) -> Result<EnumerationResult<ClosedTriangulation>, EnumError> {
    if n > cap {
        return Err(EnumError::CapExceeded(n, cap));
    }
    if n < 4 {
        return Err(EnumError::TooSmall(4));
    }
    let start = Instant::now();
    let mut stats = SearchStats::default();
    let tet =
        ClosedTriangulation::from_triangles(&[[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]]).unwrap();
    let mut level: BTreeMap<CanonicalCode, ClosedTriangulation> =
        [(tet.canonical_code(true), tet)].into_iter().collect();
    for _ in 4..n {
        let expansions: Vec<(CanonicalCode, ClosedTriangulation)> = level
            .par_iter()
            .flat_map(|(_, t)| {
                vertex_splits(t)
                    .into_iter()
                    .map(|s| (s.canonical_code(true), s))
                    .collect::<Vec<_>>()
            })
            .collect();
        stats.candidates += expansions.len() as u64;
        let mut next: BTreeMap<CanonicalCode, ClosedTriangulation> = BTreeMap::new();
        for (code, t) in expansions {
            if next.insert(code, t).is_some() {
                stats.duplicates += 1;
            }
        }
        level = next;
    }
    let mut objects: Vec<ClosedTriangulation> = Vec::new();
    let mut codes = Vec::new();
    for (code, t) in level {
        if elliptic_only && t.labels().iter().any(|&v| t.degree_of(v).unwrap() > 6) {
            continue;
        }
        codes.push(code);
        objects.push(t);
    }
    Ok(EnumerationResult {
        n,
        objects,
        codes,
        elapsed_ms: start.elapsed().as_millis(),
        stats,
    })
}

/// Reference generator: plain backtracking over triangle sets with the
/// triangle 1-2-3 pinned, deduplicated by canonical code. Exponential, for
/// cross-validation at small sizes only.
pub fn enumerate_closed_naive(
    n: usize,
) -> Result<EnumerationResult<ClosedTriangulation>, EnumError> {
    if n < 4 {
        return Err(EnumError::TooSmall(4));
    }
    let start = Instant::now();
    let target_tris = 2 * n - 4;
    let mut stats = SearchStats::default();
    let mut found: BTreeMap<CanonicalCode, ClosedTriangulation> = BTreeMap::new();

    #[derive(Clone)]
    struct State {
        tris: Vec<[u32; 3]>,
        edge_count: BTreeMap<(u32, u32), u8>,
        max_used: u32,
    }
    fn open_edge(st: &State) -> Option<(u32, u32)> {
        st.edge_count
            .iter()
            .filter(|(_, &c)| c == 1)
            .map(|(&e, _)| e)
            .next()
    }
    fn feasible(st: &State, tri: [u32; 3]) -> bool {
        let mut s = tri;
        s.sort_unstable();
        for k in 0..3 {
            let (a, b) = (s[k], s[(k + 1) % 3]);
            let key = (a.min(b), a.max(b));
            if st.edge_count.get(&key).copied().unwrap_or(0) >= 2 {
                return false;
            }
        }
        !st.tris.iter().any(|t| {
            let mut x = *t;
            x.sort_unstable();
            x == s
        })
    }
    fn rec(
        st: &mut State,
        n: u32,
        target: usize,
        found: &mut BTreeMap<CanonicalCode, ClosedTriangulation>,
        stats: &mut SearchStats,
    ) {
        if st.tris.len() > target {
            return;
        }
        let Some((u, v)) = open_edge(st) else {
            // Closed: accept if complete.
            if st.tris.len() == target && st.max_used == n {
                stats.candidates += 1;
                if let Ok(t) = ClosedTriangulation::from_triangles(&st.tris) {
                    let code = t.canonical_code(true);
                    if found.insert(code, t).is_some() {
                        stats.duplicates += 1;
                    }
                }
            }
            return;
        };
        if st.tris.len() == target {
            return;
        }
        let upper = (st.max_used + 1).min(n);
        for w in 1..=upper {
            if w == u || w == v {
                continue;
            }
            let tri = [u, v, w];
            if !feasible(st, tri) {
                continue;
            }
            let mut next = st.clone();
            next.tris.push(tri);
            next.max_used = next.max_used.max(w);
            for k in 0..3 {
                let (a, b) = (tri[k], tri[(k + 1) % 3]);
                *next.edge_count.entry((a.min(b), a.max(b))).or_default() += 1;
            }
            rec(&mut next, n, target, found, stats);
        }
    }

    let mut st = State {
        tris: vec![[1, 2, 3]],
        edge_count: BTreeMap::new(),
        max_used: 3,
    };
    for e in [(1, 2), (1, 3), (2, 3)] {
        st.edge_count.insert(e, 1);
    }
    rec(&mut st, n as u32, target_tris, &mut found, &mut stats);
    let (codes, objects) = found.into_iter().unzip();
    Ok(EnumerationResult {
        n,
        objects,
        codes,
        elapsed_ms: start.elapsed().as_millis(),
        stats,
    })
}

/// Exhaustive generation of patches with a fixed boundary length, up to a
/// vertex cap, one object per isomorphism class. With a type filter the
/// search prunes on the elliptic degree bound.
pub fn enumerate_patches(
    b: usize,
    max_f1: usize,
    type_filter: Option<(usize, usize, usize)>,
    cap: usize,
) -> Result<EnumerationResult<Patch>, EnumError> {
    if b > cap {
        return Err(EnumError::CapExceeded(b, cap));
    }
    if b < 3 {
        return Err(EnumError::TooSmall(3));
    }
    let start = Instant::now();
    let mut stats = SearchStats::default();
    let elliptic = type_filter.is_some();

    // Boundary cycle pinned to 1..b; interior vertices appear in increasing
    // order. Cycle edges need one triangle, everything else two.
    #[derive(Clone)]
    struct State {
        tris: Vec<[u32; 3]>,
        edge_count: BTreeMap<(u32, u32), u8>,
        tri_at: Vec<u8>,
        edges_at: Vec<u8>,
        max_used: u32,
    }
    let bb = b as u32;
    let cycle_edge = |a: u32, c: u32| -> bool {
        if a > bb || c > bb {
            return false;
        }
        (a % bb + 1 == c) || (c % bb + 1 == a)
    };

    let mut found: BTreeMap<CanonicalCode, Patch> = BTreeMap::new();
    let mut stack: Vec<State> = vec![State {
        tris: Vec::new(),
        edge_count: BTreeMap::new(),
        tri_at: vec![0; max_f1 + 1],
        edges_at: vec![0; max_f1 + 1],
        max_used: bb,
    }];
    // Seed the boundary cycle edges with count zero so they are "open".
    {
        let st = &mut stack[0];
        for i in 1..=bb {
            let j = i % bb + 1;
            st.edge_count.insert((i.min(j), i.max(j)), 0);
        }
        // Boundary vertices each start with their two cycle edges.
        for i in 1..=bb {
            st.edges_at[i as usize] = 2;
        }
    }

    while let Some(st) = stack.pop() {
        // Smallest unsatisfied edge: cycle edges need 1, used edges need 2.
        let open = st
            .edge_count
            .iter()
            .find(
                |(&(a, c), &cnt)| {
                    if cycle_edge(a, c) {
                        cnt < 1
                    } else {
                        cnt == 1
                    }
                },
            )
            .map(|(&e, _)| e);
        let Some((u, v)) = open else {
            stats.candidates += 1;
            // Cheap necessary conditions before the full build: disc Euler
            // count and a fan count at every vertex (interior fans close
            // into cycles, boundary fans stay paths).
            let f1 = st.max_used as usize;
            let f2 = st.edge_count.values().filter(|&&c| c > 0).count();
            let f3 = st.tris.len();
            if f1 + f3 != f2 + 1 {
                continue;
            }
            let fans_ok = (1..=st.max_used).all(|x| {
                let xi = x as usize;
                let want = if x <= bb {
                    st.edges_at[xi].saturating_sub(1)
                } else {
                    st.edges_at[xi]
                };
                st.tri_at[xi] == want
            });
            if !fans_ok {
                continue;
            }
            if st.max_used as usize <= max_f1 {
                let bd: Vec<u32> = (1..=bb).collect();
                if let Ok(p) = Patch::from_triangles(&st.tris, Some(&bd)) {
                    if let Some(filter) = type_filter {
                        match classify_patch(&p) {
                            Ok(sig) if sig.type_tuple() == filter => {}
                            _ => continue,
                        }
                    }
                    let code = p.canonical_code(true);
                    if found.insert(code, p).is_some() {
                        stats.duplicates += 1;
                    }
                }
            }
            continue;
        };
        let upper = (st.max_used + 1).min(max_f1 as u32);
        for w in 1..=upper {
            if w == u || w == v {
                continue;
            }
            let tri = {
                let mut t = [u, v, w];
                t.sort_unstable();
                t
            };
            if st.tris.contains(&tri) {
                continue;
            }
            let mut ok = true;
            for k in 0..3 {
                let (a, c) = (tri[k].min(tri[(k + 1) % 3]), tri[k].max(tri[(k + 1) % 3]));
                let cnt = st.edge_count.get(&(a, c)).copied().unwrap_or(0);
                let limit = if cycle_edge(a, c) { 1 } else { 2 };
                if cnt >= limit {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            if elliptic {
                // Degree caps: interior vertices at most six triangles,
                // boundary vertices at most four incident edges.
                let mut caps_ok = true;
                for &x in &tri {
                    let xi = x as usize;
                    let new_tris = st.tri_at[xi] + 1;
                    if x > bb && new_tris > 6 {
                        caps_ok = false;
                        break;
                    }
                    let mut new_edges = st.edges_at[xi];
                    for &y in &tri {
                        if y == x {
                            continue;
                        }
                        let key = (x.min(y), x.max(y));
                        if st.edge_count.get(&key).copied().unwrap_or(0) == 0
                            && !(cycle_edge(key.0, key.1))
                        {
                            new_edges += 1;
                        }
                    }
                    let cap_edges = if x <= bb { 4 } else { 6 };
                    if new_edges > cap_edges {
                        caps_ok = false;
                        break;
                    }
                }
                if !caps_ok {
                    continue;
                }
            }
            let mut next = st.clone();
            next.tris.push(tri);
            next.max_used = next.max_used.max(w);
            next.tri_at[u as usize] += 1;
            next.tri_at[v as usize] += 1;
            next.tri_at[w as usize] += 1;
            for k in 0..3 {
                let key = (tri[k].min(tri[(k + 1) % 3]), tri[k].max(tri[(k + 1) % 3]));
                let entry = next.edge_count.entry(key).or_insert(0);
                if *entry == 0 && !cycle_edge(key.0, key.1) {
                    next.edges_at[key.0 as usize] += 1;
                    next.edges_at[key.1 as usize] += 1;
                }
                *entry += 1;
            }
            stack.push(next);
        }
    }
    let (codes, objects) = found.into_iter().unzip();
    Ok(EnumerationResult {
        n: b,
        objects,
        codes,
        elapsed_ms: start.elapsed().as_millis(),
        stats,
    })
}

/// Existence verdict for a closed type.
#[derive(Debug, Clone)]
pub enum Existence {
    Exists {
        witness: ClosedTriangulation,
        provenance: String,
    },
    NotExistsEnumerated {
        n: usize,
    },
    NotExistsCited {
        source: String,
    },
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExistenceError {
    #[error("({0},{1},{2}) is not a sphere type: 3a3+2a4+a5 must be 12")]
    NotATypeTuple(usize, usize, usize),
}

/// Decide whether a triangulation with the given parameters exists: the
/// fixture tables first, then the constructive recipes, then exhaustive
/// enumeration when the vertex count is within the cap, then the published
/// statuses.
pub fn check_existence(
    a3: usize,
    a4: usize,
    a5: usize,
    n6: usize,
    enum_cap: usize,
) -> Result<Existence, ExistenceError> {
    if 3 * a3 + 2 * a4 + a5 != 12 {
        return Err(ExistenceError::NotATypeTuple(a3, a4, a5));
    }
    Ok(crate::atlas::decide(
        (a3, a4, a5),
        n6,
        enum_cap,
        &mut BTreeMap::new(),
    ))
}

/// Classes with every vertex of bounded degree, indexed by signature, for
/// nonexistence scans.
pub fn elliptic_signatures(n: usize) -> BTreeSet<ClosedSignature> {
    let result = enumerate_closed(n, true, n).expect("within cap");
    result.tally().keys().copied().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts_match_the_classical_sequence() {
        assert_eq!(enumerate_closed(4, false, 10).unwrap().objects.len(), 1);
        assert_eq!(enumerate_closed(5, false, 10).unwrap().objects.len(), 1);
        assert_eq!(enumerate_closed(6, false, 10).unwrap().objects.len(), 2);
        assert_eq!(enumerate_closed(7, false, 10).unwrap().objects.len(), 5);
    }

    #[test]
    fn naive_agrees_at_small_sizes() {
        for n in 4..=6 {
            let fast = enumerate_closed(n, false, 10).unwrap();
            let naive = enumerate_closed_naive(n).unwrap();
            assert_eq!(fast.codes, naive.codes, "n = {n}");
        }
    }

    #[test]
    fn five_vertex_class_is_2_3_0() {
        let result = enumerate_closed(5, true, 10).unwrap();
        assert_eq!(result.objects.len(), 1);
        let sig = classify_closed(&result.objects[0]).unwrap();
        assert_eq!((sig.a3, sig.a4, sig.a5, sig.n6), (2, 3, 0, 0));
    }

    #[test]
    fn six_and_seven_vertex_elliptic_classes() {
        let tally = enumerate_closed(6, true, 10).unwrap().tally();
        let sigs: Vec<(usize, usize, usize, usize)> =
            tally.keys().map(|s| (s.a3, s.a4, s.a5, s.n6)).collect();
        assert_eq!(sigs, vec![(0, 6, 0, 0), (2, 2, 2, 0)]);
        // In particular nothing with one extra degree-6 vertex over the
        // five-vertex type exists on six vertices.
        assert!(!sigs.contains(&(2, 3, 0, 1)));

        let tally7 = enumerate_closed(7, true, 10).unwrap().tally();
        let sigs7: Vec<(usize, usize, usize, usize)> =
            tally7.keys().map(|s| (s.a3, s.a4, s.a5, s.n6)).collect();
        assert!(sigs7.contains(&(2, 3, 0, 2)));
    }

    #[test]
    fn worker_count_does_not_change_the_codes() {
        let single = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        let quad = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .unwrap();
        let a = single.install(|| enumerate_closed(8, false, 10).unwrap());
        let b = quad.install(|| enumerate_closed(8, false, 10).unwrap());
        assert_eq!(a.codes, b.codes);
    }

    #[test]
    fn existence_verdicts() {
        // Beyond the cap with a published refusal: cited.
        assert!(matches!(
            check_existence(0, 0, 12, 1, 9).unwrap(),
            Existence::NotExistsCited { .. }
        ));
        // Within the cap: settled by exhaustion.
        assert!(matches!(
            check_existence(2, 3, 0, 1, 9).unwrap(),
            Existence::NotExistsEnumerated { n: 6 }
        ));
        // Open beyond the cap: never guessed.
        assert!(matches!(
            check_existence(1, 0, 9, 4, 9).unwrap(),
            Existence::Unknown
        ));
        assert!(matches!(
            check_existence(1, 1, 1, 0, 9),
            Err(ExistenceError::NotATypeTuple(1, 1, 1))
        ));
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            enumerate_closed(11, false, 10),
            Err(EnumError::CapExceeded(11, 10))
        ));
    }

    #[test]
    fn boundary_three_patches_are_the_belted_triangles() {
        // Up to nine vertices: the bare triangle and its one- and two-belt
        // enlargements.
        let result = enumerate_patches(3, 9, Some((0, 3, 0)), 9).unwrap();
        let mut ns: Vec<usize> = result
            .objects
            .iter()
            .map(|p| classify_patch(p).unwrap().a6)
            .collect();
        ns.sort_unstable();
        assert_eq!(ns, vec![0, 3, 6]);
        // The bare triangle is the only one carrying its corners on the
        // boundary.
        let corners_on_bd: Vec<&Patch> = result
            .objects
            .iter()
            .filter(|p| classify_patch(p).unwrap().beta4 == 3)
            .collect();
        assert_eq!(corners_on_bd.len(), 1);
        assert_eq!(corners_on_bd[0].triangle_count(), 1);
    }

    #[test]
    fn no_patch_of_type_030_has_boundary_four() {
        let result = enumerate_patches(4, 10, Some((0, 3, 0)), 9).unwrap();
        assert!(result.objects.is_empty());
    }
}
