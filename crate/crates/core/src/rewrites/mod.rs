//! Local transformations of closed triangulations: degree-patterned
//! configuration rewrites, fullering refinements, gluings and sums.

mod fuller;
mod glue;

pub use fuller::{edge_fullering, edge_fullering_patch, face_fullering};
pub use glue::{
    connected_sum, glue_method, glue_strip, insert_cubic_vertex, remove_cubic_vertex, GlueMethod,
    GlueOutcome,
};

use crate::surface::{BuildError, ClosedTriangulation, VertexId};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RewriteKind {
    M1,
    M2,
    P1,
    P2,
    A,
    B1,
    B2,
    C,
    D,
    E1,
    E2,
    E3,
    G,
}

impl RewriteKind {
    pub const ALL: [RewriteKind; 13] = [
        RewriteKind::M1,
        RewriteKind::M2,
        RewriteKind::P1,
        RewriteKind::P2,
        RewriteKind::A,
        RewriteKind::B1,
        RewriteKind::B2,
        RewriteKind::C,
        RewriteKind::D,
        RewriteKind::E1,
        RewriteKind::E2,
        RewriteKind::E3,
        RewriteKind::G,
    ];

    /// Whether iterating the kind reproduces a site of the same kind.
    pub fn self_reproductive(self) -> bool {
        matches!(
            self,
            RewriteKind::A
                | RewriteKind::B1
                | RewriteKind::B2
                | RewriteKind::C
                | RewriteKind::D
                | RewriteKind::E1
                | RewriteKind::E2
                | RewriteKind::E3
                | RewriteKind::G
        )
    }
}

impl std::str::FromStr for RewriteKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "M1" => Ok(RewriteKind::M1),
            "M2" => Ok(RewriteKind::M2),
            "P1" => Ok(RewriteKind::P1),
            "P2" => Ok(RewriteKind::P2),
            "A" => Ok(RewriteKind::A),
            "B1" => Ok(RewriteKind::B1),
            "B2" => Ok(RewriteKind::B2),
            "C" => Ok(RewriteKind::C),
            "D" => Ok(RewriteKind::D),
            "E1" => Ok(RewriteKind::E1),
            "E2" => Ok(RewriteKind::E2),
            "E3" => Ok(RewriteKind::E3),
            "G" => Ok(RewriteKind::G),
            other => Err(format!("unknown rewrite kind {other}")),
        }
    }
}

/// A concrete occurrence of a configuration: the vertex tuple in role
/// order. Only the degrees the rewrite changes are constrained; passive
/// roles may carry any degree.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct RewriteSite {
    pub kind: RewriteKind,
    pub vertices: Vec<VertexId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("site is stale: {0}")]
    StaleSite(String),
    #[error(transparent)]
    Build(#[from] BuildError),
}

fn degree(t: &ClosedTriangulation, v: VertexId) -> usize {
    t.degree_of(v).unwrap_or(0)
}

/// All sites of a kind, deduplicated by the site symmetries.
pub fn find_sites(t: &ClosedTriangulation, kind: RewriteKind) -> Vec<RewriteSite> {
    let mut out: BTreeSet<Vec<VertexId>> = BTreeSet::new();
    let tris = t.triangles();
    match kind {
        RewriteKind::M1 => {
            for tri in &tris {
                if tri.iter().all(|&v| degree(t, v) == 5) {
                    let mut s = *tri;
                    s.sort_unstable();
                    out.insert(s.to_vec());
                }
            }
        }
        RewriteKind::M2 => {
            for tri in &tris {
                let fours: Vec<VertexId> =
                    tri.iter().copied().filter(|&v| degree(t, v) == 4).collect();
                let fives: Vec<VertexId> =
                    tri.iter().copied().filter(|&v| degree(t, v) == 5).collect();
                if fours.len() == 1 && fives.len() == 2 {
                    let mut xs = fives.clone();
                    xs.sort_unstable();
                    out.insert(vec![xs[0], fours[0], xs[1]]);
                }
            }
        }
        RewriteKind::A => {
            for tri in &tris {
                let mut by_deg = [(0u32, 0usize); 3];
                for (slot, &v) in by_deg.iter_mut().zip(tri.iter()) {
                    *slot = (v, degree(t, v));
                }
                by_deg.sort_by_key(|&(_, d)| d);
                if by_deg.map(|(_, d)| d) == [3, 4, 5] {
                    out.insert(by_deg.iter().map(|&(v, _)| v).collect());
                }
            }
        }
        RewriteKind::P1 => {
            // Two triangles pxy, qxy over an edge xy with d(p)=4, d(q)=5.
            for (xy, apexes) in edge_apex_table(&tris) {
                if apexes.len() != 2 {
                    continue;
                }
                let (p, q) = (apexes[0], apexes[1]);
                for (p, q) in [(p, q), (q, p)] {
                    if degree(t, p) == 4 && degree(t, q) == 5 {
                        out.insert(vec![p, xy.0, q, xy.1]);
                    }
                }
            }
        }
        RewriteKind::B2 => {
            for (vw, apexes) in edge_apex_table(&tris) {
                if apexes.len() != 2 {
                    continue;
                }
                let (x, y) = (apexes[0].min(apexes[1]), apexes[0].max(apexes[1]));
                if degree(t, vw.0) == 4
                    && degree(t, vw.1) == 4
                    && degree(t, x) == 5
                    && degree(t, y) == 5
                {
                    out.insert(vec![vw.0, vw.1, x, y]);
                }
            }
        }
        RewriteKind::B1 => {
            // Degree-4 x whose link a,b,c,d yields v = a, w = c.
            for &x in t.labels() {
                if degree(t, x) != 4 {
                    continue;
                }
                let link = t.link_of(x).unwrap();
                for s in 0..2 {
                    let (v, w) = (link[s], link[s + 2]);
                    let (y, z) = (link[(s + 1) % 4], link[(s + 3) % 4]);
                    if degree(t, v) != 4 || degree(t, w) != 4 {
                        continue;
                    }
                    let set: BTreeSet<VertexId> = [v, w, x, y, z].into_iter().collect();
                    if set.len() == 5 {
                        let (v, w) = (v.min(w), v.max(w));
                        let (y, z) = (y.min(z), y.max(z));
                        out.insert(vec![v, w, x, y, z]);
                    }
                }
            }
        }
        RewriteKind::C => {
            // Chains t1 = vwx, t2 = wxy, t3 = xyz with d(w) = 4, d(z) = 5.
            let table = edge_apex_table(&tris);
            for tri in &tris {
                for perm in triangle_orderings(tri) {
                    let (w, x, y) = (perm[0], perm[1], perm[2]);
                    if degree(t, w) != 4 {
                        continue;
                    }
                    let v = other_apex(&table, w, x, y);
                    let z = other_apex(&table, x, y, w);
                    if let (Some(v), Some(z)) = (v, z) {
                        if degree(t, z) != 5 {
                            continue;
                        }
                        let set: BTreeSet<VertexId> = [v, w, x, y, z].into_iter().collect();
                        if set.len() == 5 {
                            out.insert(vec![v, w, x, y, z]);
                        }
                    }
                }
            }
        }
        RewriteKind::P2
        | RewriteKind::D
        | RewriteKind::E1
        | RewriteKind::E2
        | RewriteKind::E3
        | RewriteKind::G => {
            for &p in t.labels() {
                if degree(t, p) != 6 {
                    continue;
                }
                let link = t.link_of(p).unwrap();
                for reading in dihedral_readings(&link) {
                    let degs: Vec<usize> = reading.iter().map(|&v| degree(t, v)).collect();
                    let matched = match kind {
                        // Active roles: the flanks of the deleted pair.
                        RewriteKind::P2 => degs[0] == 5 && degs[2] == 4,
                        RewriteKind::D => degs[0] == 4 && degs[2] == 5,
                        RewriteKind::E1 => degs == [4, 5, 6, 4, 5, 6],
                        RewriteKind::E2 => degs == [4, 6, 4, 5, 5, 6],
                        RewriteKind::E3 => {
                            degs == [4, 5, 6, 4, 6, 5]
                                || degs == [4, 6, 4, 5, 6, 5]
                                || degs == [5, 4, 5, 5, 6, 5]
                        }
                        RewriteKind::G => degs[0] == 4 && degs[2] == 4 && degs[4] == 4,
                        _ => unreachable!(),
                    };
                    if !matched {
                        continue;
                    }
                    let mut site = vec![p];
                    site.extend(&reading);
                    // Quotient by the symmetries the rewrite cannot tell
                    // apart.
                    match kind {
                        RewriteKind::P2 | RewriteKind::D => {
                            out.insert(vec![p, reading[0], reading[1], reading[2]]);
                        }
                        RewriteKind::G => {
                            let mut best = site.clone();
                            for rot in [2usize, 4] {
                                let mut alt = vec![p];
                                alt.extend((0..6).map(|i| reading[(i + rot) % 6]));
                                if alt < best {
                                    best = alt;
                                }
                            }
                            out.insert(best);
                        }
                        _ => {
                            out.insert(site);
                        }
                    }
                }
            }
        }
    }
    out.into_iter()
        .map(|vertices| RewriteSite { kind, vertices })
        .collect()
}

/// Orderings of a triangle's vertices (all six).
fn triangle_orderings(tri: &[VertexId; 3]) -> Vec<[VertexId; 3]> {
    let [a, b, c] = *tri;
    vec![
        [a, b, c],
        [a, c, b],
        [b, a, c],
        [b, c, a],
        [c, a, b],
        [c, b, a],
    ]
}

fn edge_apex_table(
    tris: &[[VertexId; 3]],
) -> std::collections::BTreeMap<(VertexId, VertexId), Vec<VertexId>> {
    let mut table: std::collections::BTreeMap<(VertexId, VertexId), Vec<VertexId>> =
        std::collections::BTreeMap::new();
    for t in tris {
        for k in 0..3 {
            let (a, b, c) = (t[k], t[(k + 1) % 3], t[(k + 2) % 3]);
            table.entry((a.min(b), a.max(b))).or_default().push(c);
        }
    }
    table
}

fn other_apex(
    table: &std::collections::BTreeMap<(VertexId, VertexId), Vec<VertexId>>,
    a: VertexId,
    b: VertexId,
    not: VertexId,
) -> Option<VertexId> {
    table
        .get(&(a.min(b), a.max(b)))
        .and_then(|apexes| apexes.iter().copied().find(|&v| v != not))
}

/// All 12 rotations and reflections of a cyclic sequence.
fn dihedral_readings(cycle: &[VertexId]) -> Vec<Vec<VertexId>> {
    let n = cycle.len();
    let mut out = Vec::with_capacity(2 * n);
    for s in 0..n {
        out.push((0..n).map(|i| cycle[(s + i) % n]).collect());
        out.push((0..n).map(|i| cycle[(s + n - i) % n]).collect());
    }
    out
}

/// Apply a rewrite at a site, producing the transformed triangulation.
pub fn apply_rewrite(
    t: &ClosedTriangulation,
    site: &RewriteSite,
) -> Result<ClosedTriangulation, RewriteError> {
    // The site must still be present.
    let current = find_sites(t, site.kind);
    if !current.contains(site) {
        return Err(RewriteError::StaleSite(format!(
            "{:?} {:?}",
            site.kind, site.vertices
        )));
    }
    let fresh = t.labels().last().copied().unwrap_or(0) + 1;
    let v = &site.vertices;
    let mut remove: Vec<[VertexId; 3]> = Vec::new();
    let mut add: Vec<[VertexId; 3]> = Vec::new();
    match site.kind {
        RewriteKind::M1 | RewriteKind::M2 | RewriteKind::A => {
            // Subdivide the triangle with a new cubic vertex.
            let (x, y, z) = (v[0], v[1], v[2]);
            let p = fresh;
            remove.push([x, y, z]);
            add.extend([[p, x, y], [p, x, z], [p, y, z]]);
        }
        RewriteKind::P1 => {
            let (p, x, q, y) = (v[0], v[1], v[2], v[3]);
            let z = fresh;
            remove.extend([[p, x, y], [q, x, y]]);
            add.extend([[p, x, z], [p, y, z], [q, x, z], [q, y, z]]);
        }
        RewriteKind::P2 => {
            let (p, u, vv, w) = (v[0], v[1], v[2], v[3]);
            let q = fresh;
            remove.extend([[u, p, vv], [vv, p, w]]);
            add.extend([[u, p, q], [u, q, vv], [p, q, w], [q, vv, w]]);
        }
        RewriteKind::B1 => {
            let (vv, w, x, y, z) = (v[0], v[1], v[2], v[3], v[4]);
            let (p, q) = (fresh, fresh + 1);
            remove.extend([[vv, x, y], [vv, x, z], [w, x, y], [w, x, z]]);
            add.extend([
                [vv, p, x],
                [vv, p, y],
                [vv, q, x],
                [vv, q, z],
                [w, p, x],
                [w, p, y],
                [w, q, x],
                [w, q, z],
            ]);
        }
        RewriteKind::B2 => {
            let (vv, w, x, y) = (v[0], v[1], v[2], v[3]);
            let (p, q) = (fresh, fresh + 1);
            remove.extend([[vv, w, x], [vv, w, y]]);
            add.extend([
                [vv, q, x],
                [vv, p, q],
                [vv, p, y],
                [w, q, x],
                [w, p, q],
                [w, p, y],
            ]);
        }
        RewriteKind::C => {
            let (w, x, y, z) = (v[1], v[2], v[3], v[4]);
            let p = fresh;
            remove.extend([[w, x, y], [x, y, z]]);
            add.extend([[w, p, x], [w, p, y], [p, x, z], [p, y, z]]);
        }
        RewriteKind::D => {
            let (p, u, vv, w) = (v[0], v[1], v[2], v[3]);
            let q = fresh;
            remove.extend([[p, u, vv], [p, vv, w]]);
            add.extend([[p, q, u], [p, q, w], [q, u, vv], [q, vv, w]]);
        }
        RewriteKind::E1 => {
            let (p, vv, w, x) = (v[0], v[2], v[3], v[4]);
            let q = fresh;
            remove.extend([[p, vv, w], [p, w, x]]);
            add.extend([[p, q, vv], [p, q, x], [q, vv, w], [q, x, w]]);
        }
        RewriteKind::E2 => {
            let (p, u, y, z) = (v[0], v[1], v[5], v[6]);
            let q = fresh;
            remove.extend([[p, y, z], [p, z, u]]);
            add.extend([[p, q, y], [p, q, u], [q, y, z], [q, z, u]]);
        }
        RewriteKind::E3 => {
            let q = fresh;
            let degs: Vec<usize> = v[1..].iter().map(|&x| degree(t, x)).collect();
            if degs == [4, 5, 6, 4, 6, 5] {
                let (p, vv, w, x) = (v[0], v[2], v[3], v[4]);
                remove.extend([[p, vv, w], [p, w, x]]);
                add.extend([[p, q, vv], [p, q, x], [q, vv, w], [q, x, w]]);
            } else if degs == [4, 6, 4, 5, 6, 5] {
                let (p, u, vv, w) = (v[0], v[1], v[2], v[3]);
                remove.extend([[p, vv, w], [p, u, vv]]);
                add.extend([[p, u, q], [q, u, vv], [p, w, q], [q, vv, w]]);
            } else if degs == [5, 4, 5, 5, 6, 5] {
                let (p, x, y, z) = (v[0], v[4], v[5], v[6]);
                remove.extend([[p, z, y], [p, y, x]]);
                add.extend([[p, q, z], [q, y, z], [p, q, x], [q, y, x]]);
            } else {
                return Err(RewriteError::StaleSite("degrees shifted".into()));
            }
        }
        RewriteKind::G => {
            let (p, u, vv, w, x, y, z) = (v[0], v[1], v[2], v[3], v[4], v[5], v[6]);
            let (q, r, s) = (fresh, fresh + 1, fresh + 2);
            remove.extend([
                [p, u, vv],
                [p, vv, w],
                [p, w, x],
                [p, x, y],
                [p, y, z],
                [p, z, u],
            ]);
            add.extend([
                [u, p, q],
                [u, q, vv],
                [p, q, w],
                [q, vv, w],
                [p, s, w],
                [p, s, y],
                [s, x, w],
                [s, x, y],
                [p, u, r],
                [p, r, y],
                [r, u, z],
                [r, y, z],
            ]);
        }
    }
    rebuild(t, &remove, &add)
}

fn rebuild(
    t: &ClosedTriangulation,
    remove: &[[VertexId; 3]],
    add: &[[VertexId; 3]],
) -> Result<ClosedTriangulation, RewriteError> {
    let gone: BTreeSet<[VertexId; 3]> = remove
        .iter()
        .map(|t| {
            let mut s = *t;
            s.sort_unstable();
            s
        })
        .collect();
    let mut tris: Vec<[VertexId; 3]> = t
        .triangles()
        .into_iter()
        .filter(|t| {
            let mut s = *t;
            s.sort_unstable();
            !gone.contains(&s)
        })
        .collect();
    if tris.len() != t.triangle_count() - remove.len() {
        return Err(RewriteError::StaleSite("expected triangles missing".into()));
    }
    tris.extend_from_slice(add);
    Ok(ClosedTriangulation::from_triangles(&tris)?)
}

/// Apply the kind repeatedly. Each step prefers a site through the vertex
/// added last, which is how a self-reproductive configuration hands the
/// chain forward; otherwise the first site in order is taken.
pub fn iterate_rewrite(
    t: &ClosedTriangulation,
    kind: RewriteKind,
    steps: usize,
) -> Result<ClosedTriangulation, RewriteError> {
    let mut cur = t.clone();
    let mut last_added: Option<VertexId> = None;
    for _ in 0..steps {
        let sites = find_sites(&cur, kind);
        let site = last_added
            .and_then(|l| sites.iter().find(|s| s.vertices.contains(&l)))
            .or_else(|| sites.first())
            .ok_or_else(|| RewriteError::StaleSite(format!("no {:?} site left", kind)))?
            .clone();
        cur = apply_rewrite(&cur, &site)?;
        last_added = cur.labels().last().copied();
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::classify_closed;
    use crate::catalog;

    #[test]
    fn host_sites_from_the_defining_sections() {
        // Chain configuration in the 10-vertex host of type (0,2,8).
        let host = catalog::closed("3.3/(0,2,8,0)");
        let sites = find_sites(&host, RewriteKind::C);
        assert!(sites.iter().any(|s| {
            let set: BTreeSet<u32> = s.vertices.iter().copied().collect();
            set == [2, 3, 4, 5, 9].into_iter().collect()
        }));

        // Double-pyramid configuration in the octahedron.
        let oct = catalog::closed("3.7/(0,6,0,0)");
        let sites = find_sites(&oct, RewriteKind::B1);
        assert!(!sites.is_empty());

        // Hexagon configurations in their hosts.
        let host = catalog::closed("3.2/(0,1,10,3)");
        assert!(find_sites(&host, RewriteKind::D)
            .iter()
            .any(|s| s.vertices[0] == 1));
        let host = catalog::closed("3.5/(0,4,4,4)");
        assert!(find_sites(&host, RewriteKind::E1)
            .iter()
            .any(|s| s.vertices[0] == 5));
        let host = catalog::closed("3.6/(0,5,2,4)");
        assert!(find_sites(&host, RewriteKind::E3)
            .iter()
            .any(|s| s.vertices[0] == 1));
        let host = catalog::closed("3.6/(0,5,2,3)");
        assert!(find_sites(&host, RewriteKind::G)
            .iter()
            .any(|s| s.vertices[0] == 1));
    }

    #[test]
    fn no_sites_on_trivial_hosts() {
        let tet = catalog::closed("3.19/(4,0,0,0)");
        assert!(find_sites(&tet, RewriteKind::C).is_empty());
        assert!(find_sites(&tet, RewriteKind::M1).is_empty());
    }

    #[test]
    fn icosahedron_has_m1_sites() {
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
        let ico = ClosedTriangulation::from_triangles(&tris).unwrap();
        assert!(!find_sites(&ico, RewriteKind::M1).is_empty());
    }

    #[test]
    fn deltas_match_the_defining_moves() {
        let host = catalog::closed("3.3/(0,2,8,0)");
        let site = find_sites(&host, RewriteKind::C)
            .into_iter()
            .next()
            .unwrap();
        let out = apply_rewrite(&host, &site).unwrap();
        let sig = classify_closed(&out).unwrap();
        assert_eq!((sig.a3, sig.a4, sig.a5, sig.n6), (0, 2, 8, 1));

        let oct = catalog::closed("3.7/(0,6,0,0)");
        let site = find_sites(&oct, RewriteKind::B1)
            .into_iter()
            .next()
            .unwrap();
        let out = apply_rewrite(&oct, &site).unwrap();
        let sig = classify_closed(&out).unwrap();
        assert_eq!((sig.a3, sig.a4, sig.a5, sig.n6), (0, 6, 0, 2));
    }

    #[test]
    fn stale_sites_are_rejected() {
        let host = catalog::closed("3.15/(2,2,2,0)");
        let site = find_sites(&host, RewriteKind::A)
            .into_iter()
            .next()
            .unwrap();
        let moved = apply_rewrite(&host, &site).unwrap();
        // The same tuple no longer carries the old degrees.
        assert!(matches!(
            apply_rewrite(&moved, &site),
            Err(RewriteError::StaleSite(_))
        ));
    }

    #[test]
    fn self_reproduction_short_runs() {
        let host = catalog::closed("3.15/(2,2,2,0)");
        let out = iterate_rewrite(&host, RewriteKind::A, 5).unwrap();
        let sig = classify_closed(&out).unwrap();
        assert_eq!((sig.a3, sig.a4, sig.a5, sig.n6), (2, 2, 2, 5));
    }
}
