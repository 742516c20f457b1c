//! Invariant re-checks over built surfaces and raw face lists, reported
//! check by check rather than failing at the first violation.

use super::{parse::FaceList, Surface, VertexId};
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub details: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub kind: String,
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn push(&mut self, name: &str, passed: bool, details: String) {
        self.checks.push(CheckResult {
            name: name.to_string(),
            passed,
            details,
        });
    }
}

/// Validate a raw face list, reporting every failed invariant with the
/// offending simplices.
pub fn validate_faces(fl: &FaceList) -> ValidationReport {
    let mut report = ValidationReport {
        kind: "raw".to_string(),
        checks: Vec::new(),
    };

    let mut edge_count: BTreeMap<(VertexId, VertexId), usize> = BTreeMap::new();
    for t in &fl.triangles {
        for k in 0..3 {
            let (a, b) = (t[k], t[(k + 1) % 3]);
            *edge_count.entry((a.min(b), a.max(b))).or_default() += 1;
        }
    }
    let bad: Vec<String> = edge_count
        .iter()
        .filter(|(_, &c)| c > 2)
        .map(|(&(a, b), &c)| format!("{}-{} in {} triangles", a, b, c))
        .collect();
    report.push("NonManifoldEdge", bad.is_empty(), bad.join("; "));

    match Surface::build(fl) {
        Ok(surface) => {
            let mut inner = validate(&surface);
            report.kind = inner.kind.clone();
            report.checks.append(&mut inner.checks);
        }
        Err(e) => {
            report.push(
                &format!("{:?}", discriminant_name(&e)),
                false,
                e.to_string(),
            );
        }
    }
    report
}

fn discriminant_name(e: &super::BuildError) -> &'static str {
    use super::BuildError::*;
    match e {
        MalformedToken(_) => "MalformedToken",
        DuplicateTriangle(_) => "DuplicateTriangle",
        NonManifoldEdge(_, _) => "NonManifoldEdge",
        BrokenLink(_) => "BrokenLink",
        Disconnected => "Disconnected",
        BoundaryNotSingleCycle => "BoundaryNotSingleCycle",
        BoundaryMismatch => "BoundaryMismatch",
        NotSphere(_) => "NotSphere",
        NotDisc(_) => "NotDisc",
        Unorientable => "Unorientable",
        Empty => "Empty",
    }
}

/// Re-check every structural invariant of an already built surface.
pub fn validate(surface: &Surface) -> ValidationReport {
    let sk = surface.skeleton();
    let f1 = sk.vertex_count() as i64;
    let f2 = sk.edge_count() as i64;
    let f3 = sk.tris.len() as i64;

    let mut report = ValidationReport {
        kind: match surface {
            Surface::Closed(_) => "closed".to_string(),
            Surface::Patch(_) => "patch".to_string(),
        },
        checks: Vec::new(),
    };

    // Edge multiplicities from the triangle list.
    let mut edge_count: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for t in &sk.tris {
        for k in 0..3 {
            let (a, b) = (t[k], t[(k + 1) % 3]);
            *edge_count.entry((a.min(b), a.max(b))).or_default() += 1;
        }
    }

    match surface {
        Surface::Closed(_) => {
            let bad: Vec<String> = edge_count
                .iter()
                .filter(|(_, &c)| c != 2)
                .map(|(&(a, b), &c)| format!("{}-{}: {}", sk.labels[a], sk.labels[b], c))
                .collect();
            report.push("EdgeInTwoTriangles", bad.is_empty(), bad.join("; "));
            report.push(
                "EulerCharacteristic",
                f1 - f2 + f3 == 2,
                format!("f1-f2+f3 = {}", f1 - f2 + f3),
            );
            report.push(
                "FaceRelation",
                2 * f2 == 3 * f3,
                format!("2f2={} 3f3={}", 2 * f2, 3 * f3),
            );
            let small: Vec<String> = (0..sk.vertex_count())
                .filter(|&v| sk.degree(v) < 3)
                .map(|v| sk.labels[v].to_string())
                .collect();
            report.push("MinDegree", small.is_empty(), small.join(","));
        }
        Surface::Patch(p) => {
            let b = p.boundary.len() as i64;
            let bd_edges: std::collections::BTreeSet<(usize, usize)> = (0..p.boundary.len())
                .map(|i| {
                    let (u, v) = (p.boundary[i], p.boundary[(i + 1) % p.boundary.len()]);
                    (u.min(v), u.max(v))
                })
                .collect();
            let bad: Vec<String> = edge_count
                .iter()
                .filter(|(&e, &c)| {
                    let want = if bd_edges.contains(&e) { 1 } else { 2 };
                    c != want
                })
                .map(|(&(a, b), &c)| format!("{}-{}: {}", sk.labels[a], sk.labels[b], c))
                .collect();
            report.push(
                "BoundaryEdgesOnceInteriorTwice",
                bad.is_empty(),
                bad.join("; "),
            );
            report.push("BoundarySingleCycle", b >= 3, format!("b = {}", b));
            report.push(
                "EulerCharacteristic",
                f1 - f2 + f3 == 1,
                format!("f1-f2+f3 = {}", f1 - f2 + f3),
            );
            report.push(
                "EdgeRelation",
                f2 == 3 * f1 - (3 + b),
                format!("f2 = {}, 3f1-(3+b) = {}", f2, 3 * f1 - (3 + b)),
            );
            report.push(
                "TriangleRelation",
                f3 == 2 * f1 - (2 + b),
                format!("f3 = {}, 2f1-(2+b) = {}", f3, 2 * f1 - (2 + b)),
            );
            let small: Vec<String> = (0..sk.vertex_count())
                .filter(|&v| {
                    if sk.on_boundary[v] {
                        sk.degree(v) < 4
                    } else {
                        sk.degree(v) < 3
                    }
                })
                .map(|v| sk.labels[v].to_string())
                .collect();
            report.push("MinDegree", small.is_empty(), small.join(","));
        }
    }

    // Vertex fans were established at build time; re-derive their sizes.
    let mut tri_at = vec![0usize; sk.vertex_count()];
    for t in &sk.tris {
        for &v in t {
            tri_at[v] += 1;
        }
    }
    let bad_fans: Vec<String> = (0..sk.vertex_count())
        .filter(|&v| tri_at[v] != sk.triangles_at(v))
        .map(|v| sk.labels[v].to_string())
        .collect();
    report.push("SingleFan", bad_fans.is_empty(), bad_fans.join(","));

    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::parse::parse_face_list_raw;
    use crate::surface::parse_face_list;

    #[test]
    fn tetrahedron_all_pass() {
        let s = parse_face_list("123 124 134 234").unwrap();
        assert!(validate(&s).all_passed());
    }

    #[test]
    fn octahedron_all_pass_with_euler_two() {
        let s = parse_face_list("123 126 135 156 234 246 345 456").unwrap();
        let report = validate(&s);
        assert!(report.all_passed());
        assert!(report
            .checks
            .iter()
            .any(|c| c.name == "EulerCharacteristic" && c.passed));
    }

    #[test]
    fn non_manifold_edge_flagged() {
        let fl = parse_face_list_raw("123 124 125 134 135").unwrap();
        let report = validate_faces(&fl);
        assert!(!report.all_passed());
        assert!(report
            .checks
            .iter()
            .any(|c| c.name == "NonManifoldEdge" && !c.passed && c.details.contains("1-2")));
    }
}
