//! Export formats: canonical face lists, a JSON mirror, and an OFF file
//! with advisory barycentric coordinates for external viewers.

use crate::analysis::{classify, Signature};
use crate::surface::{serialize_face_list, Surface};
use serde_json::json;

pub fn to_face_list(surface: &Surface) -> String {
    serialize_face_list(surface)
}

pub fn to_json(surface: &Surface) -> String {
    let tris: Vec<Vec<u32>> = surface.triangles().iter().map(|t| t.to_vec()).collect();
    let mut doc = json!({
        "kind": match surface { Surface::Closed(_) => "closed", Surface::Patch(_) => "patch" },
        "triangles": tris,
    });
    if let Surface::Patch(p) = surface {
        doc["boundary"] = json!(p.boundary_labels());
    }
    match classify(surface) {
        Ok(Signature::Closed(c)) => {
            doc["signature"] = json!({
                "a3": c.a3, "a4": c.a4, "a5": c.a5, "a6": c.n6,
                "notation": c.notation(),
            });
        }
        Ok(Signature::Patch(p)) => {
            doc["signature"] = json!({
                "a3": p.a3, "a4": p.a4, "a5": p.a5, "a6": p.a6,
                "b": p.b, "beta4": p.beta4, "beta5": p.beta5,
                "notation": p.notation(),
            });
        }
        Err(_) => {
            doc["signature"] = json!(null);
        }
    }
    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
}

/// Barycentric layout: an outer face (the patch boundary, or a chosen
/// triangle of a closed surface) is pinned to a regular polygon and every
/// other vertex relaxed to the average of its neighbors. Coordinates are
/// for viewing only.
pub fn to_off(surface: &Surface) -> String {
    let tris = surface.triangles();
    let labels: Vec<u32> = {
        let mut ls: Vec<u32> = tris.iter().flatten().copied().collect();
        ls.sort_unstable();
        ls.dedup();
        ls
    };
    let index = |l: u32| labels.binary_search(&l).unwrap();
    let n = labels.len();
    let outer: Vec<u32> = match surface {
        Surface::Patch(p) => p.boundary_labels(),
        Surface::Closed(_) => tris[0].to_vec(),
    };
    let mut pos = vec![(0.0f64, 0.0f64); n];
    let mut fixed = vec![false; n];
    for (i, &l) in outer.iter().enumerate() {
        let ang = 2.0 * std::f64::consts::PI * i as f64 / outer.len() as f64;
        pos[index(l)] = (ang.cos(), ang.sin());
        fixed[index(l)] = true;
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for t in &tris {
        for k in 0..3 {
            let (a, b) = (index(t[k]), index(t[(k + 1) % 3]));
            if !adj[a].contains(&b) {
                adj[a].push(b);
            }
            if !adj[b].contains(&a) {
                adj[b].push(a);
            }
        }
    }
    for _ in 0..400 {
        for v in 0..n {
            if fixed[v] || adj[v].is_empty() {
                continue;
            }
            let (mut x, mut y) = (0.0, 0.0);
            for &w in &adj[v] {
                x += pos[w].0;
                y += pos[w].1;
            }
            pos[v] = (x / adj[v].len() as f64, y / adj[v].len() as f64);
        }
    }
    let mut out = String::from("OFF\n");
    out.push_str(&format!("{} {} 0\n", n, tris.len()));
    for &(x, y) in &pos {
        out.push_str(&format!("{:.6} {:.6} 0.000000\n", x, y));
    }
    for t in &tris {
        out.push_str(&format!(
            "3 {} {} {}\n",
            index(t[0]),
            index(t[1]),
            index(t[2])
        ));
    }
    out
}
