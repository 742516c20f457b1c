//! Face-list text format. Triangles are three-character tokens over the
//! alphabet 1-9, A-Z, or comma-separated integer triples for larger inputs.

use super::{BuildError, Surface, VertexId};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceList {
    pub triangles: Vec<[VertexId; 3]>,
    pub boundary: Option<Vec<VertexId>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("malformed token: {0}")]
    MalformedToken(String),
    #[error(transparent)]
    Build(#[from] BuildError),
}

pub fn char_to_vertex(c: char) -> Option<VertexId> {
    match c {
        '1'..='9' => Some(c as VertexId - '0' as VertexId),
        'A'..='Z' => Some(c as VertexId - 'A' as VertexId + 10),
        _ => None,
    }
}

pub fn vertex_to_char(v: VertexId) -> Option<char> {
    match v {
        1..=9 => Some((b'0' + v as u8) as char),
        10..=35 => Some((b'A' + (v - 10) as u8) as char),
        _ => None,
    }
}

fn parse_vertex_seq(token: &str) -> Result<Vec<VertexId>, ParseError> {
    if token.contains(',') {
        token
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<VertexId>()
                    .ok()
                    .filter(|&v| v >= 1)
                    .ok_or_else(|| ParseError::MalformedToken(token.to_string()))
            })
            .collect()
    } else {
        token
            .chars()
            .map(|c| char_to_vertex(c).ok_or_else(|| ParseError::MalformedToken(token.to_string())))
            .collect()
    }
}

fn parse_triangle_token(token: &str) -> Result<[VertexId; 3], ParseError> {
    let seq = parse_vertex_seq(token)?;
    if seq.len() != 3 {
        return Err(ParseError::MalformedToken(token.to_string()));
    }
    Ok([seq[0], seq[1], seq[2]])
}

/// Parse a face-list document into its raw triangle/boundary content.
///
/// Documents consist of optional `# key: value` header lines, an optional
/// `triangles:` marker, whitespace-separated triangle tokens, and an
/// optional `boundary:` line. A bare string of tokens is also accepted.
pub fn parse_face_list_raw(text: &str) -> Result<FaceList, ParseError> {
    let mut triangles = Vec::new();
    let mut boundary = None;
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let rest = if let Some(r) = line.strip_prefix("triangles:") {
            r
        } else if let Some(r) = line.strip_prefix("boundary:") {
            let token: String = r.split_whitespace().collect::<Vec<_>>().join(",");
            let token = if r.trim().contains(char::is_whitespace) && !r.contains(',') {
                token
            } else {
                r.trim().to_string()
            };
            let seq = parse_vertex_seq(&token)?;
            if seq.len() < 3 {
                return Err(ParseError::MalformedToken(r.trim().to_string()));
            }
            boundary = Some(seq);
            continue;
        } else {
            line
        };
        for tok in rest.split_whitespace() {
            triangles.push(parse_triangle_token(tok)?);
        }
    }
    Ok(FaceList {
        triangles,
        boundary,
    })
}

/// Parse and build in one step, classifying the result as a closed
/// triangulation or a patch.
pub fn parse_face_list(text: &str) -> Result<Surface, ParseError> {
    let fl = parse_face_list_raw(text)?;
    Ok(Surface::build(&fl)?)
}

fn fmt_vertex_seq(seq: &[VertexId], letters: bool) -> String {
    if letters {
        seq.iter().map(|&v| vertex_to_char(v).unwrap()).collect()
    } else {
        seq.iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Canonical serialization: triangles sorted lexicographically by their
/// sorted vertex triple, letter alphabet iff every label fits in it.
pub fn serialize_face_list(surface: &Surface) -> String {
    let mut tris: Vec<[VertexId; 3]> = surface
        .triangles()
        .iter()
        .map(|t| {
            let mut s = *t;
            s.sort_unstable();
            s
        })
        .collect();
    tris.sort_unstable();
    let letters = tris.iter().flatten().all(|&v| v <= 35);
    let mut out = String::from("triangles: ");
    out.push_str(
        &tris
            .iter()
            .map(|t| fmt_vertex_seq(t, letters))
            .collect::<Vec<_>>()
            .join(" "),
    );
    out.push('\n');
    if let Surface::Patch(p) = surface {
        let bd = p.boundary_labels();
        // Deterministic start and direction.
        let min_pos = bd
            .iter()
            .enumerate()
            .min_by_key(|&(_, v)| *v)
            .map(|(i, _)| i)
            .unwrap();
        let n = bd.len();
        let fwd: Vec<VertexId> = (0..n).map(|i| bd[(min_pos + i) % n]).collect();
        let rev: Vec<VertexId> = (0..n).map(|i| bd[(min_pos + n - i) % n]).collect();
        let cyc = if fwd < rev { fwd } else { rev };
        out.push_str(&format!("boundary: {}\n", fmt_vertex_seq(&cyc, letters)));
    }
    out
}
