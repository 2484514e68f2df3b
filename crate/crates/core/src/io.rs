//! Quiver file formats.
//!
//! Two text formats are accepted and told apart by the first non-blank byte:
//!
//! * JSON, `{"n": 3, "b": [[0,-1,0],[1,0,-1],[0,1,0]]}`, rows of the exchange
//!   matrix.
//! * Edge list, one `<from> <to> <mult>` line per pair carrying arrows,
//!   0-indexed. Blank lines and `#` comments are ignored. An optional
//!   `n <count>` line fixes the vertex count; otherwise it is one more than
//!   the largest vertex mentioned.

use crate::error::{QuiverError, Result};
use crate::quiver::Quiver;

/// Parses either format.
pub fn parse_quiver(text: &str) -> Result<Quiver> {
    match text.trim_start().as_bytes().first() {
        Some(b'{') => parse_json(text),
        _ => parse_edge_list(text),
    }
}

#[derive(serde::Deserialize)]
struct RawJson {
    n: usize,
    b: Vec<Vec<i64>>,
}

/// Syntax errors report line and column; matrix errors name the entry.
pub fn parse_json(text: &str) -> Result<Quiver> {
    let raw: RawJson = serde_json::from_str(text).map_err(|e| QuiverError::Parse {
        line: e.line(),
        message: format!("column {}: {e}", e.column()),
    })?;
    if raw.b.len() != raw.n {
        return Err(QuiverError::NotSquare {
            row: raw.b.len(),
            len: raw.b.len(),
            n: raw.n,
        });
    }
    Quiver::from_rows(&raw.b)
}

pub fn parse_edge_list(text: &str) -> Result<Quiver> {
    let mut declared_n = None;
    let mut arrows: Vec<(usize, usize, i64, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| QuiverError::Parse {
            line: line_no,
            message,
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields[0] == "n" {
            if fields.len() != 2 || declared_n.is_some() {
                return Err(err("expected a single `n <count>` line".into()));
            }
            let n: usize = fields[1]
                .parse()
                .map_err(|_| err(format!("bad vertex count {:?}", fields[1])))?;
            declared_n = Some(n);
            continue;
        }
        if fields.len() != 3 {
            return Err(err(format!(
                "expected `<from> <to> <mult>`, found {} fields",
                fields.len()
            )));
        }
        let from: usize = fields[0]
            .parse()
            .map_err(|_| err(format!("bad vertex {:?}", fields[0])))?;
        let to: usize = fields[1]
            .parse()
            .map_err(|_| err(format!("bad vertex {:?}", fields[1])))?;
        let mult: i64 = fields[2]
            .parse()
            .map_err(|_| err(format!("bad multiplicity {:?}", fields[2])))?;
        if mult <= 0 {
            return Err(err(format!("multiplicity must be positive, got {mult}")));
        }
        if from == to {
            return Err(err(format!("loop at vertex {from}")));
        }
        if let Some(&(_, _, _, prev)) = arrows
            .iter()
            .find(|&&(f, t, _, _)| (f, t) == (from, to) || (f, t) == (to, from))
        {
            return Err(err(format!(
                "pair {from},{to} already given on line {prev}"
            )));
        }
        arrows.push((from, to, mult, line_no));
    }
    let max_vertex = arrows.iter().map(|&(f, t, _, _)| f.max(t)).max();
    let n = match (declared_n, max_vertex) {
        (Some(n), Some(m)) if m >= n => {
            let line = arrows
                .iter()
                .find(|&&(f, t, _, _)| f.max(t) == m)
                .map(|a| a.3)
                .unwrap_or(0);
            return Err(QuiverError::Parse {
                line,
                message: format!("vertex {m} out of range for n = {n}"),
            });
        }
        (Some(n), _) => n,
        (None, Some(m)) => m + 1,
        (None, None) => return Err(QuiverError::Empty),
    };
    let list: Vec<(usize, usize, i64)> = arrows.iter().map(|&(f, t, m, _)| (f, t, m)).collect();
    Quiver::from_arrows(n, &list)
}

/// Renders the edge-list format, with an `n` line so isolated vertices survive.
pub fn to_edge_list(q: &Quiver) -> String {
    let mut out = format!("n {}\n", q.n());
    for (from, to, m) in q.arrow_list() {
        out.push_str(&format!("{from} {to} {m}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn detects_format() {
        let a = parse_quiver("  {\"n\":2,\"b\":[[0,-1],[1,0]]}").unwrap();
        let b = parse_quiver("# A2\n0 1 1\n").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn edge_list_round_trip() {
        let q = Quiver::from_arrows(5, &[(0, 1, 2), (3, 1, 1)]).unwrap();
        assert_eq!(parse_quiver(&to_edge_list(&q)).unwrap(), q);
    }

    #[test]
    fn edge_list_errors_carry_lines() {
        let e = parse_edge_list("0 1 1\n\n1 0 1\n").unwrap_err();
        assert_eq!(
            e,
            QuiverError::Parse {
                line: 3,
                message: "pair 1,0 already given on line 1".into()
            }
        );
        let e = parse_edge_list("0 1\n").unwrap_err();
        assert!(matches!(e, QuiverError::Parse { line: 1, .. }));
        let e = parse_edge_list("n 2\n0 2 1\n").unwrap_err();
        assert!(matches!(e, QuiverError::Parse { line: 2, .. }));
        assert!(parse_edge_list("0 0 1").is_err());
        assert!(parse_edge_list("0 1 -1").is_err());
    }

    #[test]
    fn json_errors_carry_position() {
        let e = parse_quiver("{\"n\": 2,\n \"b\": [[0, 1], [1, 0]]}").unwrap_err();
        assert_eq!(
            e,
            QuiverError::NotSkewSymmetric {
                i: 0,
                j: 1,
                a: 1,
                b: 1
            }
        );
        let e = parse_quiver("{\"n\": 2,\n \"b\": [[0, 1], [-1 0]]}").unwrap_err();
        assert!(matches!(e, QuiverError::Parse { line: 2, .. }), "{e:?}");
        assert!(parse_quiver("{\"n\": 3, \"b\": [[0]]}").is_err());
    }
}
