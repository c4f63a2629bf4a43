//! Plain-text edge lists.
//!
//! ```text
//! # cricket
//! n 5
//! 0 1
//! 0 2
//! 1 2
//! 2 3 1.0
//! 2 4
//! ```
//!
//! The header `n <count>` comes first; each further line is `u v [w]` with
//! 0-based endpoints and an optional positive weight (default 1). Text after
//! `#` is ignored.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut graph: Option<Graph> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        let Some(g) = graph.as_mut() else {
            if fields.len() != 2 || fields[0] != "n" {
                return Err(err(format!("expected header `n <count>`, found {line:?}")));
            }
            let n: usize = fields[1]
                .parse()
                .map_err(|_| err(format!("bad vertex count {:?}", fields[1])))?;
            if n == 0 {
                return Err(err("vertex count must be positive".into()));
            }
            graph = Some(Graph::empty(n));
            continue;
        };
        if !(2..=3).contains(&fields.len()) {
            return Err(err(format!("expected `u v [w]`, found {line:?}")));
        }
        let vertex = |s: &str| -> Result<usize> {
            s.parse()
                .map_err(|_| err(format!("bad vertex index {s:?}")))
        };
        let u = vertex(fields[0])?;
        let v = vertex(fields[1])?;
        let w: f64 = match fields.get(2) {
            Some(s) => s.parse().map_err(|_| err(format!("bad weight {s:?}")))?,
            None => 1.0,
        };
        g.add_edge(u, v, w).map_err(|e| err(e.to_string()))?;
    }
    graph.ok_or_else(|| Error::Parse {
        line: text.lines().count().max(1),
        message: "missing header `n <count>`".into(),
    })
}

pub fn read_edge_list(path: impl AsRef<Path>) -> Result<Graph> {
    parse_edge_list(&std::fs::read_to_string(path)?)
}

/// Serializes `g`; weights of exactly 1 are omitted, others use the shortest
/// representation that parses back to the same `f64`.
pub fn format_edge_list(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.n());
    for p in g.edges() {
        let w = g.weight(p.x, p.y);
        if w == 1.0 {
            let _ = writeln!(out, "{} {}", p.x, p.y);
        } else {
            let _ = writeln!(out, "{} {} {:?}", p.x, p.y, w);
        }
    }
    out
}

pub fn write_edge_list(g: &Graph, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, format_edge_list(g))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use proptest::prelude::*;

    #[test]
    fn parses_the_documented_example() {
        let text = "# cricket\nn 5\n0 1\n0 2\n1 2\n2 3 1.0  # hub\n\n2 4\n";
        assert_eq!(parse_edge_list(text).unwrap(), families::cricket());
    }

    #[test]
    fn rejects_malformed_input() {
        let cases = [
            ("0 1\n", 1),
            ("n 3\n0 0\n", 2),
            ("n 3\n0 1\n1 0\n", 3),
            ("n 3\n0 3\n", 2),
            ("n 3\n0 1 -2\n", 2),
            ("n 3\n0 1 2 3\n", 2),
            ("n 3\n0 x\n", 2),
            ("n 0\n", 1),
        ];
        for (text, line) in cases {
            match parse_edge_list(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
        assert!(matches!(
            parse_edge_list("# nothing\n"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn weighted_edges_survive_formatting() {
        let mut g = families::path(3).unwrap();
        g.set_weight(0, 1, 2.0);
        g.set_weight(1, 2, 0.1 + 0.2);
        assert_eq!(parse_edge_list(&format_edge_list(&g)).unwrap(), g);
    }

    proptest! {
        #[test]
        fn format_then_parse_is_identity(n in 2usize..9, mask in any::<u64>(), w in 0.01f64..100.0) {
            let slots = n * (n - 1) / 2;
            let mut g = Graph::from_mask(n, mask & ((1u64 << slots) - 1));
            if let Some(e) = g.edges().first() {
                g.set_weight(e.x, e.y, w);
            }
            prop_assert_eq!(parse_edge_list(&format_edge_list(&g)).unwrap(), g);
        }
    }
}
