//! Line-oriented text formats for graphs and edge bijections.
//!
//! Graph documents:
//!
//! ```text
//! # theta graph
//! basepoint a
//! edge e1 a b
//! edge e2 a b
//! vertex z        # isolated vertices only need a vertex line
//! ```
//!
//! Bijection documents, one line per source edge:
//!
//! ```text
//! e1 -> f2 +
//! e2 -> f1 -
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeBijection, EdgeId, Multigraph, Sign, VertexId};

/// Whitespace-separated tokens of a line with `#` comments removed, each with
/// its 1-based column.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let content = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in content.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s + 1, &content[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &content[s..]));
    }
    out
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Parses a graph document.
///
/// Vertices are the basepoint, every edge endpoint and every `vertex` line.
pub fn parse_graph(text: &str) -> Result<Multigraph> {
    let mut basepoint: Option<(usize, usize, VertexId)> = None;
    let mut vertices = BTreeSet::new();
    let mut edges = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let n = n + 1;
        let toks = tokens(line);
        let Some(&(col, keyword)) = toks.first() else {
            continue;
        };
        let arity = |k: usize| -> Result<()> {
            if toks.len() == k + 1 {
                Ok(())
            } else {
                Err(parse_error(
                    n,
                    col,
                    format!(
                        "`{keyword}` takes {k} argument(s), found {}",
                        toks.len() - 1
                    ),
                ))
            }
        };
        match keyword {
            "basepoint" => {
                arity(1)?;
                if let Some((first, _, _)) = basepoint {
                    return Err(parse_error(
                        n,
                        col,
                        format!("duplicate basepoint (first given on line {first})"),
                    ));
                }
                basepoint = Some((n, toks[1].0, toks[1].1.into()));
            }
            "vertex" => {
                arity(1)?;
                vertices.insert(VertexId::from(toks[1].1));
            }
            "edge" => {
                arity(3)?;
                let (id_col, id) = toks[1];
                let edge = Edge {
                    tail: toks[2].1.into(),
                    head: toks[3].1.into(),
                };
                vertices.insert(edge.tail.clone());
                vertices.insert(edge.head.clone());
                if edges.insert(EdgeId::from(id), edge).is_some() {
                    return Err(parse_error(n, id_col, format!("duplicate edge id {id}")));
                }
            }
            other => return Err(parse_error(n, col, format!("unknown keyword `{other}`"))),
        }
    }
    let Some((line, column, base)) = basepoint else {
        return Err(parse_error(1, 1, "missing basepoint"));
    };
    if !vertices.contains(&base) {
        return Err(parse_error(
            line,
            column,
            format!("basepoint {base} is not a vertex of the graph"),
        ));
    }
    Multigraph::new(vertices, edges, base)
}

/// Canonical graph document: basepoint, isolated vertices, then edges in id
/// order. `parse_graph(&write_graph(g)) == g`.
pub fn write_graph(g: &Multigraph) -> String {
    let mut out = String::new();
    writeln!(out, "basepoint {}", g.basepoint()).unwrap();
    let touched: BTreeSet<&VertexId> = g
        .edges()
        .values()
        .flat_map(|e| [&e.tail, &e.head])
        .collect();
    for v in g.vertices() {
        if !touched.contains(v) {
            writeln!(out, "vertex {v}").unwrap();
        }
    }
    for (id, e) in g.edges() {
        writeln!(out, "edge {id} {} {}", e.tail, e.head).unwrap();
    }
    out
}

/// Parses a bijection document. Injectivity is checked here; matching the two
/// edge sets is checked against the graphs by the consumer.
pub fn parse_bijection(text: &str) -> Result<EdgeBijection> {
    let mut map = BTreeMap::new();
    let mut targets: BTreeMap<EdgeId, usize> = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let n = n + 1;
        let toks = tokens(line);
        if toks.is_empty() {
            continue;
        }
        if toks.len() != 4 || toks[1].1 != "->" {
            let col = toks.first().map_or(1, |t| t.0);
            return Err(parse_error(n, col, "expected `<edge> -> <edge> <+|->`"));
        }
        let sign = match toks[3].1 {
            "+" => Sign::Plus,
            "-" => Sign::Minus,
            s => {
                return Err(parse_error(
                    n,
                    toks[3].0,
                    format!("sign must be + or -, found {s}"),
                ))
            }
        };
        let (src, dst) = (EdgeId::from(toks[0].1), EdgeId::from(toks[2].1));
        if map.contains_key(&src) {
            return Err(parse_error(
                n,
                toks[0].0,
                format!("edge {src} mapped twice"),
            ));
        }
        if let Some(first) = targets.insert(dst.clone(), n) {
            return Err(parse_error(
                n,
                toks[2].0,
                format!("edge {dst} already hit on line {first}"),
            ));
        }
        map.insert(src, (dst, sign));
    }
    EdgeBijection::new(map)
}

pub fn write_bijection(phi: &EdgeBijection) -> String {
    let mut out = String::new();
    for (a, (b, s)) in phi.iter() {
        writeln!(out, "{a} -> {b} {}", s.symbol()).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_theta() {
        let g = parse_graph("basepoint a\nedge e1 a b\nedge e2 a b\nedge e3 a b").unwrap();
        let theta =
            Multigraph::from_edges("a", &[("e1", "a", "b"), ("e2", "a", "b"), ("e3", "a", "b")])
                .unwrap();
        assert_eq!(g, theta);
    }

    #[test]
    fn missing_basepoint() {
        let err = parse_graph("edge e1 a b").unwrap_err();
        assert!(err.to_string().contains("missing basepoint"), "{err}");
    }

    #[test]
    fn duplicate_edge() {
        let err = parse_graph("basepoint a\nedge e1 a b\nedge e1 b a").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 3,
                column: 6,
                message: "duplicate edge id e1".into()
            }
        );
    }

    #[test]
    fn duplicate_basepoint_and_unknown_vertex() {
        assert!(parse_graph("basepoint a\nbasepoint b\nedge e a b").is_err());
        let err = parse_graph("basepoint z\nedge e1 a b").unwrap_err();
        assert!(err.to_string().contains("not a vertex"), "{err}");
    }

    #[test]
    fn comments_and_isolated_vertices() {
        let text = "# loop\n  basepoint a   # here\n\nvertex z\nedge l a a\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn syntax_errors_carry_columns() {
        let err = parse_graph("basepoint a\n   edge e1 a").unwrap_err();
        assert!(
            matches!(
                err,
                Error::Parse {
                    line: 2,
                    column: 4,
                    ..
                }
            ),
            "{err:?}"
        );
        let err = parse_graph("basepoint a\nnode x").unwrap_err();
        assert!(
            matches!(
                err,
                Error::Parse {
                    line: 2,
                    column: 1,
                    ..
                }
            ),
            "{err:?}"
        );
    }

    #[test]
    fn bijection_round_trip() {
        let phi = parse_bijection("e1 -> f2 +\n# c\ne2 -> f1 -\n").unwrap();
        assert_eq!(phi.get(&"e2".into()).unwrap(), &("f1".into(), Sign::Minus));
        assert_eq!(parse_bijection(&write_bijection(&phi)).unwrap(), phi);
    }

    #[test]
    fn bijection_errors() {
        assert!(parse_bijection("e1 -> f1 *").is_err());
        assert!(parse_bijection("e1 f1 +").is_err());
        assert!(parse_bijection("e1 -> f1 +\ne1 -> f2 +").is_err());
        let err = parse_bijection("e1 -> f1 +\ne2 -> f1 -").unwrap_err();
        assert!(
            matches!(
                err,
                Error::Parse {
                    line: 2,
                    column: 7,
                    ..
                }
            ),
            "{err:?}"
        );
    }
}
