//! DIMACS-style edge lists.
//!
//! ```text
//! c optional comment lines
//! p edge <n> <m>
//! e <i> <j>        (m lines, 1-indexed)
//! ```
//!
//! `p col` is accepted as a synonym of `p edge`. Edge endpoints may appear in
//! either order on input; output always writes `i < j` in row-major order.

use std::fmt::Write as _;

use super::{Graph, MAX_VERTICES};
use crate::error::{Error, Result};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_num(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| {
        parse_err(
            line,
            format!("{what} `{tok}` is not a non-negative integer"),
        )
    })
}

pub fn read_edge_list(text: &str) -> Result<Graph> {
    let mut graph: Option<(Graph, usize)> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut toks = raw.split_whitespace();
        let Some(tag) = toks.next() else { continue };
        match tag {
            "c" => continue,
            "p" => {
                if graph.is_some() {
                    return Err(parse_err(line, "duplicate problem line"));
                }
                match toks.next() {
                    Some("edge") | Some("col") => {}
                    other => {
                        return Err(parse_err(
                            line,
                            format!("expected `p edge <n> <m>`, found format {other:?}"),
                        ))
                    }
                }
                let n = parse_num(toks.next(), line, "vertex count")?;
                let m = parse_num(toks.next(), line, "edge count")?;
                if toks.next().is_some() {
                    return Err(parse_err(line, "trailing tokens on problem line"));
                }
                if n == 0 {
                    return Err(parse_err(line, "vertex count must be at least 1"));
                }
                if n > MAX_VERTICES {
                    return Err(parse_err(
                        line,
                        format!("vertex count {n} exceeds the limit of {MAX_VERTICES}"),
                    ));
                }
                graph = Some((Graph::empty(n)?, m));
            }
            "e" => {
                let Some((g, _)) = graph.as_mut() else {
                    return Err(parse_err(line, "edge line before problem line"));
                };
                let i = parse_num(toks.next(), line, "edge endpoint")?;
                let j = parse_num(toks.next(), line, "edge endpoint")?;
                if toks.next().is_some() {
                    return Err(parse_err(line, "trailing tokens on edge line"));
                }
                let n = g.n();
                if i == 0 || j == 0 || i > n || j > n {
                    return Err(parse_err(
                        line,
                        format!("vertex index out of range 1..={n} in edge ({i}, {j})"),
                    ));
                }
                if i == j {
                    return Err(parse_err(line, format!("self-loop at vertex {i}")));
                }
                if !g.insert(i - 1, j - 1) {
                    return Err(parse_err(line, format!("duplicate edge ({i}, {j})")));
                }
            }
            other => return Err(parse_err(line, format!("unknown line type `{other}`"))),
        }
    }

    let (g, m) =
        graph.ok_or_else(|| parse_err(text.lines().count().max(1), "missing problem line"))?;
    if g.edge_count() != m {
        return Err(parse_err(
            text.lines().count().max(1),
            format!(
                "header declares {m} edges but {} were listed",
                g.edge_count()
            ),
        ));
    }
    Ok(g)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::with_capacity(16 + 12 * g.edge_count());
    let _ = writeln!(out, "p edge {} {}", g.n(), g.edge_count());
    for (i, j) in g.edges() {
        let _ = writeln!(out, "e {} {}", i + 1, j + 1);
    }
    out
}
