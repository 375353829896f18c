//! Plain-text graph files.
//!
//! ```text
//! GRAPH <name> V <n> E <m>
//! u v
//! ...
//! ```
//! One line per undirected edge, 0-based vertex ids, `#` starts a comment.

use std::fmt::Write as _;

use thiserror::Error;

use super::{Graph, GraphError};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub(crate) fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, msg: msg.into() }
}

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

pub(crate) fn parse_usize(tok: Option<&str>, line: usize, what: &str) -> Result<usize, ParseError> {
    tok.and_then(|t| t.parse().ok()).ok_or_else(|| syntax(line, format!("expected {what}")))
}

/// Parses the `<KEYWORD> <name> V <n> E <m>` prefix; returns the remaining tokens.
pub(crate) fn parse_header<'a>(
    keyword: &str,
    line_no: usize,
    line: &'a str,
) -> Result<(String, usize, usize, Vec<&'a str>), ParseError> {
    let mut toks = line.split_whitespace();
    if toks.next() != Some(keyword) {
        return Err(syntax(line_no, format!("expected `{keyword}` header")));
    }
    let name = toks.next().ok_or_else(|| syntax(line_no, "missing graph name"))?.to_string();
    if toks.next() != Some("V") {
        return Err(syntax(line_no, "expected `V`"));
    }
    let n = parse_usize(toks.next(), line_no, "vertex count")?;
    if toks.next() != Some("E") {
        return Err(syntax(line_no, "expected `E`"));
    }
    let m = parse_usize(toks.next(), line_no, "edge count")?;
    Ok((name, n, m, toks.collect()))
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut lines = content_lines(text);
    let (line_no, header) = lines.next().ok_or_else(|| syntax(0, "empty input"))?;
    let (name, n, m, rest) = parse_header("GRAPH", line_no, header)?;
    if !rest.is_empty() {
        return Err(syntax(line_no, "trailing tokens in header"));
    }
    let mut edges = Vec::with_capacity(m);
    for (line_no, line) in lines {
        let mut toks = line.split_whitespace();
        let u = parse_usize(toks.next(), line_no, "vertex id")?;
        let v = parse_usize(toks.next(), line_no, "vertex id")?;
        if toks.next().is_some() {
            return Err(syntax(line_no, "trailing tokens"));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(syntax(line_no, format!("header declares {m} edges, found {}", edges.len())));
    }
    Ok(Graph::connected_from_edges(name, n, &edges)?)
}

pub fn write_graph(g: &Graph) -> String {
    let mut s = format!("GRAPH {} V {} E {}\n", g.name(), g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_bit_exact() {
        for g in [Graph::petersen(), Graph::theta(), Graph::cycle(1)] {
            let text = write_graph(&g);
            let back = parse_graph(&text).unwrap();
            assert_eq!(back, g);
            assert_eq!(write_graph(&back), text);
        }
    }

    #[test]
    fn comments_and_errors() {
        let g = parse_graph("# triangle\nGRAPH t V 3 E 3\n0 1\n1 2 # closing\n2 0\n").unwrap();
        assert_eq!(g.edge_count(), 3);
        assert!(parse_graph("GRAPH t V 3 E 2\n0 1\n").is_err());
        assert!(parse_graph("GRAPH t V 4 E 2\n0 1\n2 3\n").is_err());
        assert!(parse_graph("GRAF t V 1 E 0\n").is_err());
    }
}
