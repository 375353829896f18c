//! Labeled graph files.
//!
//! ```text
//! LGRAPH <name> V <n> E <m> S <alphabet-size>
//! u v s
//! ```
//! `u v s` declares an edge labeled `s` from `u` to `v` (and `-s` backwards).

use std::fmt::Write as _;

use thiserror::Error;

use super::{Alphabet, Labeling, LabelingError, Letter};
use crate::graph::io::{content_lines, parse_header, parse_usize, syntax, ParseError};
use crate::graph::Graph;

#[derive(Debug, Error)]
pub enum LabeledParseError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Labeling(#[from] LabelingError),
}

pub fn parse_labeled(text: &str) -> Result<(Graph, Labeling), LabeledParseError> {
    let mut lines = content_lines(text);
    let (line_no, header) = lines.next().ok_or_else(|| syntax(0, "empty input"))?;
    let (name, n, m, rest) = parse_header("LGRAPH", line_no, header)?;
    if rest.first() != Some(&"S") || rest.len() != 2 {
        return Err(syntax(line_no, "expected `S <alphabet-size>`").into());
    }
    let size: u64 = rest[1]
        .parse()
        .ok()
        .filter(|&s| s >= 1)
        .ok_or_else(|| syntax(line_no, "alphabet size must be a positive integer"))?;
    let mut edges = Vec::with_capacity(m);
    let mut letters = Vec::with_capacity(m);
    for (line_no, line) in lines {
        let mut toks = line.split_whitespace();
        let u = parse_usize(toks.next(), line_no, "vertex id")?;
        let v = parse_usize(toks.next(), line_no, "vertex id")?;
        let s = toks
            .next()
            .and_then(|t| t.trim_start_matches('+').parse::<i64>().ok())
            .and_then(Letter::new)
            .ok_or_else(|| syntax(line_no, "expected a nonzero signed label"))?;
        if toks.next().is_some() {
            return Err(syntax(line_no, "trailing tokens").into());
        }
        edges.push((u, v));
        letters.push(s);
    }
    if edges.len() != m {
        return Err(syntax(line_no, format!("header declares {m} edges, found {}", edges.len())).into());
    }
    let g = Graph::connected_from_edges(name, n, &edges).map_err(ParseError::from)?;
    let lab = Labeling::from_edge_letters(&g, Alphabet::new(size), &letters)?;
    Ok((g, lab))
}

pub fn write_labeled(g: &Graph, lab: &Labeling) -> String {
    let mut s = format!(
        "LGRAPH {} V {} E {} S {}\n",
        g.name(),
        g.vertex_count(),
        g.edge_count(),
        lab.alphabet().size
    );
    for ((u, v), l) in g.edges().zip(lab.edge_letters()) {
        let _ = writeln!(s, "{u} {v} {l}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let g = Graph::theta();
        let lab = Labeling::from_edge_values(&g, 5, &[1, -5, 3]).unwrap();
        let text = write_labeled(&g, &lab);
        let (g2, lab2) = parse_labeled(&text).unwrap();
        assert_eq!(g2, g);
        assert_eq!(lab2, lab);
        assert_eq!(write_labeled(&g2, &lab2), text);
    }

    #[test]
    fn bad_inputs() {
        assert!(parse_labeled("LGRAPH x V 2 E 1 S 2\n0 1 0\n").is_err());
        assert!(parse_labeled("LGRAPH x V 2 E 1 S 2\n0 1 3\n").is_err());
        assert!(parse_labeled("LGRAPH x V 2 E 1\n0 1 1\n").is_err());
        let (_, lab) = parse_labeled("LGRAPH x V 2 E 1 S 2\n0 1 +2 # c\n").unwrap();
        assert_eq!(lab.letter(1).value(), -2);
    }
}
