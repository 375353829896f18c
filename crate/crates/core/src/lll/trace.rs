//! Resampling logs and their replay.
//!
//! ```text
//! TRACE <kind> <graph-name>
//! SEED <u64>
//! ALPHABET <size>
//! CONSTANTS <key=value ...>
//! ROUND <k> EVENT <desc> EDGES <e1> <e2> ...
//! STATUS <success|exhausted> <rounds>
//! ```

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::Graph;
use crate::labeling::{Alphabet, Labeling, Letter};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceStatus {
    Success,
    Exhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Round {
    pub event: String,
    pub edges: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResampleTrace {
    pub kind: String,
    pub graph: String,
    pub seed: u64,
    pub alphabet: u64,
    pub constants: Vec<(String, String)>,
    pub rounds: Vec<Round>,
    pub status: TraceStatus,
}

#[derive(Debug, Error)]
pub enum TraceError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("trace is for `{trace}`, graph is `{graph}`")]
    GraphMismatch { trace: String, graph: String },
    #[error("edge {edge} out of range")]
    EdgeOutOfRange { edge: usize },
}

/// The single random stream behind a labeling run.
pub(crate) struct LetterSource {
    rng: ChaCha8Rng,
    alphabet: Alphabet,
}

impl LetterSource {
    pub(crate) fn new(seed: u64, alphabet: Alphabet) -> Self {
        LetterSource { rng: ChaCha8Rng::seed_from_u64(seed), alphabet }
    }

    pub(crate) fn draw(&mut self) -> Letter {
        self.alphabet.letter_at(self.rng.gen_range(0..2 * self.alphabet.size))
    }

    pub(crate) fn initial(&mut self, g: &Graph) -> Labeling {
        let letters: Vec<Letter> = (0..g.edge_count()).map(|_| self.draw()).collect();
        Labeling::from_edge_letters(g, self.alphabet, &letters).expect("drawn letters lie in the alphabet")
    }

    pub(crate) fn resample(&mut self, lab: &mut Labeling, edges: &[usize]) {
        for &k in edges {
            let l = self.draw();
            lab.set(2 * k, l);
        }
    }
}

/// Redraws the labeling recorded by `trace` from its seed.
pub fn replay(g: &Graph, trace: &ResampleTrace) -> Result<Labeling, TraceError> {
    if trace.graph != g.name() {
        return Err(TraceError::GraphMismatch { trace: trace.graph.clone(), graph: g.name().to_string() });
    }
    let mut src = LetterSource::new(trace.seed, Alphabet::new(trace.alphabet));
    let mut lab = src.initial(g);
    for r in &trace.rounds {
        if let Some(&edge) = r.edges.iter().find(|&&k| k >= g.edge_count()) {
            return Err(TraceError::EdgeOutOfRange { edge });
        }
        src.resample(&mut lab, &r.edges);
    }
    Ok(lab)
}

pub fn write_trace(t: &ResampleTrace) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "TRACE {} {}", t.kind, t.graph);
    let _ = writeln!(s, "SEED {}", t.seed);
    let _ = writeln!(s, "ALPHABET {}", t.alphabet);
    s.push_str("CONSTANTS");
    for (k, v) in &t.constants {
        let _ = write!(s, " {k}={v}");
    }
    s.push('\n');
    for (i, r) in t.rounds.iter().enumerate() {
        let _ = write!(s, "ROUND {} EVENT {} EDGES", i + 1, r.event);
        for e in &r.edges {
            let _ = write!(s, " {e}");
        }
        s.push('\n');
    }
    let status = match t.status {
        TraceStatus::Success => "success",
        TraceStatus::Exhausted => "exhausted",
    };
    let _ = writeln!(s, "STATUS {} {}", status, t.rounds.len());
    s
}

fn syntax(line: usize, msg: impl Into<String>) -> TraceError {
    TraceError::Syntax { line, msg: msg.into() }
}

pub fn parse_trace(text: &str) -> Result<ResampleTrace, TraceError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
    let mut next = |key: &str| -> Result<(usize, Vec<String>), TraceError> {
        let (n, l) = lines.next().ok_or_else(|| syntax(0, format!("missing {key} line")))?;
        let mut toks = l.split_whitespace();
        if toks.next() != Some(key) {
            return Err(syntax(n, format!("expected {key}")));
        }
        Ok((n, toks.map(str::to_string).collect()))
    };
    let (n, head) = next("TRACE")?;
    let [kind, graph] = <[String; 2]>::try_from(head).map_err(|_| syntax(n, "expected `TRACE <kind> <graph>`"))?;
    let (n, seed) = next("SEED")?;
    let seed = seed.first().and_then(|s| s.parse().ok()).ok_or_else(|| syntax(n, "bad seed"))?;
    let (n, alpha) = next("ALPHABET")?;
    let alphabet = alpha.first().and_then(|s| s.parse().ok()).filter(|&a: &u64| a >= 1);
    let alphabet = alphabet.ok_or_else(|| syntax(n, "bad alphabet size"))?;
    let (n, consts) = next("CONSTANTS")?;
    let constants = consts
        .iter()
        .map(|kv| kv.split_once('=').map(|(k, v)| (k.to_string(), v.to_string())))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| syntax(n, "constants must be key=value"))?;
    let mut rounds = Vec::new();
    let mut status = None;
    for (n, l) in lines {
        if let Some(rest) = l.strip_prefix("STATUS ") {
            let mut toks = rest.split_whitespace();
            status = Some(match toks.next() {
                Some("success") => TraceStatus::Success,
                Some("exhausted") => TraceStatus::Exhausted,
                _ => return Err(syntax(n, "bad status")),
            });
            if toks.next().and_then(|c| c.parse::<usize>().ok()) != Some(rounds.len()) {
                return Err(syntax(n, "round count mismatch"));
            }
            continue;
        }
        if status.is_some() {
            return Err(syntax(n, "content after STATUS"));
        }
        let rest = l.strip_prefix("ROUND ").ok_or_else(|| syntax(n, "expected ROUND"))?;
        let (k, rest) = rest.split_once(" EVENT ").ok_or_else(|| syntax(n, "expected EVENT"))?;
        if k.parse::<usize>().ok() != Some(rounds.len() + 1) {
            return Err(syntax(n, "rounds out of order"));
        }
        let (event, edges) = match rest.split_once(" EDGES") {
            Some((e, rest)) => (e, rest),
            None => return Err(syntax(n, "expected EDGES")),
        };
        let edges = edges
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| syntax(n, "bad edge index")))
            .collect::<Result<Vec<usize>, _>>()?;
        rounds.push(Round { event: event.to_string(), edges });
    }
    let status = status.ok_or_else(|| syntax(0, "missing STATUS"))?;
    Ok(ResampleTrace { kind, graph, seed, alphabet, constants, rounds, status })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_replay() {
        let g = Graph::cycle(5);
        let t = ResampleTrace {
            kind: "intragraph".into(),
            graph: g.name().into(),
            seed: 7,
            alphabet: 4,
            constants: vec![("E".into(), "1/32".into())],
            rounds: vec![Round { event: "Aq1@0,2".into(), edges: vec![0, 1] }],
            status: TraceStatus::Success,
        };
        let text = write_trace(&t);
        assert_eq!(parse_trace(&text).unwrap(), t);
        let a = replay(&g, &t).unwrap();
        let b = replay(&g, &t).unwrap();
        assert_eq!(a, b);
        let mut src = LetterSource::new(7, Alphabet::new(4));
        let mut manual = src.initial(&g);
        src.resample(&mut manual, &[0, 1]);
        assert_eq!(a, manual);
    }

    #[test]
    fn malformed() {
        assert!(parse_trace("TRACE x g\nSEED 1\nALPHABET 2\nCONSTANTS\nSTATUS success 1\n").is_err());
        assert!(parse_trace("TRACE x g\nSEED 1\nALPHABET 0\nCONSTANTS\nSTATUS success 0\n").is_err());
        assert!(parse_trace("TRACE x g\nSEED 1\nALPHABET 2\nCONSTANTS\nSTATUS success 0\n").is_ok());
    }
}
