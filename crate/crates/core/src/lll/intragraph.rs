use std::collections::{BTreeMap, BTreeSet};

use super::patterns::{path_violation, PathWitness};
use super::trace::{LetterSource, ResampleTrace, Round, TraceStatus};
use super::{LabelingFailure, LabelingRun, RunLimits};
use crate::graph::{enumerate_paths, paths_through_edge, DartId, Graph};
use crate::labeling::{Alphabet, Labeling, ScConstants};
use crate::ratio::{self, int, Rational};

/// Block threshold `E` and the longest path length examined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntragraphParams {
    pub e: Rational,
    pub max_length: usize,
}

impl IntragraphParams {
    /// `E = λ/(8λ+4A)` and `F = ⌊(2λ+A)·girth⌋`.
    pub fn new(lambda: Rational, diameter_ratio: Rational, girth: usize) -> Self {
        let e = lambda / (int(8) * lambda + int(4) * diameter_ratio);
        let f = (int(2) * lambda + diameter_ratio) * int(girth as i128);
        IntragraphParams { e, max_length: ratio::floor(&f) as usize }
    }

    pub fn from_constants(c: &ScConstants, index: usize) -> Self {
        IntragraphParams { e: c.e.0, max_length: c.max_pattern_length(index) }
    }
}

type Key = (usize, Vec<DartId>);

pub(crate) fn reversed_darts(g: &Graph, darts: &[DartId]) -> Vec<DartId> {
    darts.iter().rev().map(|&d| g.partner(d)).collect()
}

/// A path and its reverse describe one event; keep the smaller dart sequence.
pub(crate) fn is_canonical(g: &Graph, darts: &[DartId]) -> bool {
    darts <= reversed_darts(g, darts).as_slice()
}

pub(crate) fn describe(darts: &[DartId]) -> String {
    darts.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
}

struct Scanner<'a> {
    g: &'a Graph,
    params: &'a IntragraphParams,
    violations: BTreeMap<Key, PathWitness>,
}

impl Scanner<'_> {
    fn check(&mut self, lab: &Labeling, darts: Vec<DartId>) {
        let key = (darts.len(), darts);
        match path_violation(self.g, lab, &key.1, &self.params.e) {
            Some(w) => {
                self.violations.insert(key, w);
            }
            None => {
                self.violations.remove(&key);
            }
        }
    }

    fn full_scan(&mut self, lab: &Labeling) {
        self.violations.clear();
        for len in 2..=self.params.max_length {
            for p in enumerate_paths(self.g, len) {
                if is_canonical(self.g, &p.darts) {
                    self.check(lab, p.darts);
                }
            }
        }
    }

    fn rescan(&mut self, lab: &Labeling, edges: &[usize]) {
        let mut touched = BTreeSet::new();
        for &e in edges {
            for len in 2..=self.params.max_length {
                for p in paths_through_edge(self.g, e, len) {
                    if is_canonical(self.g, &p.darts) {
                        touched.insert(p.darts);
                    }
                }
            }
        }
        for darts in touched {
            self.check(lab, darts);
        }
    }
}

/// Resamples until no path of length `2..=F` is bad.
///
/// Each round takes the least violating path by (length, darts) and redraws
/// the edges of its smallest witness blocks.
pub fn label_intragraph(
    g: &Graph,
    params: &IntragraphParams,
    alphabet_size: u64,
    seed: u64,
    limits: RunLimits,
) -> Result<LabelingRun, LabelingFailure> {
    if alphabet_size == 0 {
        return Err(LabelingFailure::EmptyAlphabet);
    }
    let mut src = LetterSource::new(seed, Alphabet::new(alphabet_size));
    let mut lab = src.initial(g);
    let mut scanner = Scanner { g, params, violations: BTreeMap::new() };
    scanner.full_scan(&lab);
    let mut rounds = Vec::new();
    let status = loop {
        let Some((key, witness)) = scanner.violations.iter().next() else {
            break TraceStatus::Success;
        };
        if rounds.len() >= limits.max_rounds {
            break TraceStatus::Exhausted;
        }
        let event = format!("{:?}q{}@{}", witness.kind, witness.q, describe(&key.1));
        let edges = witness.edges.clone();
        src.resample(&mut lab, &edges);
        rounds.push(Round { event, edges: edges.clone() });
        if limits.full_rescan_every > 0 && rounds.len() % limits.full_rescan_every == 0 {
            scanner.full_scan(&lab);
        } else {
            scanner.rescan(&lab, &edges);
        }
    };
    let trace = ResampleTrace {
        kind: "intragraph".into(),
        graph: g.name().to_string(),
        seed,
        alphabet: alphabet_size,
        constants: vec![("E".into(), ratio::format(&params.e)), ("F".into(), params.max_length.to_string())],
        rounds,
        status,
    };
    match status {
        TraceStatus::Success => Ok(LabelingRun { labeling: lab, trace }),
        TraceStatus::Exhausted => Err(LabelingFailure::Exhausted { graph_index: 0, trace, partial: vec![lab] }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lll::patterns::{detect_bad_pattern, Classification};
    use crate::lll::trace::replay;
    use crate::ratio::rat;

    #[test]
    fn cycle_twelve_succeeds() {
        let g = Graph::cycle(12);
        let params = IntragraphParams::new(rat(1, 6), int(1), 12);
        assert_eq!((params.e, params.max_length), (rat(1, 32), 16));
        let run = label_intragraph(&g, &params, 16, 5, RunLimits::new(100_000)).unwrap();
        assert!(run.labeling.is_reduced(&g).is_ok());
        // F = 16 > girth, so word-level repeats of a path's own darts are expected;
        // paths shorter than the girth are simple and must be clean word-wise
        for len in 2..12 {
            for p in enumerate_paths(&g, len) {
                let w = run.labeling.word_of_darts(&p.darts);
                assert_eq!(detect_bad_pattern(&w, &params.e), Classification::None, "{p:?}");
            }
        }
        assert_eq!(replay(&g, &run.trace).unwrap(), run.labeling);
    }

    #[test]
    fn single_letter_fails() {
        let g = Graph::cycle(12);
        let params = IntragraphParams::new(rat(1, 6), int(1), 12);
        let err = label_intragraph(&g, &params, 1, 5, RunLimits::new(50)).unwrap_err();
        assert!(matches!(err, LabelingFailure::Exhausted { .. }));
    }

    #[test]
    fn deterministic() {
        let g = Graph::petersen();
        let params = IntragraphParams::new(rat(1, 6), int(1), 5);
        let a = label_intragraph(&g, &params, 64, 11, RunLimits::new(100_000)).unwrap();
        let b = label_intragraph(&g, &params, 64, 11, RunLimits::new(100_000)).unwrap();
        assert_eq!(a.labeling, b.labeling);
        assert_eq!(a.trace, b.trace);
        let c = label_intragraph(&g, &params, 64, 11, RunLimits { max_rounds: 100_000, full_rescan_every: 3 }).unwrap();
        assert_eq!(a.trace, c.trace);
    }
}
