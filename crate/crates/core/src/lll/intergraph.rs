use std::collections::{BTreeMap, BTreeSet};

use super::dictionary::{build_dictionary, ForbiddenDictionary};
use super::intragraph::{describe, is_canonical};
use super::trace::{LetterSource, ResampleTrace, Round, TraceStatus};
use super::{LabelingFailure, RunLimits};
use crate::graph::{enumerate_paths, paths_through_edge, DartId, Graph};
use crate::labeling::{Alphabet, Labeling};

#[derive(Debug, Clone)]
pub struct IntergraphRun {
    pub labelings: Vec<Labeling>,
    pub traces: Vec<ResampleTrace>,
}

/// Seed of the random stream used for graph `index`.
pub fn graph_seed(seed: u64, index: usize) -> u64 {
    seed ^ (index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// (dictionary index, darts) of a path whose word occurs in an earlier graph.
type Key = (usize, Vec<DartId>);

fn violates(lab: &Labeling, dicts: &[ForbiddenDictionary], key: &Key) -> bool {
    dicts[key.0].contains(&lab.word_of_darts(&key.1))
}

fn full_scan(g: &Graph, lab: &Labeling, dicts: &[ForbiddenDictionary]) -> BTreeSet<Key> {
    let mut out = BTreeSet::new();
    for (i, d) in dicts.iter().enumerate() {
        for p in enumerate_paths(g, d.gamma) {
            let key = (i, p.darts);
            if is_canonical(g, &key.1) && violates(lab, dicts, &key) {
                out.insert(key);
            }
        }
    }
    out
}

/// Labels the graphs in order; each new graph is resampled until none of its
/// paths of length `γ_i` reads a word of an earlier graph `i`.
pub fn label_intergraph(
    graphs: &[Graph],
    gammas: &[usize],
    alphabet_size: u64,
    seed: u64,
    limits: RunLimits,
) -> Result<IntergraphRun, LabelingFailure> {
    assert_eq!(graphs.len(), gammas.len(), "one path length per graph");
    if alphabet_size == 0 {
        return Err(LabelingFailure::EmptyAlphabet);
    }
    let alphabet = Alphabet::new(alphabet_size);
    let mut labelings: Vec<Labeling> = Vec::new();
    let mut traces = Vec::new();
    let mut dicts: Vec<ForbiddenDictionary> = Vec::new();
    for (n, g) in graphs.iter().enumerate() {
        let s = graph_seed(seed, n);
        let mut src = LetterSource::new(s, alphabet);
        let mut lab = src.initial(g);
        let mut violations = full_scan(g, &lab, &dicts);
        let mut rounds = Vec::new();
        let status = loop {
            let Some(key) = violations.iter().next().cloned() else {
                break TraceStatus::Success;
            };
            if rounds.len() >= limits.max_rounds {
                break TraceStatus::Exhausted;
            }
            let mut edges: Vec<usize> = key.1.iter().map(|&d| Graph::edge_of(d)).collect();
            edges.sort_unstable();
            edges.dedup();
            src.resample(&mut lab, &edges);
            rounds.push(Round { event: format!("G{}@{}", key.0, describe(&key.1)), edges: edges.clone() });
            if limits.full_rescan_every > 0 && rounds.len() % limits.full_rescan_every == 0 {
                violations = full_scan(g, &lab, &dicts);
                continue;
            }
            let mut touched: BTreeMap<Key, ()> = BTreeMap::new();
            for (i, d) in dicts.iter().enumerate() {
                for &e in &edges {
                    for p in paths_through_edge(g, e, d.gamma) {
                        if is_canonical(g, &p.darts) {
                            touched.insert((i, p.darts), ());
                        }
                    }
                }
            }
            for (key, ()) in touched {
                if violates(&lab, &dicts, &key) {
                    violations.insert(key);
                } else {
                    violations.remove(&key);
                }
            }
        };
        let trace = ResampleTrace {
            kind: "intergraph".into(),
            graph: g.name().to_string(),
            seed: s,
            alphabet: alphabet_size,
            constants: vec![
                ("index".into(), n.to_string()),
                ("gamma".into(), gammas.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")),
            ],
            rounds,
            status,
        };
        if status == TraceStatus::Exhausted {
            labelings.push(lab);
            traces.push(trace.clone());
            return Err(LabelingFailure::Exhausted { graph_index: n, trace, partial: labelings });
        }
        dicts.push(build_dictionary(g, &lab, gammas[n]));
        labelings.push(lab);
        traces.push(trace);
    }
    Ok(IntergraphRun { labelings, traces })
}
