//! Local-lemma hypothesis checks and the resampling engines built on it.

mod dictionary;
mod hypothesis;
mod intergraph;
mod intragraph;
mod patterns;
pub mod trace;

pub use dictionary::{build_dictionary, ForbiddenDictionary};
pub use hypothesis::{
    check_lll_hypothesis, intergraph_classes, intragraph_classes, ln_big, ClassMargin, EventClass,
    HypothesisError, HypothesisReport,
};
pub use intergraph::{graph_seed, label_intergraph, IntergraphRun};
pub use intragraph::{label_intragraph, IntragraphParams};
pub use patterns::{detect_bad_pattern, min_block, path_violation, Classification, PathWitness, PatternKind};
pub use trace::{parse_trace, replay, write_trace, ResampleTrace, Round, TraceError, TraceStatus};

use thiserror::Error;

use crate::labeling::Labeling;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunLimits {
    pub max_rounds: usize,
    /// Recompute all violations from scratch every this many rounds; 0 never.
    pub full_rescan_every: usize,
}

impl RunLimits {
    pub fn new(max_rounds: usize) -> Self {
        RunLimits { max_rounds, full_rescan_every: 0 }
    }
}

#[derive(Debug, Clone)]
pub struct LabelingRun {
    pub labeling: Labeling,
    pub trace: ResampleTrace,
}

#[derive(Debug, Clone, Error)]
pub enum LabelingFailure {
    #[error("alphabet must contain at least one generator")]
    EmptyAlphabet,
    #[error("graph {graph_index}: no clean labeling after {} rounds", trace.rounds.len())]
    Exhausted { graph_index: usize, trace: ResampleTrace, partial: Vec<Labeling> },
}
