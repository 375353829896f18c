//! A-posteriori verification of labeled families: repeated paths, pieces and
//! the C'(λ) condition. Shares no scanning code with the labeling engines.

mod cprime;
mod pieces;
mod repeats;
mod report;

pub use cprime::{check_cprime, CPrimeReport, CPrimeStatus, RelatorRatio};
pub use pieces::{piece_bound, PieceBound, PieceOptions, PieceWitness};
pub use repeats::{find_occurrences, longest_repeated_path, Occurrence, RepeatReport};
pub use report::{verify_family, GraphVerification, VerificationReport};

use crate::graph::{DartId, Graph, VertexId};
use crate::labeling::Labeling;

/// Covering data identifying occurrences that differ by a deck transformation.
/// Vertices `0..base_vertices` must form a fundamental domain.
#[derive(Debug, Clone, Copy)]
pub struct Quotient<'a> {
    pub vertex: &'a [VertexId],
    pub dart: &'a [DartId],
    pub base_vertices: usize,
}

/// A labeled graph taking part in a search.
#[derive(Debug, Clone, Copy)]
pub struct Relator<'a> {
    pub graph: &'a Graph,
    pub labeling: &'a Labeling,
    pub quotient: Option<Quotient<'a>>,
}

impl<'a> Relator<'a> {
    pub fn plain(graph: &'a Graph, labeling: &'a Labeling) -> Self {
        Relator { graph, labeling, quotient: None }
    }

    pub(crate) fn project(&self, u: VertexId) -> VertexId {
        self.quotient.map_or(u, |q| q.vertex[u])
    }

    pub(crate) fn fundamental(&self) -> usize {
        self.quotient.map_or(self.graph.vertex_count(), |q| q.base_vertices)
    }
}
