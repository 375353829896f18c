//! Graphical presentations over a bouquet of loops: Dehn-style shortcut
//! reduction, bounded word-problem queries and Cayley-graph patches.

mod abelian;
mod cayley;
mod shortcut;
mod trivial;

pub use abelian::AbelianInvariant;
pub use cayley::{cayley_patch, embedding_check, CayleyPatch, EmbeddingPair, EmbeddingReport};
pub use shortcut::{free_reduce, shortcut_reduce, Shortcut};
pub use trivial::{is_trivial, Triviality};

use thiserror::Error;

use crate::graph::{metrics, Graph};
use crate::labeling::{Alphabet, Labeling};
use crate::ratio::rat;
use crate::verify::{check_cprime, CPrimeReport, CPrimeStatus, Relator};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("relator {index}: labeling is not reduced")]
    NotReduced { index: usize },
    #[error("relator {index}: alphabet of size {found} differs from {expected}")]
    Alphabet { index: usize, found: u64, expected: u64 },
    #[error("relator {index}: graph is empty or disconnected")]
    Disconnected { index: usize },
}

#[derive(Debug, Clone)]
pub struct PresentedRelator {
    pub graph: Graph,
    pub labeling: Labeling,
    pub distances: Vec<Vec<usize>>,
    pub girth: Option<usize>,
}

/// `⟨S | relators⟩` with the C'(1/24) status of its relators.
#[derive(Debug, Clone)]
pub struct GraphicalPresentation {
    pub alphabet: Alphabet,
    pub relators: Vec<PresentedRelator>,
    pub cprime: CPrimeReport,
    abelian: AbelianInvariant,
}

impl GraphicalPresentation {
    pub fn new(alphabet_size: u64, relators: Vec<(Graph, Labeling)>) -> Result<Self, PresentationError> {
        let mut out = Vec::new();
        for (index, (graph, labeling)) in relators.into_iter().enumerate() {
            if labeling.alphabet().size != alphabet_size {
                return Err(PresentationError::Alphabet {
                    index,
                    found: labeling.alphabet().size,
                    expected: alphabet_size,
                });
            }
            if labeling.is_reduced(&graph).is_err() {
                return Err(PresentationError::NotReduced { index });
            }
            let m = metrics(&graph).map_err(|_| PresentationError::Disconnected { index })?;
            out.push(PresentedRelator { distances: m.distances, girth: m.girth.finite(), graph, labeling });
        }
        let views: Vec<Relator<'_>> = out.iter().map(|r| Relator::plain(&r.graph, &r.labeling)).collect();
        let cprime = check_cprime(&views, rat(1, 24), usize::MAX);
        let alphabet = Alphabet::new(alphabet_size);
        let abelian = AbelianInvariant::new(alphabet_size, &out);
        Ok(GraphicalPresentation { alphabet, relators: out, cprime, abelian })
    }

    pub fn free(alphabet_size: u64) -> Self {
        Self::new(alphabet_size, Vec::new()).expect("no relators to reject")
    }

    /// Certified C'(1/24): the regime where a nonempty shortcut fixed point
    /// is a nontrivial element.
    pub fn certified(&self) -> bool {
        self.cprime.status == CPrimeStatus::Holds
    }

    pub fn abelian(&self) -> &AbelianInvariant {
        &self.abelian
    }
}
