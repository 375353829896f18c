use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::{metrics, Distance, Graph};

pub const DEFAULT_RETRY_BUDGET: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("n * degree must be even (n = {n}, degree = {degree})")]
    OddStubCount { n: usize, degree: usize },
    #[error("degree {degree} is not realizable as a simple graph on {n} vertices")]
    DegreeTooLarge { n: usize, degree: usize },
    #[error("no simple connected {degree}-regular graph with girth >= {min_girth} found on {n} vertices after {attempts} attempts")]
    BudgetExhausted { n: usize, degree: usize, min_girth: usize, attempts: usize },
}

/// Configuration-model sampler with rejection of loops, multi-edges,
/// disconnected outcomes and girth below `min_girth`.
pub fn random_regular(
    n: usize,
    degree: usize,
    seed: u64,
    min_girth: usize,
    budget: usize,
) -> Result<Graph, GenerateError> {
    if n * degree % 2 != 0 {
        return Err(GenerateError::OddStubCount { n, degree });
    }
    if degree >= n.max(1) {
        return Err(GenerateError::DegreeTooLarge { n, degree });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat(v).take(degree)).collect();
    for _ in 0..budget {
        stubs.shuffle(&mut rng);
        let mut edges: Vec<(usize, usize)> =
            stubs.chunks(2).map(|c| (c[0].min(c[1]), c[0].max(c[1]))).collect();
        if edges.iter().any(|&(u, v)| u == v) {
            continue;
        }
        edges.sort_unstable();
        if edges.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        let g = Graph::from_edges(format!("rr_n{n}_d{degree}_s{seed}"), n, &edges)
            .expect("stub vertices are in range");
        let Ok(m) = metrics(&g) else { continue };
        let girth_ok = match m.girth {
            Distance::Infinite => true,
            Distance::Finite(gi) => gi >= min_girth,
        };
        if girth_ok {
            return Ok(g);
        }
    }
    Err(GenerateError::BudgetExhausted { n, degree, min_girth, attempts: budget })
}
