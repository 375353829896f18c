//! Second adjacency eigenvalue by deflated power iteration. Informational.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sclab_core::graph::Graph;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralEstimate {
    pub top: f64,
    /// Largest absolute eigenvalue orthogonal to the top eigenvector.
    pub second: f64,
    pub iterations: usize,
}

fn apply(g: &Graph, x: &[f64]) -> Vec<f64> {
    let mut y = vec![0.0; x.len()];
    for (v, yv) in y.iter_mut().enumerate() {
        for &d in g.out_darts(v) {
            *yv += x[g.target(d)];
        }
    }
    y
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(x: &mut [f64]) -> f64 {
    let n = dot(x, x).sqrt();
    if n > 0.0 {
        x.iter_mut().for_each(|v| *v /= n);
    }
    n
}

fn power(g: &Graph, seed: u64, iterations: usize, deflate: Option<&[f64]>) -> (f64, Vec<f64>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x: Vec<f64> = (0..g.vertex_count()).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let project = |x: &mut Vec<f64>| {
        if let Some(u) = deflate {
            let c = dot(x, u);
            x.iter_mut().zip(u).for_each(|(a, b)| *a -= c * b);
        }
    };
    project(&mut x);
    normalize(&mut x);
    let mut value = 0.0;
    for _ in 0..iterations {
        // squaring the operator keeps ±λ from oscillating
        let mut y = apply(g, &apply(g, &x));
        project(&mut y);
        value = normalize(&mut y).sqrt();
        x = y;
    }
    (value, x)
}

pub fn second_eigenvalue(g: &Graph, seed: u64, iterations: usize) -> SpectralEstimate {
    let (top, u) = power(g, seed, iterations, None);
    let (second, _) = power(g, seed.wrapping_add(1), iterations, Some(&u));
    SpectralEstimate { top, second, iterations }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn petersen_spectrum() {
        // eigenvalues 3, 1, -2
        let e = second_eigenvalue(&Graph::petersen(), 1, 500);
        assert!((e.top - 3.0).abs() < 1e-9);
        assert!((e.second - 2.0).abs() < 1e-6);
    }

    #[test]
    fn complete_graph() {
        let e = second_eigenvalue(&Graph::complete(6), 3, 300);
        assert!((e.top - 5.0).abs() < 1e-9);
        assert!((e.second - 1.0).abs() < 1e-6);
    }
}
