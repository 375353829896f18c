use num_integer::Roots;
use serde::Serialize;

use super::functions::Monotone;
use super::walls::WallSides;
use crate::graph::{bfs_distances, Graph, VertexId};
use crate::ratio::{self, Rational};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairMargin {
    pub p: VertexId,
    pub q: VertexId,
    pub distance: usize,
    pub wall_distance: usize,
    /// `min{√d/2, Ω(Δ(√d))}`, rounded for display.
    pub psi: f64,
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProperReport {
    /// Every pair satisfies `d_W ≤ d` and `d_W ≥ Ψ(d)`.
    pub ok: bool,
    pub metric_ok: bool,
    pub pairs: usize,
    /// Pairs where Ω or Δ could not be evaluated.
    pub undecided: usize,
    pub failures: usize,
    /// Least margin over distinct pairs.
    pub worst: Option<PairMargin>,
    pub first_failure: Option<PairMargin>,
}

const SCALE_BITS: u32 = 24;

/// Rational bounds `lo ≤ √d ≤ hi`.
fn sqrt_bounds(d: usize) -> (Rational, Rational) {
    let scaled = (d as i128) << (2 * SCALE_BITS);
    let r = scaled.sqrt();
    let den = 1i128 << SCALE_BITS;
    let hi = if r * r == scaled { r } else { r + 1 };
    (Rational::new(r, den), Rational::new(hi, den))
}

/// Decides `wall ≥ Ω(Δ(√d))` exactly where possible.
fn above_composite(wall: usize, d: usize, omega: &Monotone, delta: &Monotone) -> Option<bool> {
    let w = ratio::int(wall as i128);
    let root = d.sqrt();
    if root * root == d {
        let v = omega.eval(&delta.eval(&ratio::int(root as i128))?)?;
        return Some(w >= v);
    }
    if let Some((a, b)) = omega.compose_affine(delta) {
        // w ≥ a√d + b  with a ≥ 0
        let lhs = w - b;
        if lhs < ratio::int(0) {
            return Some(false);
        }
        return Some(lhs * lhs >= a * a * ratio::int(d as i128));
    }
    let (lo, hi) = sqrt_bounds(d);
    if w >= omega.eval(&delta.eval(&hi)?)? {
        return Some(true);
    }
    if w < omega.eval(&delta.eval(&lo)?)? {
        return Some(false);
    }
    None
}

/// `d_W ≥ min{√d/2, Ω(Δ(√d))}`.
fn psi_holds(wall: usize, d: usize, omega: &Monotone, delta: &Monotone) -> Option<bool> {
    if 4 * wall * wall >= d {
        return Some(true);
    }
    above_composite(wall, d, omega, delta)
}

fn psi_f64(d: usize, omega: &Monotone, delta: &Monotone) -> f64 {
    let s = (d as f64).sqrt();
    let half = s / 2.0;
    let composite = delta
        .eval(&Rational::approximate_float(s).unwrap_or_else(|| ratio::int(0)))
        .and_then(|x| omega.eval(&x))
        .map(|x| ratio::to_f64(&x));
    composite.map_or(half, |c| half.min(c))
}

/// Checks `d ≥ d_W ≥ Ψ(d)` over pairs with first point in `0..sources`.
pub fn properness_check(g: &Graph, sides: &WallSides, omega: &Monotone, delta: &Monotone, sources: usize) -> ProperReport {
    let mut report =
        ProperReport { ok: true, metric_ok: true, pairs: 0, undecided: 0, failures: 0, worst: None, first_failure: None };
    for p in 0..sources.min(g.vertex_count()) {
        let dist = bfs_distances(g, p);
        for q in 0..g.vertex_count() {
            let d = dist[q];
            if d == usize::MAX {
                continue;
            }
            let w = sides.metric(p, q);
            report.pairs += 1;
            let psi = psi_f64(d, omega, delta);
            let pair = PairMargin { p, q, distance: d, wall_distance: w, psi, margin: w as f64 - psi };
            if w > d {
                report.metric_ok = false;
            }
            let holds = psi_holds(w, d, omega, delta);
            match holds {
                Some(true) => {}
                Some(false) => {
                    report.failures += 1;
                    if report.first_failure.is_none() {
                        report.first_failure = Some(pair.clone());
                    }
                }
                None => report.undecided += 1,
            }
            if p != q && report.worst.as_ref().is_none_or(|x| pair.margin < x.margin) {
                report.worst = Some(pair);
            }
        }
    }
    report.ok = report.metric_ok && report.failures == 0 && report.undecided == 0;
    report
}
