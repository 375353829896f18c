//! Local-lemma hypothesis checker.
//!
//! Values span hundreds of orders of magnitude, so everything is compared in
//! the log domain with outward padding: the left side is pushed up and the
//! right side down before the comparison.

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::ratio::{self, Rational};

/// One class of equiprobable events.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EventClass {
    pub index: usize,
    pub path_length: usize,
    /// Natural log of the probability bound; `-inf` for probability zero.
    pub log_p: f64,
    pub a_value: f64,
    /// `delta[j]` bounds the number of dependent events from class `j`.
    pub delta: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HypothesisError {
    #[error("class {index}: a = {a} outside [0, 1)")]
    InvalidA { index: usize, a: f64 },
    #[error("class {index}: negative or non-finite dependency count")]
    InvalidDelta { index: usize },
    #[error("class {index}: delta has {got} entries for {expected} classes")]
    DeltaShape { index: usize, got: usize, expected: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassMargin {
    pub index: usize,
    pub log_lhs: f64,
    pub log_rhs: f64,
    /// `log_rhs - log_lhs` after padding; nonnegative means the class passes.
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HypothesisReport {
    pub ok: bool,
    pub margins: Vec<ClassMargin>,
}

const REL_PAD: f64 = 1e-12;
const ABS_PAD: f64 = 1e-300;

fn pad_up(x: f64) -> f64 {
    x + x.abs() * REL_PAD + ABS_PAD
}

fn pad_down(x: f64) -> f64 {
    x - x.abs() * REL_PAD - ABS_PAD
}

/// Checks `p_i <= a_i * prod_j (1 - a_j)^delta_ij` for every class.
pub fn check_lll_hypothesis(classes: &[EventClass]) -> Result<HypothesisReport, HypothesisError> {
    for c in classes {
        if !(0.0..1.0).contains(&c.a_value) {
            return Err(HypothesisError::InvalidA { index: c.index, a: c.a_value });
        }
        if c.delta.len() != classes.len() {
            return Err(HypothesisError::DeltaShape { index: c.index, got: c.delta.len(), expected: classes.len() });
        }
        if c.delta.iter().any(|d| !d.is_finite() || *d < 0.0) {
            return Err(HypothesisError::InvalidDelta { index: c.index });
        }
    }
    let mut margins = Vec::with_capacity(classes.len());
    for c in classes {
        let log_lhs = if c.log_p == f64::NEG_INFINITY { f64::NEG_INFINITY } else { pad_up(c.log_p) };
        let mut rhs = if c.a_value == 0.0 { f64::NEG_INFINITY } else { c.a_value.ln() };
        for (cj, &dij) in classes.iter().zip(&c.delta) {
            if dij > 0.0 {
                rhs += dij * (-cj.a_value).ln_1p();
            }
        }
        let log_rhs = if rhs.is_finite() { pad_down(rhs) } else { rhs };
        let margin = if log_lhs == f64::NEG_INFINITY {
            f64::INFINITY
        } else {
            log_rhs - log_lhs
        };
        margins.push(ClassMargin { index: c.index, log_lhs, log_rhs, margin });
    }
    Ok(HypothesisReport { ok: margins.iter().all(|m| m.margin >= 0.0), margins })
}

/// Natural log of a positive big integer.
pub fn ln_big(b: &BigInt) -> f64 {
    let s = b.to_string();
    let keep = s.len().min(17);
    let head: f64 = s[..keep].parse().unwrap_or(f64::NAN);
    head.ln() + (s.len() - keep) as f64 * std::f64::consts::LN_10
}

/// Classes for avoiding earlier graphs' words: one class per earlier graph,
/// `p_i = (D^(2A/λ+1) / L)^γ_i`, `Δ_ij = γ_i γ_j D^γ_j`, `a_i = (2D)^(-γ_i)`.
pub fn intergraph_classes(
    degree: u64,
    diameter_ratio: &Rational,
    lambda: &Rational,
    alphabet: &BigInt,
    gammas: &[u64],
) -> Vec<EventClass> {
    let d = degree as f64;
    let exponent = ratio::to_f64(&(Rational::from_integer(2) * diameter_ratio / lambda + Rational::from_integer(1)));
    let base = exponent * d.ln() - ln_big(alphabet);
    gammas
        .iter()
        .enumerate()
        .map(|(i, &gi)| EventClass {
            index: i,
            path_length: gi as usize,
            log_p: gi as f64 * base,
            a_value: (2.0 * d).powi(-(gi as i32)),
            delta: gammas.iter().map(|&gj| (gi * gj) as f64 * d.powi(gj as i32)).collect(),
        })
        .collect()
}

/// Classes for bad paths of length `2..=max_length` inside one graph:
/// `p_i = (2 / Lbar^E)^i`, `Δ_ij = i j D^j`, `a_i = (2D)^(-i)`.
pub fn intragraph_classes(degree: u64, e: &Rational, alphabet: &BigInt, max_length: usize) -> Vec<EventClass> {
    let d = degree as f64;
    let base = 2f64.ln() - ratio::to_f64(e) * ln_big(alphabet);
    let lengths: Vec<usize> = (2..=max_length).collect();
    lengths
        .iter()
        .enumerate()
        .map(|(k, &i)| EventClass {
            index: k,
            path_length: i,
            log_p: i as f64 * base,
            a_value: (2.0 * d).powi(-(i as i32)),
            delta: lengths.iter().map(|&j| (i * j) as f64 * d.powi(j as i32)).collect(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labeling::constants;
    use crate::ratio::{int, rat};
    use proptest::prelude::*;

    #[test]
    fn zero_probability_class_passes() {
        let c = EventClass { index: 0, path_length: 1, log_p: f64::NEG_INFINITY, a_value: 0.3, delta: vec![0.0] };
        assert!(check_lll_hypothesis(&[c]).unwrap().ok);
    }

    #[test]
    fn invalid_a_is_rejected() {
        let c = EventClass { index: 0, path_length: 1, log_p: -1.0, a_value: 1.0, delta: vec![0.0] };
        assert!(matches!(check_lll_hypothesis(&[c]), Err(HypothesisError::InvalidA { .. })));
    }

    #[test]
    fn intergraph_accepts_at_computed_alphabet_and_rejects_at_degree() {
        let c = constants(3, int(1), rat(1, 6), &[12, 18, 24]).unwrap();
        let good = intergraph_classes(3, &int(1), &rat(1, 6), &c.l.value, &c.gammas);
        assert!(check_lll_hypothesis(&good).unwrap().ok);
        let bad = intergraph_classes(3, &int(1), &rat(1, 6), &BigInt::from(3), &c.gammas);
        let report = check_lll_hypothesis(&bad).unwrap();
        assert!(!report.ok);
        assert!(report.margins.iter().all(|m| m.margin < 0.0));
    }

    #[test]
    fn intragraph_accepts_at_computed_alphabet() {
        let c = constants(3, int(1), rat(1, 6), &[12]).unwrap();
        let classes = intragraph_classes(3, &c.e.0, &c.lbar.value, c.max_pattern_length(0));
        assert!(check_lll_hypothesis(&classes).unwrap().ok);
        let small = intragraph_classes(3, &c.e.0, &BigInt::from(64), c.max_pattern_length(0));
        assert!(!check_lll_hypothesis(&small).unwrap().ok);
    }

    #[test]
    fn big_logs() {
        assert!((ln_big(&BigInt::from(1000)) - 1000f64.ln()).abs() < 1e-12);
        let big = BigInt::from(10).pow(300);
        assert!((ln_big(&big) - 300.0 * std::f64::consts::LN_10).abs() < 1e-9);
    }

    proptest! {
        #[test]
        fn monotone_in_alphabet(l0 in 2u64..2_000_000_000, extra in 1u64..1_000_000_000) {
            let gammas = [2, 3, 4];
            let at = |l: u64| check_lll_hypothesis(&intergraph_classes(3, &int(1), &rat(1, 6), &BigInt::from(l), &gammas)).unwrap().ok;
            if at(l0) {
                prop_assert!(at(l0 + extra));
            }
        }
    }
}
