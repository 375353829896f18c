//! Alphabet-size calculators and the derived path-length constants.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use super::Interval;
use crate::ratio::{self, int, rat, Rational, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstantsError {
    #[error("lambda {0} outside (0, 1/6]")]
    Lambda(String),
    #[error("A = {0} is below 1/2")]
    DiameterRatio(String),
    #[error("degree bound {0} is below 2")]
    Degree(u64),
    #[error("girth {girth} gives lambda * girth <= 1")]
    ShortGirth { girth: u64 },
    #[error("precision limit reached before the ceiling stabilised")]
    Precision,
}

/// Certified integer ceiling of a real constant.
///
/// `value` is the ceiling of a rigorous upper bound; `lower` the ceiling of a
/// rigorous lower bound. They coincide once the enclosure is tight enough.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlphabetBound {
    #[serde(serialize_with = "big_as_string")]
    pub value: BigInt,
    #[serde(serialize_with = "big_as_string")]
    pub lower: BigInt,
    pub bits: u32,
    pub log10: f64,
}

fn big_as_string<S: serde::Serializer>(b: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&b.to_string())
}

impl AlphabetBound {
    pub fn is_certified_exact(&self) -> bool {
        self.value == self.lower
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScConstants {
    pub lambda: Q,
    pub diameter_ratio: Q,
    pub degree: u64,
    /// `E = λ / (8λ + 4A)`.
    pub e: Q,
    pub girths: Vec<u64>,
    /// `⌊λ · girth⌋` per graph.
    pub gammas: Vec<u64>,
    /// `(2λ + A) · girth` per graph.
    pub f: Vec<Q>,
    pub l: AlphabetBound,
    pub lbar: AlphabetBound,
}

impl ScConstants {
    /// Longest path length examined by the intra-graph engine for graph `i`.
    pub fn max_pattern_length(&self, i: usize) -> usize {
        ratio::floor(&self.f[i].0) as usize
    }
}

const START_BITS: u32 = 256;
const MAX_BITS: u32 = 1 << 16;

/// Evaluates `f` at increasing precision until the ceiling of the enclosure
/// is a single integer.
fn certified_ceiling(f: impl Fn(u32) -> Interval) -> Result<AlphabetBound, ConstantsError> {
    let mut bits = START_BITS;
    loop {
        let iv = f(bits);
        let (lower, value) = iv.ceil_bounds();
        if lower == value || bits >= MAX_BITS {
            if lower != value && bits >= MAX_BITS {
                return Err(ConstantsError::Precision);
            }
            let log10 = log10_big(&value);
            return Ok(AlphabetBound { value, lower, bits, log10 });
        }
        bits *= 2;
    }
}

fn log10_big(b: &BigInt) -> f64 {
    if b.is_zero() {
        return f64::NEG_INFINITY;
    }
    let s = b.to_string();
    let head: f64 = s[..s.len().min(17)].parse().unwrap_or(1.0);
    head.log10() + (s.len() - s.len().min(17)) as f64
}

/// `⌈2 D e^4 D^(2A/λ + 1)⌉`.
pub fn intergraph_alphabet(degree: u64, a: &Rational, lambda: &Rational) -> Result<AlphabetBound, ConstantsError> {
    let exponent = int(2) * a / lambda + int(1);
    certified_ceiling(|bits| {
        let d = Interval::from_int(degree, bits);
        Interval::from_int(2 * degree, bits).mul(&Interval::exp_int(4, bits)).mul(&d.pow_rational(&exponent))
    })
}

/// `⌈(4 D e^4)^(1/E)⌉`.
pub fn intragraph_alphabet(degree: u64, e: &Rational) -> Result<AlphabetBound, ConstantsError> {
    let exponent = e.recip();
    certified_ceiling(|bits| {
        Interval::from_int(4 * degree, bits).mul(&Interval::exp_int(4, bits)).pow_rational(&exponent)
    })
}

pub fn constants(degree: u64, a: Rational, lambda: Rational, girths: &[u64]) -> Result<ScConstants, ConstantsError> {
    if lambda <= Rational::zero() || lambda > rat(1, 6) {
        return Err(ConstantsError::Lambda(ratio::format(&lambda)));
    }
    if a < rat(1, 2) {
        return Err(ConstantsError::DiameterRatio(ratio::format(&a)));
    }
    if degree < 2 {
        return Err(ConstantsError::Degree(degree));
    }
    let e = lambda / (int(8) * lambda + int(4) * a);
    let mut gammas = Vec::with_capacity(girths.len());
    let mut f = Vec::with_capacity(girths.len());
    for &g in girths {
        let lg = lambda * int(g as i128);
        if lg <= Rational::one() {
            return Err(ConstantsError::ShortGirth { girth: g });
        }
        gammas.push(ratio::floor(&lg) as u64);
        f.push(Q((int(2) * lambda + a) * int(g as i128)));
    }
    Ok(ScConstants {
        lambda: Q(lambda),
        diameter_ratio: Q(a),
        degree,
        e: Q(e),
        girths: girths.to_vec(),
        gammas,
        f,
        l: intergraph_alphabet(degree, &a, &lambda)?,
        lbar: intragraph_alphabet(degree, &e)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn default_triple() {
        let c = constants(3, int(1), rat(1, 6), &[12, 18, 24]).unwrap();
        assert_eq!(c.e.0, rat(1, 32));
        assert_eq!(c.gammas, vec![2, 3, 4]);
        assert_eq!(c.f[0].0, int(16));
        assert_eq!(c.max_pattern_length(2), 32);
        assert!(c.l.is_certified_exact());
        assert_eq!(c.l.value, BigInt::from(522_282_519u64));
        assert!((c.lbar.log10 - 90.12).abs() < 0.01);
    }

    #[test]
    fn rejections() {
        assert!(matches!(constants(3, int(1), rat(1, 4), &[12]), Err(ConstantsError::Lambda(_))));
        assert!(matches!(constants(3, int(1), rat(0, 1), &[12]), Err(ConstantsError::Lambda(_))));
        assert!(matches!(constants(3, rat(1, 3), rat(1, 6), &[12]), Err(ConstantsError::DiameterRatio(_))));
        assert!(matches!(constants(3, int(1), rat(1, 6), &[6]), Err(ConstantsError::ShortGirth { girth: 6 })));
    }

    proptest! {
        #[test]
        fn e_and_gamma_bounds(ln in 1i128..=60, ld in 6i128..=400, an in 1i128..=20, ad in 1i128..=10, g in 2u64..2000) {
            let lambda = rat(ln, ld);
            let a = rat(an, ad);
            prop_assume!(lambda <= rat(1, 6) && a >= rat(1, 2));
            let e = lambda / (int(8) * lambda + int(4) * a);
            prop_assert!(e < rat(1, 8));
            let lg = lambda * int(g as i128);
            prop_assume!(lg > int(1));
            let gamma = ratio::floor(&lg);
            prop_assert!(rat(g as i128, gamma) < int(2) / lambda);
        }
    }
}
