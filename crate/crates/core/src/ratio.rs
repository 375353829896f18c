//! Exact rationals used by every gatekeeping predicate (λ, A, β, E, F, ...).

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Exact fraction with 128-bit numerator and denominator.
pub type Rational = Ratio<i128>;

pub fn rat(n: i128, d: i128) -> Rational {
    Ratio::new(n, d)
}

pub fn int(n: i128) -> Rational {
    Ratio::from_integer(n)
}

/// Largest integer `<= x`.
pub fn floor(x: &Rational) -> i128 {
    Integer::div_floor(x.numer(), x.denom())
}

/// Smallest integer `>= x`.
pub fn ceil(x: &Rational) -> i128 {
    -Integer::div_floor(&-x.numer(), x.denom())
}

pub fn to_f64(x: &Rational) -> f64 {
    x.numer().to_f64().unwrap_or(f64::NAN) / x.denom().to_f64().unwrap_or(f64::NAN)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed rational `{0}` (expected `p/q` or an integer)")]
pub struct ParseRationalError(pub String);

pub fn parse(s: &str) -> Result<Rational, ParseRationalError> {
    let s = s.trim();
    let err = || ParseRationalError(s.to_string());
    match s.split_once('/') {
        Some((p, q)) => {
            let p = i128::from_str(p.trim()).map_err(|_| err())?;
            let q = i128::from_str(q.trim()).map_err(|_| err())?;
            if q.is_zero() {
                return Err(err());
            }
            Ok(Ratio::new(p, q))
        }
        None => i128::from_str(s).map(int).map_err(|_| err()),
    }
}

/// Formats as `p/q` (always with a denominator, reduced, sign on the numerator).
pub fn format(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Serde adapter writing rationals as `p/q` strings.
pub mod serde_pq {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Newtype wrapper so rationals can sit inside serialized containers.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Q(pub Rational);

impl fmt::Debug for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format(&self.0))
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format(&self.0))
    }
}

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serde_pq::serialize(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        serde_pq::deserialize(d).map(Q)
    }
}

/// `sqrt(n)` rounded up to a dyadic rational with `bits` fractional bits.
pub fn sqrt_upper(n: u64, bits: u32) -> Rational {
    let scale = 1i128 << bits;
    let target = (n as i128) * scale * scale;
    let mut r = (target as f64).sqrt() as i128;
    while r * r > target {
        r -= 1;
    }
    while r * r < target {
        r += 1;
    }
    Ratio::new(r, scale)
}

pub fn is_positive(x: &Rational) -> bool {
    x.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floor_and_ceil() {
        assert_eq!(floor(&rat(7, 2)), 3);
        assert_eq!(ceil(&rat(7, 2)), 4);
        assert_eq!(floor(&rat(-7, 2)), -4);
        assert_eq!(ceil(&rat(-7, 2)), -3);
        assert_eq!(ceil(&int(5)), 5);
    }

    #[test]
    fn parse_round_trip() {
        assert_eq!(parse("1/6").unwrap(), rat(1, 6));
        assert_eq!(parse(" 2 / 4 ").unwrap(), rat(1, 2));
        assert_eq!(parse("3").unwrap(), int(3));
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
        assert_eq!(format(&rat(2, 4)), "1/2");
        assert_eq!(format(&int(3)), "3/1");
    }

    #[test]
    fn sqrt_upper_brackets() {
        for n in 0..200u64 {
            let s = sqrt_upper(n, 20);
            assert!(s * s >= int(n as i128));
            let below = s - rat(1, 1 << 20);
            assert!(below < int(0) || below * below < int(n as i128));
        }
    }
}
