//! Outward-rounded fixed-point intervals over big integers.
//!
//! A value is bracketed by `[lo / 2^bits, hi / 2^bits]`; every operation
//! rounds `lo` down and `hi` up, so the true value stays enclosed.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::ratio::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    lo: BigInt,
    hi: BigInt,
    bits: u32,
}

fn shl(x: &BigInt, bits: u32) -> BigInt {
    x << bits as usize
}

fn div_floor(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

fn div_ceil(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

impl Interval {
    pub fn from_rational(r: &Rational, bits: u32) -> Interval {
        let n = shl(&BigInt::from(*r.numer()), bits);
        let d = BigInt::from(*r.denom());
        Interval { lo: div_floor(&n, &d), hi: div_ceil(&n, &d), bits }
    }

    pub fn from_int(n: u64, bits: u32) -> Interval {
        let v = shl(&BigInt::from(n), bits);
        Interval { lo: v.clone(), hi: v, bits }
    }

    /// Encloses `e^x` for a small nonnegative integer `x` by Taylor partial
    /// sums plus a geometric bound on the tail.
    pub fn exp_int(x: u32, bits: u32) -> Interval {
        let terms = 4 * x + 64 + bits / 4;
        let scale = shl(&BigInt::one(), bits);
        let mut lo = BigInt::zero();
        let mut hi = BigInt::zero();
        // term_k = x^k / k!, tracked as exact numerator/denominator
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for k in 0..terms {
            if k > 0 {
                num *= x;
                den *= k;
            }
            let scaled = &num * &scale;
            lo += div_floor(&scaled, &den);
            hi += div_ceil(&scaled, &den);
        }
        // tail after `terms` terms: <= t_terms * 1 / (1 - x/(terms+1)) <= 2 * t_terms
        let next_num = &num * x * 2u32;
        let next_den = &den * terms;
        hi += div_ceil(&(next_num * &scale), &next_den);
        Interval { lo, hi, bits }
    }

    fn scale_down(&self, lo: BigInt, hi: BigInt) -> Interval {
        let s = shl(&BigInt::one(), self.bits);
        Interval { lo: div_floor(&lo, &s), hi: div_ceil(&hi, &s), bits: self.bits }
    }

    /// Product of two nonnegative intervals.
    pub fn mul(&self, other: &Interval) -> Interval {
        debug_assert_eq!(self.bits, other.bits);
        debug_assert!(!self.lo.is_negative() && !other.lo.is_negative());
        self.scale_down(&self.lo * &other.lo, &self.hi * &other.hi)
    }

    pub fn pow(&self, mut n: u64) -> Interval {
        let mut acc = Interval::from_int(1, self.bits);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `q`-th root of a nonnegative interval.
    pub fn root(&self, q: u32) -> Interval {
        if q == 1 {
            return self.clone();
        }
        // x^(1/q) * 2^bits = (m * 2^(bits*(q-1)))^(1/q) for x = m / 2^bits
        let lift = |m: &BigInt| shl(m, self.bits * (q - 1));
        let lo = lift(&self.lo).nth_root(q);
        let hi_val = lift(&self.hi);
        let mut hi = hi_val.nth_root(q);
        if hi.pow(q) < hi_val {
            hi += 1;
        }
        Interval { lo, hi, bits: self.bits }
    }

    /// `x^(p/q)` for a nonnegative interval and positive rational exponent.
    pub fn pow_rational(&self, exponent: &Rational) -> Interval {
        assert!(exponent.numer() > &0 && exponent.denom() > &0);
        let p = *exponent.numer() as u64;
        let q = *exponent.denom() as u32;
        self.pow(p).root(q)
    }

    /// Integer ceilings of both ends.
    pub fn ceil_bounds(&self) -> (BigInt, BigInt) {
        let s = shl(&BigInt::one(), self.bits);
        (div_ceil(&self.lo, &s), div_ceil(&self.hi, &s))
    }

    pub fn width_is_zero(&self) -> bool {
        self.lo == self.hi
    }

    pub fn lower_f64(&self) -> f64 {
        to_f64(&self.lo, self.bits)
    }

    pub fn upper_f64(&self) -> f64 {
        to_f64(&self.hi, self.bits)
    }
}

fn to_f64(m: &BigInt, bits: u32) -> f64 {
    let (sign, digits) = m.to_u64_digits();
    let mut v = 0f64;
    for d in digits.iter().rev() {
        v = v * 18446744073709551616.0 + *d as f64;
    }
    let v = v * 2f64.powi(-(bits as i32));
    if sign == Sign::Minus {
        -v
    } else {
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::rat;

    #[test]
    fn e_to_the_fourth_is_enclosed() {
        let e4 = Interval::exp_int(4, 200);
        let exact = 54.598_150_033_144_236_f64;
        assert!(e4.lower_f64() <= exact && exact <= e4.upper_f64());
        assert!(e4.upper_f64() - e4.lower_f64() < 1e-40);
    }

    #[test]
    fn roots_and_powers() {
        let two = Interval::from_int(2, 128);
        let r = two.root(2);
        let sq = r.mul(&r);
        assert!(sq.lower_f64() <= 2.0 && 2.0 <= sq.upper_f64());
        assert!((r.lower_f64() - std::f64::consts::SQRT_2).abs() < 1e-15);
        let eight = Interval::from_int(2, 64).pow(3);
        assert!(eight.width_is_zero());
        let (a, b) = Interval::from_int(27, 64).pow_rational(&rat(2, 3)).ceil_bounds();
        assert_eq!(a, BigInt::from(9));
        assert!(b == BigInt::from(9) || b == BigInt::from(10));
    }

    #[test]
    fn rational_input_is_bracketed() {
        let x = Interval::from_rational(&rat(1, 3), 64);
        assert!(x.lower_f64() <= 1.0 / 3.0 && 1.0 / 3.0 <= x.upper_f64());
    }
}
