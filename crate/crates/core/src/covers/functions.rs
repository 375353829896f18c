use std::fmt;

use thiserror::Error;

use crate::ratio::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FunctionError {
    #[error("slope must be nonnegative")]
    NegativeSlope,
    #[error("table needs at least one point")]
    EmptyTable,
    #[error("table arguments must increase strictly and values must not decrease")]
    NotMonotone,
    #[error("cannot parse `{0}`; expected `affine <slope> <intercept>` or `table x:y ...`")]
    Syntax(String),
}

/// A nondecreasing function given by an affine form or by sample points with
/// linear interpolation. Tables are undefined outside their argument range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Monotone {
    Affine { slope: Rational, intercept: Rational },
    Table(Vec<(Rational, Rational)>),
}

impl Monotone {
    pub fn affine(slope: Rational, intercept: Rational) -> Monotone {
        assert!(slope >= ratio::int(0), "slope must be nonnegative");
        Monotone::Affine { slope, intercept }
    }

    pub fn table(points: Vec<(Rational, Rational)>) -> Result<Monotone, FunctionError> {
        if points.is_empty() {
            return Err(FunctionError::EmptyTable);
        }
        if points.windows(2).any(|w| w[1].0 <= w[0].0 || w[1].1 < w[0].1) {
            return Err(FunctionError::NotMonotone);
        }
        Ok(Monotone::Table(points))
    }

    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        match self {
            Monotone::Affine { slope, intercept } => Some(slope * x + intercept),
            Monotone::Table(pts) => {
                let i = pts.partition_point(|(px, _)| px < x);
                if i < pts.len() && pts[i].0 == *x {
                    return Some(pts[i].1);
                }
                if i == 0 || i == pts.len() {
                    return None;
                }
                let ((x0, y0), (x1, y1)) = (pts[i - 1], pts[i]);
                Some(y0 + (y1 - y0) * (x - x0) / (x1 - x0))
            }
        }
    }

    /// Composition `self ∘ inner` when both are affine.
    pub fn compose_affine(&self, inner: &Monotone) -> Option<(Rational, Rational)> {
        match (self, inner) {
            (Monotone::Affine { slope: a, intercept: b }, Monotone::Affine { slope: c, intercept: d }) => {
                Some((a * c, a * d + b))
            }
            _ => None,
        }
    }

    pub fn parse(s: &str) -> Result<Monotone, FunctionError> {
        let bad = || FunctionError::Syntax(s.to_string());
        let mut parts = s.split_whitespace();
        match parts.next() {
            Some("affine") => {
                let slope = ratio::parse(parts.next().ok_or_else(bad)?).map_err(|_| bad())?;
                let intercept = ratio::parse(parts.next().ok_or_else(bad)?).map_err(|_| bad())?;
                if parts.next().is_some() {
                    return Err(bad());
                }
                if slope < ratio::int(0) {
                    return Err(FunctionError::NegativeSlope);
                }
                Ok(Monotone::Affine { slope, intercept })
            }
            Some("table") => {
                let pts = parts
                    .map(|p| {
                        let (x, y) = p.split_once(':').ok_or_else(bad)?;
                        Ok((ratio::parse(x).map_err(|_| bad())?, ratio::parse(y).map_err(|_| bad())?))
                    })
                    .collect::<Result<Vec<_>, FunctionError>>()?;
                Monotone::table(pts)
            }
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for Monotone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Monotone::Affine { slope, intercept } => {
                write!(f, "affine {} {}", ratio::format(slope), ratio::format(intercept))
            }
            Monotone::Table(pts) => {
                f.write_str("table")?;
                for (x, y) in pts {
                    write!(f, " {}:{}", ratio::format(x), ratio::format(y))?;
                }
                Ok(())
            }
        }
    }
}

impl serde::Serialize for Monotone {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::{int, rat};

    #[test]
    fn affine_and_table() {
        let third = Monotone::affine(rat(1, 3), int(0));
        assert_eq!(third.eval(&int(9)), Some(int(3)));
        let t = Monotone::table(vec![(int(0), int(0)), (int(2), int(4)), (int(4), int(5))]).unwrap();
        assert_eq!(t.eval(&int(1)), Some(int(2)));
        assert_eq!(t.eval(&int(3)), Some(rat(9, 2)));
        assert_eq!(t.eval(&int(4)), Some(int(5)));
        assert_eq!(t.eval(&int(5)), None);
        assert_eq!(t.eval(&int(-1)), None);
    }

    #[test]
    fn parse_round_trip() {
        for s in ["affine 1/3 0/1", "table 0/1:0/1 3/1:1/1 6/1:5/2"] {
            assert_eq!(Monotone::parse(s).unwrap().to_string(), s);
        }
        assert_eq!(Monotone::parse("affine 1/3 0").unwrap(), Monotone::affine(rat(1, 3), int(0)));
        assert_eq!(Monotone::parse("affine -1 0"), Err(FunctionError::NegativeSlope));
        assert_eq!(Monotone::parse("table 2:1 1:2"), Err(FunctionError::NotMonotone));
        assert!(Monotone::parse("cubic").is_err());
    }

    #[test]
    fn composition() {
        let omega = Monotone::affine(rat(1, 3), int(0));
        let delta = Monotone::affine(int(1), int(2));
        assert_eq!(omega.compose_affine(&delta), Some((rat(1, 3), rat(2, 3))));
    }
}
