use serde::Serialize;

use super::{metrics, Distance, Graph};
use crate::ratio::{int, Rational, Q};

/// Ordered graph sequence with its standing constants.
#[derive(Debug, Clone)]
pub struct FamilySpec {
    pub graphs: Vec<Graph>,
    pub degree_bound: usize,
    /// Diameter/girth bound `A`; `None` means "measure it".
    pub diameter_ratio: Option<Rational>,
    pub lambda: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilyViolation {
    Disconnected { index: usize },
    DegreeBound { index: usize, degree: usize },
    /// `diam > A * girth`; not repairable by dropping members.
    DiameterRatio { index: usize, diameter: usize, girth: usize },
    Acyclic { index: usize },
    /// `lambda * girth <= 1`; repaired by dropping.
    ShortGirth { index: usize, girth: usize },
    /// Girth not above the previously kept member; repaired by dropping.
    NonIncreasing { index: usize, girth: usize, previous: usize },
}

impl FamilyViolation {
    pub fn repairable(&self) -> bool {
        matches!(self, Self::ShortGirth { .. } | Self::NonIncreasing { .. } | Self::Acyclic { .. })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyReport {
    pub ok: bool,
    pub witnesses: Vec<FamilyViolation>,
    pub subsequence: Vec<usize>,
    pub girths: Vec<Distance>,
    pub diameters: Vec<usize>,
    /// Max of diam/girth over the kept members.
    pub measured_ratio: Option<Q>,
}

impl Serialize for Distance {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Distance::Finite(n) => s.serialize_u64(*n as u64),
            Distance::Infinite => s.serialize_str("inf"),
        }
    }
}

pub fn validate_family(spec: &FamilySpec) -> FamilyReport {
    let mut witnesses = Vec::new();
    let mut girths = Vec::new();
    let mut diameters = Vec::new();
    let mut fatal = false;
    let mut kept: Vec<usize> = Vec::new();
    let mut last_girth: Option<usize> = None;

    for (index, g) in spec.graphs.iter().enumerate() {
        let Ok(m) = metrics(g) else {
            witnesses.push(FamilyViolation::Disconnected { index });
            girths.push(Distance::Infinite);
            diameters.push(0);
            fatal = true;
            continue;
        };
        girths.push(m.girth);
        diameters.push(m.diameter);
        if g.max_degree() > spec.degree_bound {
            witnesses.push(FamilyViolation::DegreeBound { index, degree: g.max_degree() });
            fatal = true;
        }
        let Distance::Finite(girth) = m.girth else {
            witnesses.push(FamilyViolation::Acyclic { index });
            continue;
        };
        if let Some(a) = spec.diameter_ratio {
            if int(m.diameter as i128) > a * int(girth as i128) {
                witnesses.push(FamilyViolation::DiameterRatio { index, diameter: m.diameter, girth });
                fatal = true;
            }
        }
        if spec.lambda * int(girth as i128) <= int(1) {
            witnesses.push(FamilyViolation::ShortGirth { index, girth });
            continue;
        }
        if let Some(previous) = last_girth {
            if girth <= previous {
                witnesses.push(FamilyViolation::NonIncreasing { index, girth, previous });
                continue;
            }
        }
        last_girth = Some(girth);
        kept.push(index);
    }

    let measured_ratio = kept
        .iter()
        .filter_map(|&i| {
            girths[i].finite().map(|gi| Rational::new(diameters[i] as i128, gi as i128))
        })
        .max()
        .map(Q);

    FamilyReport {
        ok: !fatal && !kept.is_empty(),
        witnesses,
        subsequence: kept,
        girths,
        diameters,
        measured_ratio,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::rat;

    fn spec(graphs: Vec<Graph>, a: Option<Rational>) -> FamilySpec {
        FamilySpec { graphs, degree_bound: 3, diameter_ratio: a, lambda: rat(1, 6) }
    }

    #[test]
    fn increasing_cycles_pass() {
        let r = validate_family(&spec(
            vec![Graph::cycle(12), Graph::cycle(18), Graph::cycle(24)],
            Some(int(1)),
        ));
        assert!(r.ok);
        assert_eq!(r.subsequence, vec![0, 1, 2]);
        assert!(r.witnesses.is_empty());
        assert_eq!(r.measured_ratio, Some(Q(rat(1, 2))));
    }

    #[test]
    fn duplicate_girth_is_repaired() {
        let r = validate_family(&spec(vec![Graph::cycle(12), Graph::cycle(12)], None));
        assert!(r.ok);
        assert_eq!(r.subsequence, vec![0]);
        assert!(matches!(r.witnesses[0], FamilyViolation::NonIncreasing { index: 1, .. }));
    }

    #[test]
    fn short_girth_is_dropped() {
        let r = validate_family(&spec(vec![Graph::cycle(4)], None));
        assert!(r.subsequence.is_empty());
        assert!(!r.ok);
        assert_eq!(r.witnesses, vec![FamilyViolation::ShortGirth { index: 0, girth: 4 }]);
    }

    #[test]
    fn diameter_ratio_is_fatal() {
        let r = validate_family(&spec(vec![Graph::cycle(12)], Some(rat(1, 3))));
        assert!(!r.ok);
        assert_eq!(
            r.witnesses,
            vec![FamilyViolation::DiameterRatio { index: 0, diameter: 6, girth: 12 }]
        );
    }
}
