use serde::Serialize;

use super::repeats::longest_repeated_path_within;
use super::Relator;
use crate::graph::metrics;
use crate::ratio::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CPrimeStatus {
    Holds,
    Fails,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelatorRatio {
    /// `None` for a forest.
    pub girth: Option<usize>,
    /// Largest intrinsic piece diameter found (a lower bound when unknown).
    pub piece_diameter: usize,
    #[serde(with = "ratio::serde_pq")]
    pub ratio: Rational,
    pub ok: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CPrimeReport {
    pub status: CPrimeStatus,
    #[serde(with = "ratio::serde_pq")]
    pub lambda: Rational,
    pub per_relator: Vec<RelatorRatio>,
    #[serde(with = "ratio::serde_pq")]
    pub worst: Rational,
}

/// Checks that every piece has diameter below `λ·girth` of each relator it
/// occurs in.
///
/// Every simple path inside a piece is again a piece, and the longest simple
/// path bounds the intrinsic diameter, so the largest piece diameter equals
/// the longest simple path read at two essentially different places.
pub fn check_cprime(relators: &[Relator<'_>], lambda: Rational, max_occurrences: usize) -> CPrimeReport {
    let rep = longest_repeated_path_within(relators, max_occurrences);
    let mut per_relator = Vec::new();
    let mut worst = ratio::int(0);
    let mut status = CPrimeStatus::Holds;
    for (i, r) in relators.iter().enumerate() {
        let girth = metrics(r.graph).ok().and_then(|m| m.girth.finite());
        let diam = rep.per_graph_simple[i];
        let (ratio, ok) = match girth {
            None => (ratio::int(0), Some(true)),
            Some(g) => {
                let q = Rational::new(diam as i128, g as i128);
                let ok = if q >= lambda {
                    Some(false)
                } else if rep.complete {
                    Some(true)
                } else {
                    None
                };
                (q, ok)
            }
        };
        worst = worst.max(ratio);
        match ok {
            Some(false) => status = CPrimeStatus::Fails,
            None if status == CPrimeStatus::Holds => status = CPrimeStatus::Unknown,
            _ => {}
        }
        per_relator.push(RelatorRatio { girth, piece_diameter: diam, ratio, ok });
    }
    CPrimeReport { status, lambda, per_relator, worst }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::labeling::Labeling;
    use crate::ratio::rat;

    #[test]
    fn distinct_letters_hold() {
        let g = Graph::cycle(6);
        let lab = Labeling::from_edge_values(&g, 6, &[1, 2, 3, 4, 5, 6]).unwrap();
        let r = check_cprime(&[Relator::plain(&g, &lab)], rat(1, 6), usize::MAX);
        assert_eq!(r.status, CPrimeStatus::Holds);
        assert_eq!(r.worst, ratio::int(0));
    }

    #[test]
    fn duplicate_relators_fail() {
        let g = Graph::cycle(6);
        let lab = Labeling::from_edge_values(&g, 6, &[1, 2, 3, 4, 5, 6]).unwrap();
        let r = check_cprime(&[Relator::plain(&g, &lab), Relator::plain(&g, &lab)], rat(1, 6), usize::MAX);
        assert_eq!(r.status, CPrimeStatus::Fails);
        assert_eq!(r.per_relator[0].piece_diameter, 5);
    }

    #[test]
    fn single_repeated_letter_at_threshold() {
        let g = Graph::cycle(6);
        let lab = Labeling::from_edge_values(&g, 5, &[1, 2, 3, 1, 4, 5]).unwrap();
        let r = check_cprime(&[Relator::plain(&g, &lab)], rat(1, 6), usize::MAX);
        assert_eq!(r.worst, rat(1, 6));
        assert_eq!(r.status, CPrimeStatus::Fails);
        let r = check_cprime(&[Relator::plain(&g, &lab)], rat(1, 5), usize::MAX);
        assert_eq!(r.status, CPrimeStatus::Holds);
    }

    #[test]
    fn exhausted_budget_is_unknown() {
        let g = Graph::cycle(24);
        let lab = Labeling::from_edge_values(&g, 1, &[1; 24]).unwrap();
        let r = check_cprime(&[Relator::plain(&g, &lab)], rat(1, 6), usize::MAX);
        assert_eq!(r.status, CPrimeStatus::Fails);
        let vals: Vec<i64> = (1..=12).chain(1..=12).collect();
        let lab = Labeling::from_edge_values(&g, 12, &vals).unwrap();
        let r = check_cprime(&[Relator::plain(&g, &lab)], rat(1, 6), 0);
        assert_eq!(r.status, CPrimeStatus::Unknown);
    }
}
