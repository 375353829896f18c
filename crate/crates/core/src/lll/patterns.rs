//! Bad patterns: (A) repeated prefix/suffix block, (B) suffix is the inverse
//! of the prefix block read backwards, (C) a letter followed by its inverse.

use serde::Serialize;

use crate::graph::{DartId, Graph};
use crate::labeling::{Labeling, Letter, Word};
use crate::ratio::{self, int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum PatternKind {
    A,
    B,
    C,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Classification {
    /// Witness block length.
    A(usize),
    B(usize),
    /// Position of the first letter of the cancelling pair.
    C(usize),
    None,
}

/// Smallest admissible block length for a word of length `n`.
pub fn min_block(n: usize, e: &Rational) -> usize {
    (ratio::ceil(&(*e * int(n as i128))).max(1)) as usize
}

fn repeats(w: &[Letter], q: usize) -> bool {
    w[..q] == w[w.len() - q..]
}

fn mirrors(w: &[Letter], q: usize) -> bool {
    let n = w.len();
    (0..q).all(|k| w[n - 1 - k] == w[k].inverse())
}

/// Word-level classification, checked in the order C, A, B; A and B report
/// the largest witness `q` with `E·|w| <= q <= |w|/2`.
pub fn detect_bad_pattern(w: &Word, e: &Rational) -> Classification {
    let l = w.letters();
    if let Some(i) = l.windows(2).position(|p| p[1] == p[0].inverse()) {
        return Classification::C(i);
    }
    let n = l.len();
    let lo = min_block(n, e);
    if let Some(q) = (lo..=n / 2).rev().find(|&q| repeats(l, q)) {
        return Classification::A(q);
    }
    if let Some(q) = (lo..=n / 2).rev().find(|&q| mirrors(l, q)) {
        return Classification::B(q);
    }
    Classification::None
}

/// A bad path together with the undirected edges its witness depends on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathWitness {
    pub kind: PatternKind,
    pub q: usize,
    /// Sorted, deduplicated edge indices.
    pub edges: Vec<usize>,
}

fn edges_of(darts: impl IntoIterator<Item = DartId>) -> Vec<usize> {
    let mut v: Vec<usize> = darts.into_iter().map(Graph::edge_of).collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// Path-level badness of a non-backtracking path.
///
/// A word-level (A) or (B) match only counts when the two blocks are walked
/// along different dart sequences: a path running around a short cycle repeats
/// its own darts, and no labeling can prevent that. The witness uses the
/// smallest qualifying block, checked in the order C, A, B.
pub fn path_violation(g: &Graph, lab: &Labeling, darts: &[DartId], e: &Rational) -> Option<PathWitness> {
    let n = darts.len();
    if n < 2 {
        return None;
    }
    let letters: Vec<Letter> = darts.iter().map(|&d| lab.letter(d)).collect();
    if let Some(i) = letters.windows(2).position(|p| p[1] == p[0].inverse()) {
        return Some(PathWitness { kind: PatternKind::C, q: 1, edges: edges_of([darts[i], darts[i + 1]]) });
    }
    let lo = min_block(n, e);
    for q in lo..=n / 2 {
        if repeats(&letters, q) && darts[..q] != darts[n - q..] {
            let edges = edges_of(darts[..q].iter().chain(&darts[n - q..]).copied());
            return Some(PathWitness { kind: PatternKind::A, q, edges });
        }
    }
    for q in lo..=n / 2 {
        if mirrors(&letters, q) && (0..q).any(|k| darts[n - 1 - k] != g.partner(darts[k])) {
            let edges = edges_of(darts[..q].iter().chain(&darts[n - q..]).copied());
            return Some(PathWitness { kind: PatternKind::B, q, edges });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::rat;
    use proptest::prelude::*;

    fn w(v: &[i64]) -> Word {
        Word::from_values(v).unwrap()
    }

    #[test]
    fn documented_examples() {
        let e = rat(1, 32);
        assert_eq!(detect_bad_pattern(&w(&[1, -1]), &e), Classification::C(0));
        assert_eq!(detect_bad_pattern(&w(&[1, 2, 3, 1, 2, 3]), &e), Classification::A(3));
        assert_eq!(detect_bad_pattern(&w(&[1, 2, 5, -2, -1]), &e), Classification::B(2));
        assert_eq!(detect_bad_pattern(&w(&[1, 2, 3, 4]), &e), Classification::None);
    }

    #[test]
    fn threshold_excludes_short_blocks() {
        // q must reach E * |w| = 3
        let e = rat(1, 2);
        assert_eq!(detect_bad_pattern(&w(&[1, 2, 3, 4, 5, 1]), &e), Classification::None);
        assert_eq!(detect_bad_pattern(&w(&[1, 2, 3, 1, 2, 3]), &e), Classification::A(3));
    }

    #[test]
    fn wrapping_path_is_not_bad() {
        let g = Graph::cycle(3);
        let lab = Labeling::from_edge_values(&g, 3, &[1, 2, 3]).unwrap();
        // goes once around and repeats its first dart
        let darts = vec![0, 2, 4, 0];
        assert_eq!(detect_bad_pattern(&lab.word_of_darts(&darts), &rat(1, 32)), Classification::A(1));
        assert_eq!(path_violation(&g, &lab, &darts, &rat(1, 32)), None);
    }

    #[test]
    fn distinct_darts_with_equal_letters() {
        let g = Graph::cycle(4);
        let lab = Labeling::from_edge_values(&g, 2, &[1, 2, 1, 2]).unwrap();
        let wit = path_violation(&g, &lab, &[0, 2, 4], &rat(1, 32)).unwrap();
        assert_eq!((wit.kind, wit.q, wit.edges), (PatternKind::A, 1, vec![0, 2]));
    }

    proptest! {
        #[test]
        fn classification_is_inversion_symmetric(v in proptest::collection::vec((1i64..4, any::<bool>()), 2..12)) {
            let word = Word::from_values(&v.iter().map(|&(a, s)| if s { a } else { -a }).collect::<Vec<_>>()).unwrap();
            let e = rat(1, 32);
            let kind = |c: Classification| match c {
                Classification::A(q) => (1, q),
                Classification::B(q) => (2, q),
                Classification::C(_) => (3, 0),
                Classification::None => (0, 0),
            };
            prop_assert_eq!(kind(detect_bad_pattern(&word, &e)), kind(detect_bad_pattern(&word.inverse(), &e)));
        }
    }
}
