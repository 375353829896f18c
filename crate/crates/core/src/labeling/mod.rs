//! Letters, words and involutive edge labellings.

mod bigreal;
mod constants;
mod decorate;
pub mod io;
mod product;

pub use bigreal::Interval;
pub use constants::{constants, AlphabetBound, ConstantsError, ScConstants};
pub use decorate::{decorate, port_numbers};
pub use product::{product, product_factors, product_letter, ProductError};

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{DartId, Graph, Path, VertexId};

/// Nonzero signed letter; negation is the formal inverse.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub struct Letter(i64);

impl Letter {
    pub fn new(v: i64) -> Option<Letter> {
        (v != 0).then_some(Letter(v))
    }

    pub fn value(self) -> i64 {
        self.0
    }

    pub fn inverse(self) -> Letter {
        Letter(-self.0)
    }

    /// Generator index, 1-based.
    pub fn generator(self) -> u64 {
        self.0.unsigned_abs()
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }
}

impl TryFrom<i64> for Letter {
    type Error = String;
    fn try_from(v: i64) -> Result<Self, String> {
        Letter::new(v).ok_or_else(|| "letter 0 is invalid".to_string())
    }
}

impl From<Letter> for i64 {
    fn from(l: Letter) -> i64 {
        l.0
    }
}

/// Letters order as `+1 < -1 < +2 < -2 < ...`.
impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.generator(), self.0 < 0).cmp(&(other.generator(), other.0 < 0))
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:+}", self.0)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Symmetrized alphabet `{±1, ..., ±size}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Alphabet {
    pub size: u64,
}

impl Alphabet {
    pub fn new(size: u64) -> Alphabet {
        assert!(size >= 1, "alphabet needs at least one generator");
        Alphabet { size }
    }

    pub fn contains(&self, l: Letter) -> bool {
        l.generator() <= self.size
    }

    /// All `2 * size` letters in letter order.
    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (1..=self.size as i64).flat_map(|g| [Letter(g), Letter(-g)])
    }

    /// Maps `0..2*size` onto the letters, bijectively.
    pub fn letter_at(&self, i: u64) -> Letter {
        debug_assert!(i < 2 * self.size);
        let g = (i / 2 + 1) as i64;
        if i % 2 == 0 {
            Letter(g)
        } else {
            Letter(-g)
        }
    }
}

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn from_values(vals: &[i64]) -> Option<Word> {
        vals.iter().map(|&v| Letter::new(v)).collect::<Option<Vec<_>>>().map(Word)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    /// Formal inverse: reversed, every letter inverted.
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[1] != w[0].inverse())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// The smaller of the word and its inverse, with `true` when the inverse was taken.
    pub fn canonical(&self) -> (Word, bool) {
        let inv = self.inverse();
        if inv < *self {
            (inv, true)
        } else {
            (self.clone(), false)
        }
    }

    pub fn parse(s: &str) -> Result<Word, String> {
        s.split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.trim_start_matches('+')
                    .parse::<i64>()
                    .ok()
                    .and_then(Letter::new)
                    .ok_or_else(|| format!("bad letter `{t}`"))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.0).finish()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelingError {
    #[error("labeling belongs to graph `{labeling}` ({labeling_darts} darts), not `{graph}` ({graph_darts} darts)")]
    GraphMismatch { labeling: String, labeling_darts: usize, graph: String, graph_darts: usize },
    #[error("expected {expected} edge letters, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("letter {letter} outside alphabet of size {size}")]
    OutOfAlphabet { letter: i64, size: u64 },
    #[error("dart {dart}: partner carries {partner} instead of the inverse of {letter}")]
    NotInvolutive { dart: DartId, letter: i64, partner: i64 },
}

/// Letter per dart with `letter(partner(d)) = inverse(letter(d))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Labeling {
    alphabet: Alphabet,
    graph_name: String,
    letters: Vec<Letter>,
}

/// Non-reducedness witness: two distinct darts out of `vertex` with equal letters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FoldWitness {
    pub vertex: VertexId,
    pub darts: (DartId, DartId),
}

impl Labeling {
    /// Labels undirected edge `k` (dart `2k`) with `edge_letters[k]`.
    pub fn from_edge_letters(
        g: &Graph,
        alphabet: Alphabet,
        edge_letters: &[Letter],
    ) -> Result<Labeling, LabelingError> {
        if edge_letters.len() != g.edge_count() {
            return Err(LabelingError::WrongLength { expected: g.edge_count(), got: edge_letters.len() });
        }
        if let Some(l) = edge_letters.iter().find(|l| !alphabet.contains(**l)) {
            return Err(LabelingError::OutOfAlphabet { letter: l.value(), size: alphabet.size });
        }
        let letters = edge_letters.iter().flat_map(|&l| [l, l.inverse()]).collect();
        Ok(Labeling { alphabet, graph_name: g.name().to_string(), letters })
    }

    pub fn from_edge_values(g: &Graph, size: u64, vals: &[i64]) -> Result<Labeling, LabelingError> {
        let letters = vals
            .iter()
            .map(|&v| Letter::new(v).ok_or(LabelingError::OutOfAlphabet { letter: v, size }))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_edge_letters(g, Alphabet::new(size), &letters)
    }

    /// Builds from per-dart letters, checking the involution.
    pub fn from_dart_letters(
        g: &Graph,
        alphabet: Alphabet,
        letters: Vec<Letter>,
    ) -> Result<Labeling, LabelingError> {
        if letters.len() != g.dart_count() {
            return Err(LabelingError::WrongLength { expected: g.dart_count(), got: letters.len() });
        }
        for (d, &l) in letters.iter().enumerate() {
            if !alphabet.contains(l) {
                return Err(LabelingError::OutOfAlphabet { letter: l.value(), size: alphabet.size });
            }
            let p = letters[g.partner(d)];
            if p != l.inverse() {
                return Err(LabelingError::NotInvolutive { dart: d, letter: l.value(), partner: p.value() });
            }
        }
        Ok(Labeling { alphabet, graph_name: g.name().to_string(), letters })
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn graph_name(&self) -> &str {
        &self.graph_name
    }

    pub fn letter(&self, d: DartId) -> Letter {
        self.letters[d]
    }

    pub fn dart_letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Letter on the declared orientation of each undirected edge.
    pub fn edge_letters(&self) -> Vec<Letter> {
        self.letters.iter().step_by(2).copied().collect()
    }

    /// Sets the letter on dart `d`, and its inverse on the partner dart.
    pub fn set(&mut self, d: DartId, l: Letter) {
        assert!(self.alphabet.contains(l));
        self.letters[d] = l;
        self.letters[d ^ 1] = l.inverse();
    }

    pub fn rename_graph(mut self, g: &Graph) -> Labeling {
        self.graph_name = g.name().to_string();
        self
    }

    pub fn check_graph(&self, g: &Graph) -> Result<(), LabelingError> {
        if self.graph_name != g.name() || self.letters.len() != g.dart_count() {
            return Err(LabelingError::GraphMismatch {
                labeling: self.graph_name.clone(),
                labeling_darts: self.letters.len(),
                graph: g.name().to_string(),
                graph_darts: g.dart_count(),
            });
        }
        Ok(())
    }

    pub fn word_of_darts(&self, darts: &[DartId]) -> Word {
        Word(darts.iter().map(|&d| self.letters[d]).collect())
    }

    pub fn word_of_path(&self, g: &Graph, p: &Path) -> Result<Word, LabelingError> {
        self.check_graph(g)?;
        Ok(self.word_of_darts(&p.darts))
    }

    /// Local injectivity: no two darts leaving a vertex carry the same letter.
    pub fn is_reduced(&self, g: &Graph) -> Result<(), FoldWitness> {
        for v in 0..g.vertex_count() {
            let out = g.out_darts(v);
            for (i, &a) in out.iter().enumerate() {
                for &b in &out[i + 1..] {
                    if self.letters[a] == self.letters[b] {
                        return Err(FoldWitness { vertex: v, darts: (a, b) });
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::enumerate_paths;

    #[test]
    fn reading_a_path_and_its_reverse() {
        let g = Graph::cycle(3);
        let lab = Labeling::from_edge_values(&g, 3, &[1, 2, 3]).unwrap();
        let p = Path::new(&g, vec![0, 2, 4]).unwrap();
        assert_eq!(lab.word_of_path(&g, &p).unwrap(), Word::from_values(&[1, 2, 3]).unwrap());
        let single = Path::new(&g, vec![4]).unwrap();
        assert_eq!(lab.word_of_path(&g, &single).unwrap().0, vec![Letter(3)]);
        assert_eq!(lab.word_of_path(&g, &single.reversed(&g)).unwrap().0, vec![Letter(-3)]);
    }

    #[test]
    fn mismatched_graph_is_rejected() {
        let g = Graph::cycle(3);
        let lab = Labeling::from_edge_values(&g, 3, &[1, 2, 3]).unwrap();
        let h = Graph::cycle(4);
        let p = enumerate_paths(&h, 1).next().unwrap();
        assert!(matches!(lab.word_of_path(&h, &p), Err(LabelingError::GraphMismatch { .. })));
    }

    #[test]
    fn reducedness() {
        let c4 = Graph::cycle(4);
        assert!(Labeling::from_edge_values(&c4, 1, &[1, 1, 1, 1]).unwrap().is_reduced(&c4).is_ok());
        let double = Graph::from_edges("dbl", 2, &[(0, 1), (0, 1)]).unwrap();
        let lab = Labeling::from_edge_values(&double, 1, &[1, 1]).unwrap();
        assert_eq!(lab.is_reduced(&double), Err(FoldWitness { vertex: 0, darts: (0, 2) }));
    }

    #[test]
    fn involution_enforced() {
        let g = Graph::cycle(2);
        let bad = vec![Letter(1), Letter(1), Letter(2), Letter(-2)];
        assert!(matches!(
            Labeling::from_dart_letters(&g, Alphabet::new(2), bad),
            Err(LabelingError::NotInvolutive { dart: 0, .. })
        ));
        assert!(Labeling::from_edge_values(&g, 1, &[1, 2]).is_err());
        assert!(Letter::new(0).is_none());
    }

    #[test]
    fn word_helpers() {
        let w = Word::parse("1 -2 +3").unwrap();
        assert_eq!(w.inverse(), Word::from_values(&[-3, 2, -1]).unwrap());
        assert_eq!(w.to_string(), "1 -2 3");
        assert!(!Word::from_values(&[1, -1]).unwrap().is_freely_reduced());
        assert_eq!(Word::from_values(&[-1]).unwrap().canonical().1, true);
        let a = Alphabet::new(2);
        assert_eq!(a.letters().map(|l| l.value()).collect::<Vec<_>>(), vec![1, -1, 2, -2]);
        assert!((0..4).map(|i| a.letter_at(i)).eq(a.letters()));
    }
}
