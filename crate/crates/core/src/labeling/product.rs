use thiserror::Error;

use super::{Alphabet, Labeling, Letter};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProductError {
    #[error("factor labellings belong to different graphs (`{0}` vs `{1}`)")]
    GraphMismatch(String, String),
    #[error("product alphabet size overflows")]
    Overflow,
}

/// Index of a second-factor letter among `1..=2*size`: `+b -> b`, `-b -> size + b`.
fn signed_index(b: Letter, size: u64) -> u64 {
    if b.is_positive() {
        b.generator()
    } else {
        size + b.generator()
    }
}

/// Encodes the pair `(a, b)`.
///
/// With `a > 0` the code is `+((a - 1) * 2 * size_b + idx(b))`; pairs with
/// `a < 0` are stored as the negation of the code of `(-a, -b)`. The product
/// alphabet therefore has `2 * size_a * size_b` generators and inversion acts
/// componentwise.
pub fn product_letter(a: Letter, b: Letter, size_b: u64) -> Letter {
    let code = |a: Letter, b: Letter| ((a.generator() - 1) * 2 * size_b + signed_index(b, size_b)) as i64;
    let v = if a.is_positive() { code(a, b) } else { -code(a.inverse(), b.inverse()) };
    Letter::new(v).expect("codes are nonzero")
}

/// Inverse of [`product_letter`].
pub fn product_factors(m: Letter, size_b: u64) -> (Letter, Letter) {
    let c = m.generator() - 1;
    let a = (c / (2 * size_b) + 1) as i64;
    let idx = c % (2 * size_b) + 1;
    let b = if idx <= size_b { idx as i64 } else { -((idx - size_b) as i64) };
    let (a, b) = (Letter::new(a).unwrap(), Letter::new(b).unwrap());
    if m.is_positive() {
        (a, b)
    } else {
        (a.inverse(), b.inverse())
    }
}

pub fn product(g: &Graph, l: &Labeling, lbar: &Labeling) -> Result<Labeling, ProductError> {
    if l.graph_name() != lbar.graph_name() || l.dart_letters().len() != lbar.dart_letters().len() {
        return Err(ProductError::GraphMismatch(l.graph_name().into(), lbar.graph_name().into()));
    }
    let size_b = lbar.alphabet().size;
    let size = l
        .alphabet()
        .size
        .checked_mul(2 * size_b)
        .filter(|&s| s < i64::MAX as u64)
        .ok_or(ProductError::Overflow)?;
    let letters = (0..g.dart_count())
        .map(|d| product_letter(l.letter(d), lbar.letter(d), size_b))
        .collect();
    Ok(Labeling::from_dart_letters(g, Alphabet::new(size), letters)
        .expect("componentwise inversion keeps the involution"))
}
