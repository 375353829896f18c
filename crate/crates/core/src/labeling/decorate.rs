use super::{Alphabet, Labeling, Letter};
use crate::graph::Graph;

/// Port number of each dart at its source: its 1-based position in the
/// sorted outgoing list. Ports at a vertex are distinct and at most its degree.
pub fn port_numbers(g: &Graph) -> Vec<u64> {
    let mut ports = vec![0; g.dart_count()];
    for v in 0..g.vertex_count() {
        for (i, &d) in g.out_darts(v).iter().enumerate() {
            ports[d] = i as u64 + 1;
        }
    }
    ports
}

/// Replaces each letter by the triple (letter, port at source, port at target).
///
/// A triple whose first entry is negative is stored as the inverse of the
/// triple read along the partner dart, so the encoding is involutive. The new
/// alphabet has `S * D^2` generators, `D` the maximum degree. Distinct darts
/// leaving a vertex have distinct source ports, hence the result is reduced.
pub fn decorate(g: &Graph, lab: &Labeling) -> Labeling {
    let ports = port_numbers(g);
    let d = g.max_degree().max(1) as u64;
    let size = lab.alphabet().size * d * d;
    let encode = |gen: u64, src: u64, tgt: u64| ((gen - 1) * d * d + (src - 1) * d + tgt) as i64;
    let letters: Vec<Letter> = (0..g.dart_count())
        .map(|dart| {
            let l = lab.letter(dart);
            let (src, tgt) = (ports[dart], ports[g.partner(dart)]);
            let v = if l.is_positive() {
                encode(l.generator(), src, tgt)
            } else {
                -encode(l.generator(), tgt, src)
            };
            Letter::new(v).expect("encoded letters are positive before sign")
        })
        .collect();
    Labeling::from_dart_letters(g, Alphabet::new(size), letters)
        .expect("decoration preserves the involution")
        .rename_graph(g)
}
