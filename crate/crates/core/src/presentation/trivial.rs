use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use crate::labeling::Word;

use super::shortcut::{free_reduce, shortcut_reduce};
use super::GraphicalPresentation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Triviality {
    Yes,
    No,
    Unknown,
}

/// Labels of every path of length `1..=max_len` from `x`, grouped by endpoint.
fn paths_from(p: &GraphicalPresentation, ri: usize, x: usize, max_len: usize) -> Vec<(usize, Word)> {
    let r = &p.relators[ri];
    let mut out = Vec::new();
    let mut frontier = vec![(x, Vec::new(), usize::MAX)];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (at, word, came) in frontier {
            for &d in r.graph.out_darts(at) {
                if d == came {
                    continue;
                }
                let mut w2 = word.clone();
                w2.push(r.labeling.letter(d));
                out.push((r.graph.target(d), Word(w2.clone())));
                next.push((r.graph.target(d), w2, r.graph.partner(d)));
            }
        }
        frontier = next;
    }
    out
}

/// Words reachable by swapping one relator path for another with the same
/// endpoints, each at most one girth long.
fn neighbours(p: &GraphicalPresentation, w: &Word) -> Vec<Word> {
    let letters = w.letters();
    let mut out = Vec::new();
    for (ri, r) in p.relators.iter().enumerate() {
        let reach = r.girth.unwrap_or(r.graph.vertex_count()).max(1);
        for x in 0..r.graph.vertex_count() {
            let alternatives = paths_from(p, ri, x, reach);
            for start in 0..=letters.len() {
                let mut at = x;
                let mut end = start;
                loop {
                    for (_, alt) in alternatives.iter().filter(|(y, _)| *y == at) {
                        if alt.letters() != &letters[start..end] {
                            let mut v = letters[..start].to_vec();
                            v.extend_from_slice(alt.letters());
                            v.extend_from_slice(&letters[end..]);
                            out.push(free_reduce(&Word(v)));
                        }
                    }
                    if end == letters.len() {
                        break;
                    }
                    match r.graph.out_darts(at).iter().find(|&&d| r.labeling.letter(d) == letters[end]) {
                        Some(&d) => at = r.graph.target(d),
                        None => break,
                    }
                    end += 1;
                }
            }
        }
    }
    out
}

/// Three-valued word problem.
///
/// `Yes` when shortcut reduction or a bounded search reaches the empty word.
/// `No` when the abelianization separates the word from the identity, or the
/// presentation is certified C'(1/24) and the shortcut fixed point is nonempty.
/// Otherwise `Unknown` after visiting at most `search_cap` words.
pub fn is_trivial(p: &GraphicalPresentation, w: &Word, search_cap: usize) -> Triviality {
    let reduced = shortcut_reduce(p, w);
    if reduced.is_empty() {
        return Triviality::Yes;
    }
    if p.abelian().separates_from_identity(&reduced) {
        return Triviality::No;
    }
    if p.certified() {
        return Triviality::No;
    }
    let mut seen: HashSet<Word> = HashSet::from([reduced.clone()]);
    let mut queue = VecDeque::from([reduced]);
    while let Some(cur) = queue.pop_front() {
        for n in neighbours(p, &cur) {
            let n = shortcut_reduce(p, &n);
            if n.is_empty() {
                return Triviality::Yes;
            }
            if seen.len() >= search_cap {
                return Triviality::Unknown;
            }
            if seen.insert(n.clone()) {
                queue.push_back(n);
            }
        }
    }
    Triviality::Unknown
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::labeling::Labeling;

    fn w(v: &[i64]) -> Word {
        Word::from_values(v).unwrap()
    }

    fn present(rels: &[&[i64]], size: u64) -> GraphicalPresentation {
        let rels = rels
            .iter()
            .map(|vals| {
                let g = Graph::cycle(vals.len());
                let lab = Labeling::from_edge_values(&g, size, vals).unwrap();
                (g, lab)
            })
            .collect();
        GraphicalPresentation::new(size, rels).unwrap()
    }

    #[test]
    fn certified_answers() {
        let p = present(&[&[1, 2, 3, 4, 5, 6]], 6);
        assert!(p.certified());
        assert_eq!(is_trivial(&p, &w(&[1]), 100), Triviality::No);
        assert_eq!(is_trivial(&p, &w(&[1, 2, 3, 4, 5, 6]), 100), Triviality::Yes);
        assert_eq!(is_trivial(&p, &w(&[3, 4, 5, 6, 1, 2]), 100), Triviality::Yes);
        // conjugate of the relator
        assert_eq!(is_trivial(&p, &w(&[2, 1, 2, 3, 4, 5, 6, -2]), 100), Triviality::Yes);
        // same abelian image as the identity but not trivial
        assert_eq!(is_trivial(&p, &w(&[1, 2, -1, -2]), 100), Triviality::No);
    }

    #[test]
    fn free_group() {
        let p = GraphicalPresentation::free(2);
        assert_eq!(is_trivial(&p, &w(&[1, 2, -2, -1]), 10), Triviality::Yes);
        assert_eq!(is_trivial(&p, &w(&[1, 2, -1, -2]), 10), Triviality::No);
    }

    #[test]
    fn search_finds_commutator_consequence() {
        // ⟨a, b | [a, b]⟩ is not C'(1/24); the search supplies the proof
        let p = present(&[&[1, 2, -1, -2]], 2);
        assert!(!p.certified());
        assert_eq!(is_trivial(&p, &w(&[2, 1, -2, -1]), 1000), Triviality::Yes);
        assert_eq!(is_trivial(&p, &w(&[1, 1, 2, -1, -1, -2]), 1000), Triviality::Yes);
        assert_eq!(is_trivial(&p, &w(&[1]), 1000), Triviality::No);
    }

    #[test]
    fn abelian_invisible_unknown() {
        // trivial in Z^2, but a cap of two words may not reach the proof
        let p = present(&[&[1, 2, -1, -2]], 2);
        let r = is_trivial(&p, &w(&[1, 1, 2, 2, -1, -1, -2, -2]), 2);
        assert_ne!(r, Triviality::No);
    }
}
