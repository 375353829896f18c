use crate::labeling::{Letter, Word};

use super::{GraphicalPresentation, PresentedRelator};

/// Cancels adjacent inverse pairs.
pub fn free_reduce(w: &Word) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in w.letters() {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    Word(out)
}

/// One replacement `w[start..end] -> replacement` inside relator `relator`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shortcut {
    pub start: usize,
    pub end: usize,
    pub relator: usize,
    pub replacement: Word,
}

fn dart_with_letter(r: &PresentedRelator, v: usize, l: Letter) -> Option<usize> {
    r.graph.out_darts(v).iter().copied().find(|&d| r.labeling.letter(d) == l)
}

/// Lexicographically least label of a geodesic `x -> y`.
pub(crate) fn least_geodesic(r: &PresentedRelator, x: usize, y: usize) -> Word {
    let mut out = Vec::new();
    let mut at = x;
    while at != y {
        let need = r.distances[at][y] - 1;
        let d = r
            .graph
            .out_darts(at)
            .iter()
            .copied()
            .filter(|&d| r.distances[r.graph.target(d)][y] == need)
            .min_by_key(|&d| r.labeling.letter(d))
            .expect("geodesic step exists");
        out.push(r.labeling.letter(d));
        at = r.graph.target(d);
    }
    Word(out)
}

/// Leftmost start, then longest subword reading a non-geodesic relator path.
fn find_shortcut(p: &GraphicalPresentation, w: &Word) -> Option<Shortcut> {
    let letters = w.letters();
    for start in 0..letters.len() {
        let mut best: Option<(usize, usize, usize, usize)> = None;
        for (ri, r) in p.relators.iter().enumerate() {
            for x in 0..r.graph.vertex_count() {
                let mut at = x;
                for (k, &l) in letters[start..].iter().enumerate() {
                    match dart_with_letter(r, at, l) {
                        Some(d) => at = r.graph.target(d),
                        None => break,
                    }
                    let len = k + 1;
                    if len > r.distances[x][at] && best.is_none_or(|(bl, ..)| len > bl) {
                        best = Some((len, ri, x, at));
                    }
                }
            }
        }
        if let Some((len, ri, x, y)) = best {
            let replacement = least_geodesic(&p.relators[ri], x, y);
            return Some(Shortcut { start, end: start + len, relator: ri, replacement });
        }
    }
    None
}

/// Free reduction plus relator shortcuts until neither applies.
/// Deterministic; every round strictly shortens the word.
pub fn shortcut_reduce(p: &GraphicalPresentation, w: &Word) -> Word {
    let mut cur = free_reduce(w);
    while let Some(s) = find_shortcut(p, &cur) {
        let mut next = cur.0[..s.start].to_vec();
        next.extend_from_slice(s.replacement.letters());
        next.extend_from_slice(&cur.0[s.end..]);
        cur = free_reduce(&Word(next));
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::labeling::Labeling;
    use proptest::prelude::*;

    fn w(v: &[i64]) -> Word {
        Word::from_values(v).unwrap()
    }

    fn cycle_presentation(vals: &[i64], size: u64) -> GraphicalPresentation {
        let g = Graph::cycle(vals.len());
        let lab = Labeling::from_edge_values(&g, size, vals).unwrap();
        GraphicalPresentation::new(size, vec![(g, lab)]).unwrap()
    }

    #[test]
    fn free_reduction() {
        assert_eq!(free_reduce(&w(&[1, 2, -2, -1, 3])), w(&[3]));
        assert_eq!(free_reduce(&w(&[1, -1])), Word::default());
    }

    #[test]
    fn boundary_word_vanishes() {
        let vals: Vec<i64> = (1..=12).collect();
        let p = cycle_presentation(&vals, 12);
        assert!(shortcut_reduce(&p, &w(&vals)).is_empty());
        let rotated: Vec<i64> = vals[5..].iter().chain(&vals[..5]).copied().collect();
        assert!(shortcut_reduce(&p, &w(&rotated)).is_empty());
        let inverse: Vec<i64> = vals.iter().rev().map(|v| -v).collect();
        assert!(shortcut_reduce(&p, &w(&inverse)).is_empty());
    }

    #[test]
    fn long_arc_becomes_short_arc() {
        let vals: Vec<i64> = (1..=12).collect();
        let p = cycle_presentation(&vals, 12);
        let reduced = shortcut_reduce(&p, &w(&vals[..8]));
        assert_eq!(reduced, w(&[-12, -11, -10, -9]));
        // exactly half is already geodesic
        assert_eq!(shortcut_reduce(&p, &w(&vals[..6])), w(&vals[..6]));
    }

    #[test]
    fn ties_take_least_geodesic() {
        let p = cycle_presentation(&[1, 2, 3, 4], 4);
        // 1 2 3 has the geodesic -4; the even split prefers the smaller label
        assert_eq!(shortcut_reduce(&p, &w(&[1, 2, 3])), w(&[-4]));
        assert_eq!(least_geodesic(&p.relators[0], 0, 2), w(&[1, 2]));
    }

    proptest! {
        #[test]
        fn reduce_is_idempotent_and_shortens(v in proptest::collection::vec(prop_oneof![-6i64..=-1, 1i64..=6], 0..30)) {
            let p = cycle_presentation(&[1, 2, 3, 4, 5, 6], 6);
            let word = w(&v);
            let r = shortcut_reduce(&p, &word);
            prop_assert!(r.len() <= word.len());
            prop_assert!(r.is_freely_reduced());
            prop_assert_eq!(shortcut_reduce(&p, &r), r.clone());
            prop_assert_eq!(shortcut_reduce(&p, &word), r);
        }
    }
}
