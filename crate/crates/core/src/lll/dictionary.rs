use std::collections::BTreeSet;

use crate::graph::{enumerate_paths, Graph};
use crate::labeling::{Labeling, Word};

/// Words of all non-backtracking paths of one length, closed under inversion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForbiddenDictionary {
    pub gamma: usize,
    pub words: BTreeSet<Word>,
}

impl ForbiddenDictionary {
    pub fn contains(&self, w: &Word) -> bool {
        self.words.contains(w)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

pub fn build_dictionary(g: &Graph, lab: &Labeling, gamma: usize) -> ForbiddenDictionary {
    assert!(gamma >= 1, "dictionary length must be positive");
    let mut words = BTreeSet::new();
    for p in enumerate_paths(g, gamma) {
        let w = lab.word_of_darts(&p.darts);
        words.insert(w.inverse());
        words.insert(w);
    }
    ForbiddenDictionary { gamma, words }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_cycle() {
        let g = Graph::cycle(6);
        let lab = Labeling::from_edge_values(&g, 1, &[1; 6]).unwrap();
        let d = build_dictionary(&g, &lab, 2);
        let expect: BTreeSet<Word> =
            [Word::from_values(&[1, 1]).unwrap(), Word::from_values(&[-1, -1]).unwrap()].into_iter().collect();
        assert_eq!(d.words, expect);
    }

    #[test]
    fn periodic_cycle() {
        let g = Graph::cycle(6);
        let lab = Labeling::from_edge_values(&g, 3, &[1, 2, 3, 1, 2, 3]).unwrap();
        assert_eq!(enumerate_paths(&g, 2).count(), 12);
        let d = build_dictionary(&g, &lab, 2);
        assert_eq!(d.len(), 6);
        assert!(d.words.iter().all(|w| d.contains(&w.inverse()) && w.len() == 2));
    }

    #[test]
    fn size_bound() {
        let g = Graph::petersen();
        let vals: Vec<i64> = (0..15).map(|k| (k % 4) + 1).collect();
        let lab = Labeling::from_edge_values(&g, 4, &vals).unwrap();
        for gamma in 1..5 {
            let d = build_dictionary(&g, &lab, gamma);
            assert!(d.len() <= 2 * g.dart_count() * 3usize.pow(gamma as u32 - 1));
        }
    }
}
