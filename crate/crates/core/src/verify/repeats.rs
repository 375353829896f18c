use std::collections::BTreeMap;

use serde::Serialize;

use super::Relator;
use crate::graph::{enumerate_paths, metrics, DartId, Graph};
use crate::labeling::Word;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Occurrence {
    pub graph: usize,
    pub darts: Vec<DartId>,
    /// The path reads the inverse of the reported word.
    pub inverted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepeatReport {
    /// Longest word read along two essentially different paths.
    pub longest: usize,
    /// Longest such word with both witness paths simple.
    pub longest_simple: usize,
    /// Per member: longest repeat with at least one occurrence in it.
    pub per_graph: Vec<usize>,
    /// Per member: longest repeat with a simple occurrence in it and a second
    /// simple occurrence anywhere.
    pub per_graph_simple: Vec<usize>,
    /// Some member reached its search cap (girth, or diameter for trees)
    /// while still repeating; the true value may be larger.
    pub capped: bool,
    pub word: Option<Word>,
    pub witness: Option<(Occurrence, Occurrence)>,
    /// False when the occurrence budget ran out; lengths are then lower bounds.
    pub complete: bool,
}

fn reverse(g: &Graph, darts: &[DartId]) -> Vec<DartId> {
    darts.iter().rev().map(|&d| g.partner(d)).collect()
}

fn is_simple(g: &Graph, darts: &[DartId]) -> bool {
    let mut vs: Vec<usize> = std::iter::once(g.source(darts[0])).chain(darts.iter().map(|&d| g.target(d))).collect();
    vs.sort_unstable();
    vs.windows(2).all(|w| w[0] != w[1])
}

/// Occurrence identity: graph plus projected darts in canonical orientation.
type Key = (usize, Vec<DartId>);

struct Search<'a> {
    members: &'a [Relator<'a>],
    caps: Vec<usize>,
}

impl Search<'_> {
    fn key(&self, graph: usize, darts: &[DartId]) -> Vec<DartId> {
        match self.members[graph].quotient {
            Some(q) => darts.iter().map(|&d| q.dart[d]).collect(),
            None => darts.to_vec(),
        }
    }

    /// Files a path under its canonical word. Each path is stored in the
    /// orientation with the smaller key; `inverted` records whether that
    /// orientation reads the inverse of the canonical word.
    fn file(&self, groups: &mut BTreeMap<Word, BTreeMap<Key, Occurrence>>, graph: usize, darts: Vec<DartId>) {
        let m = &self.members[graph];
        let r = reverse(m.graph, &darts);
        let (kd, kr) = (self.key(graph, &darts), self.key(graph, &r));
        let (darts, k) = if kr < kd { (r, kr) } else { (darts, kd) };
        let w = m.labeling.word_of_darts(&darts);
        let inv = w.inverse();
        let (word, inverted) = if inv < w { (inv, true) } else { (w, false) };
        let occ = Occurrence { graph, darts, inverted };
        let slot = groups.entry(word).or_default().entry((graph, k)).or_insert_with(|| occ.clone());
        if occ < *slot {
            *slot = occ;
        }
    }
}

/// Level-by-level search: a repeat of length `l` restricts to a repeat of
/// length `l - 1` on its prefix or its suffix, so only extensions of repeated
/// paths need to be examined at the next level.
pub fn longest_repeated_path(members: &[Relator<'_>]) -> RepeatReport {
    longest_repeated_path_within(members, usize::MAX)
}

/// As [`longest_repeated_path`], giving up once a level files more than
/// `max_occurrences` paths.
pub fn longest_repeated_path_within(members: &[Relator<'_>], max_occurrences: usize) -> RepeatReport {
    let caps: Vec<usize> = members
        .iter()
        .map(|m| match metrics(m.graph) {
            Ok(x) => x.girth.finite().unwrap_or(x.diameter),
            Err(_) => m.graph.edge_count(),
        })
        .collect();
    let search = Search { members, caps };
    let mut report = RepeatReport {
        longest: 0,
        longest_simple: 0,
        per_graph: vec![0; members.len()],
        per_graph_simple: vec![0; members.len()],
        capped: false,
        word: None,
        witness: None,
        complete: true,
    };
    let mut groups: BTreeMap<Word, BTreeMap<Key, Occurrence>> = BTreeMap::new();
    for (i, m) in members.iter().enumerate() {
        if search.caps[i] == 0 {
            continue;
        }
        for d in 0..m.graph.dart_count() {
            search.file(&mut groups, i, vec![d]);
        }
    }
    let mut len = 1;
    loop {
        let repeated: Vec<(&Word, Vec<&Occurrence>)> = groups
            .iter()
            .filter(|(_, occ)| occ.len() >= 2)
            .map(|(w, occ)| (w, occ.values().collect()))
            .collect();
        if repeated.is_empty() {
            break;
        }
        report.longest = len;
        let (w, occs) = &repeated[0];
        report.word = Some((*w).clone());
        report.witness = Some((occs[0].clone(), occs[1].clone()));
        for (_, occs) in &repeated {
            for o in occs {
                report.per_graph[o.graph] = len;
                if len >= search.caps[o.graph] {
                    report.capped = true;
                }
            }
            let simple: Vec<&&Occurrence> =
                occs.iter().filter(|o| is_simple(members[o.graph].graph, &o.darts)).collect();
            if simple.len() >= 2 {
                report.longest_simple = len;
                for o in simple {
                    report.per_graph_simple[o.graph] = len;
                }
            }
        }
        let mut next: BTreeMap<Word, BTreeMap<Key, Occurrence>> = BTreeMap::new();
        let mut filed = 0usize;
        for (_, occs) in &repeated {
            for o in occs {
                let g = members[o.graph].graph;
                if len >= search.caps[o.graph] {
                    continue;
                }
                for darts in [o.darts.clone(), reverse(g, &o.darts)] {
                    let last = *darts.last().unwrap();
                    for &d in g.out_darts(g.target(last)) {
                        if d != g.partner(last) {
                            let mut ext = darts.clone();
                            ext.push(d);
                            search.file(&mut next, o.graph, ext);
                            filed += 1;
                        }
                    }
                }
            }
        }
        if filed > max_occurrences {
            report.complete = false;
            break;
        }
        groups = next;
        len += 1;
    }
    report
}

/// Every path reading `word` or its inverse; `inverted` marks the latter.
/// Deck-related paths are reported once, by their least representative.
pub fn find_occurrences(members: &[Relator<'_>], word: &Word) -> Vec<Occurrence> {
    let inv = word.inverse();
    let search = Search { members, caps: Vec::new() };
    let mut out: BTreeMap<Key, Occurrence> = BTreeMap::new();
    for (i, m) in members.iter().enumerate() {
        if word.is_empty() {
            continue;
        }
        for p in enumerate_paths(m.graph, word.len()) {
            let w = m.labeling.word_of_darts(&p.darts);
            let inverted = if &w == word {
                false
            } else if w == inv {
                true
            } else {
                continue;
            };
            let key = (i, search.key(i, &p.darts));
            let occ = Occurrence { graph: i, darts: p.darts, inverted };
            let slot = out.entry(key).or_insert_with(|| occ.clone());
            if occ < *slot {
                *slot = occ;
            }
        }
    }
    out.into_values().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labeling::Labeling;

    #[test]
    fn two_identical_triangles() {
        let g = Graph::cycle(3);
        let lab = Labeling::from_edge_values(&g, 3, &[1, 2, 3]).unwrap();
        let r = longest_repeated_path(&[Relator::plain(&g, &lab), Relator::plain(&g, &lab)]);
        assert_eq!(r.longest, 3);
        assert!(r.capped);
        assert_eq!(r.per_graph, vec![3, 3]);
        assert_eq!(r.longest_simple, 2);
    }

    #[test]
    fn distinct_letters_never_repeat() {
        let g = Graph::cycle(6);
        let lab = Labeling::from_edge_values(&g, 6, &[1, 2, 3, 4, 5, 6]).unwrap();
        let r = longest_repeated_path(&[Relator::plain(&g, &lab)]);
        assert_eq!(r.longest, 0);
        assert_eq!(r.witness, None);
    }

    #[test]
    fn periodic_cycle_repeats_within_itself() {
        let g = Graph::cycle(6);
        let lab = Labeling::from_edge_values(&g, 3, &[1, 2, 3, 1, 2, 3]).unwrap();
        let r = longest_repeated_path(&[Relator::plain(&g, &lab)]);
        assert_eq!(r.longest, 6);
        let (a, b) = r.witness.unwrap();
        assert_ne!(a.darts, b.darts);
        let read = |o: &Occurrence| {
            let w = lab.word_of_darts(&o.darts);
            if o.inverted { w.inverse() } else { w }
        };
        assert_eq!(read(&a), read(&b));
        assert_eq!(&read(&a), r.word.as_ref().unwrap());
    }

    #[test]
    fn inverse_occurrence_counts() {
        // the same edge letter read forwards on one edge and backwards on another
        let g = Graph::path_graph(3);
        let lab = Labeling::from_edge_values(&g, 1, &[1, -1]).unwrap();
        let r = longest_repeated_path(&[Relator::plain(&g, &lab)]);
        assert_eq!(r.longest, 1);
        let (a, b) = r.witness.unwrap();
        assert_ne!(a.inverted, b.inverted);
    }
}
