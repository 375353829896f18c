//! Exact piece search.
//!
//! A piece shared by relators `r` and `s` is a connected vertex set of the
//! fibered product `r ×_W s` (pairs of vertices, joined by equally labeled
//! darts) whose two coordinate projections are injective. Its edges are all
//! common edges between its pairs. For `r = s` the set is discarded when both
//! coordinates always project to the same base vertex, i.e. the two
//! occurrences differ by the identity or a deck transformation.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use super::repeats::longest_repeated_path;
use super::Relator;
use crate::graph::{Graph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PieceOptions {
    /// Relators with more edges than this are not searched exhaustively.
    pub edge_cap: usize,
    /// Connected sets examined per fibered component before giving up.
    pub budget: usize,
}

impl Default for PieceOptions {
    fn default() -> Self {
        PieceOptions { edge_cap: 4096, budget: 2_000_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PieceWitness {
    pub relators: (usize, usize),
    /// Matched vertex pairs.
    pub pairs: Vec<(VertexId, VertexId)>,
    pub edges: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PieceBound {
    /// Best piece found (exact value when `exact`).
    pub lower: usize,
    /// Upper bound; equals `lower` when `exact`.
    pub upper: usize,
    pub exact: bool,
    pub witness: Option<PieceWitness>,
}

struct Fibered<'a> {
    r: Relator<'a>,
    s: Relator<'a>,
    same: bool,
    ns: usize,
}

impl Fibered<'_> {
    fn split(&self, p: usize) -> (VertexId, VertexId) {
        (p / self.ns, p % self.ns)
    }

    /// Fibered neighbours of `p` with the number of common edges to each.
    fn neighbours(&self, p: usize) -> BTreeMap<usize, usize> {
        let (u, v) = self.split(p);
        let (gr, gs) = (self.r.graph, self.s.graph);
        let mut counts: BTreeMap<(usize, i64), (usize, usize)> = BTreeMap::new();
        for &d in gr.out_darts(u) {
            for &e in gs.out_darts(v) {
                let l = self.r.labeling.letter(d);
                if l == self.s.labeling.letter(e) {
                    let q = gr.target(d) * self.ns + gs.target(e);
                    counts.entry((q, l.value())).or_default();
                }
            }
        }
        let mut out: BTreeMap<usize, usize> = BTreeMap::new();
        for (&(q, l), _) in counts.iter() {
            let (u2, v2) = self.split(q);
            let nr = gr.out_darts(u).iter().filter(|&&d| gr.target(d) == u2 && self.r.labeling.letter(d).value() == l).count();
            let ns = gs.out_darts(v).iter().filter(|&&e| gs.target(e) == v2 && self.s.labeling.letter(e).value() == l).count();
            *out.entry(q).or_default() += nr.min(ns);
        }
        out
    }

    fn deck_related(&self, p: usize) -> bool {
        let (u, v) = self.split(p);
        self.same && self.r.project(u) == self.s.project(v)
    }
}

struct Enumeration<'f, 'a> {
    fib: &'f Fibered<'a>,
    adj: BTreeMap<usize, BTreeMap<usize, usize>>,
    budget: usize,
    visited: usize,
    best: usize,
    best_set: Vec<usize>,
}

impl Enumeration<'_, '_> {
    fn edge_gain(&self, set: &[usize], x: usize) -> usize {
        let nx = &self.adj[&x];
        let own = nx.get(&x).copied().unwrap_or(0) / 2;
        own + set.iter().map(|p| nx.get(p).copied().unwrap_or(0)).sum::<usize>()
    }

    fn conflicts(&self, set: &[usize], x: usize) -> bool {
        let (u, v) = self.fib.split(x);
        set.iter().any(|&p| {
            let (a, b) = self.fib.split(p);
            a == u || b == v
        })
    }

    /// Connected-set enumeration with `root` as minimal element; returns false
    /// when the budget runs out.
    fn grow(&mut self, set: &mut Vec<usize>, edges: usize, ext: Vec<usize>, root: usize) -> bool {
        if self.visited >= self.budget {
            return false;
        }
        self.visited += 1;
        if edges > self.best && !set.iter().all(|&p| self.fib.deck_related(p)) {
            self.best = edges;
            self.best_set = set.clone();
        }
        let mut ext = ext;
        while let Some(w) = ext.pop() {
            if self.conflicts(set, w) {
                continue;
            }
            let gain = self.edge_gain(set, w);
            let mut next = ext.clone();
            for &x in self.adj[&w].keys() {
                if x > root && x != w && !set.contains(&x) && !ext.contains(&x)
                    && !set.iter().any(|p| self.adj[p].contains_key(&x))
                {
                    next.push(x);
                }
            }
            set.push(w);
            let ok = self.grow(set, edges + gain, next, root);
            set.pop();
            if !ok {
                return false;
            }
        }
        true
    }
}

/// Searches all pieces between relators `i <= j`. Returns per-relator bounds.
///
/// Pairs involving a relator over the edge cap are not enumerated; their
/// lower bound is the longest repeated simple path (itself a piece) and their
/// upper bound the projected edge count of the fibered components.
pub fn piece_bound(relators: &[Relator<'_>], options: PieceOptions) -> Vec<PieceBound> {
    let mut out: Vec<PieceBound> =
        vec![PieceBound { lower: 0, upper: 0, exact: true, witness: None }; relators.len()];
    for i in 0..relators.len() {
        for j in i..relators.len() {
            let fib = Fibered { r: relators[i], s: relators[j], same: i == j, ns: relators[j].graph.vertex_count() };
            let over = relators[i].graph.edge_count() > options.edge_cap
                || relators[j].graph.edge_count() > options.edge_cap;
            let mut pair = pair_bound(&fib, if over { 0 } else { options.budget }, (i, j));
            if over {
                let pick: Vec<Relator<'_>> = if i == j { vec![relators[i]] } else { vec![relators[i], relators[j]] };
                let rep = longest_repeated_path(&pick);
                pair.lower = pair.lower.max(rep.per_graph_simple.iter().copied().min().unwrap_or(0));
                pair.upper = pair.upper.max(pair.lower);
            }
            for k in [i, j] {
                let b = &mut out[k];
                if pair.lower > b.lower {
                    b.lower = pair.lower;
                    b.witness = pair.witness.clone();
                }
                b.upper = b.upper.max(pair.upper);
                b.exact &= pair.exact;
            }
        }
    }
    for b in &mut out {
        if b.exact {
            b.upper = b.lower;
        }
    }
    out
}

fn pair_bound(fib: &Fibered<'_>, budget: usize, ids: (usize, usize)) -> PieceBound {
    let nr = fib.r.graph.vertex_count();
    let total = nr * fib.ns;
    let mut comp = vec![usize::MAX; total];
    let mut result = PieceBound { lower: 0, upper: 0, exact: true, witness: None };
    let mut next_comp = 0;
    for u in 0..fib.r.fundamental() {
        for v in 0..fib.ns {
            let seed = u * fib.ns + v;
            if comp[seed] != usize::MAX {
                continue;
            }
            // collect the component
            let mut members = vec![seed];
            let mut adj = BTreeMap::new();
            comp[seed] = next_comp;
            let mut queue = VecDeque::from([seed]);
            while let Some(p) = queue.pop_front() {
                let n = fib.neighbours(p);
                for &q in n.keys() {
                    if comp[q] == usize::MAX {
                        comp[q] = next_comp;
                        members.push(q);
                        queue.push_back(q);
                    }
                }
                adj.insert(p, n);
            }
            next_comp += 1;
            if members.iter().all(|&p| fib.deck_related(p)) {
                continue;
            }
            let upper = projected_edges(fib, &members, &adj);
            let mut en = Enumeration { fib, adj, budget, visited: 0, best: 0, best_set: Vec::new() };
            members.sort_unstable();
            let mut complete = true;
            for &root in &members {
                let (ru, _) = fib.split(root);
                if ru >= fib.r.fundamental() {
                    continue;
                }
                let ext: Vec<usize> = en.adj[&root].keys().copied().filter(|&x| x > root).collect();
                let own = en.adj[&root].get(&root).copied().unwrap_or(0) / 2;
                if !en.grow(&mut vec![root], own, ext, root) {
                    complete = false;
                    break;
                }
            }
            if en.best > result.lower {
                result.lower = en.best;
                let mut pairs: Vec<(usize, usize)> = en.best_set.iter().map(|&p| fib.split(p)).collect();
                pairs.sort_unstable();
                result.witness = Some(PieceWitness { relators: ids, pairs, edges: en.best });
            }
            if complete {
                result.upper = result.upper.max(en.best);
            } else {
                result.exact = false;
                result.upper = result.upper.max(upper);
            }
        }
    }
    result.upper = result.upper.max(result.lower);
    result
}

/// Fewer distinct edges on either side than any piece in the component could use.
fn projected_edges(fib: &Fibered<'_>, members: &[usize], adj: &BTreeMap<usize, BTreeMap<usize, usize>>) -> usize {
    let mut left = std::collections::BTreeSet::new();
    let mut right = std::collections::BTreeSet::new();
    for &p in members {
        let (u, v) = fib.split(p);
        for &q in adj[&p].keys() {
            let (u2, v2) = fib.split(q);
            for &d in fib.r.graph.out_darts(u) {
                if fib.r.graph.target(d) == u2 {
                    left.insert(Graph::edge_of(d));
                }
            }
            for &e in fib.s.graph.out_darts(v) {
                if fib.s.graph.target(e) == v2 {
                    right.insert(Graph::edge_of(e));
                }
            }
        }
    }
    left.len().min(right.len())
}


#[cfg(test)]
mod cover_tests {
    use super::*;
    use crate::labeling::Labeling;

    #[test]
    fn over_cap_uses_repeats() {
        let g = Graph::cycle(6);
        let lab = Labeling::from_edge_values(&g, 3, &[1, 2, 1, 2, 3, 3]).unwrap();
        let b = piece_bound(&[Relator::plain(&g, &lab)], PieceOptions { edge_cap: 2, budget: 1000 });
        assert!(!b[0].exact);
        assert!(b[0].lower >= 2);
        let exact = piece_bound(&[Relator::plain(&g, &lab)], PieceOptions::default());
        assert!(exact[0].exact);
        assert!(b[0].lower <= exact[0].lower && exact[0].lower <= b[0].upper);
    }
}
