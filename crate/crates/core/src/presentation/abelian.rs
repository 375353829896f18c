use std::collections::VecDeque;

use crate::labeling::{Letter, Word};

use super::PresentedRelator;

/// Image in `Z^S / L`, where `L` is spanned by the abelianized cycle words
/// of every relator. Equal group elements have equal keys.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianInvariant {
    size: usize,
    /// Hermite normal form rows with their pivot columns.
    basis: Vec<(usize, Vec<i128>)>,
}

fn add_letter(v: &mut [i128], l: Letter, sign: i128) {
    let s = if l.is_positive() { sign } else { -sign };
    v[l.generator() as usize - 1] += s;
}

fn cycle_vectors(r: &PresentedRelator, size: usize) -> Vec<Vec<i128>> {
    let g = &r.graph;
    let n = g.vertex_count();
    let mut pot: Vec<Option<Vec<i128>>> = vec![None; n];
    let mut tree_dart = vec![usize::MAX; n];
    let mut out = Vec::new();
    for root in 0..n {
        if pot[root].is_some() {
            continue;
        }
        pot[root] = Some(vec![0; size]);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &d in g.out_darts(u) {
                let v = g.target(d);
                if pot[v].is_none() {
                    let mut p = pot[u].clone().unwrap();
                    add_letter(&mut p, r.labeling.letter(d), 1);
                    pot[v] = Some(p);
                    tree_dart[v] = g.partner(d);
                    queue.push_back(v);
                }
            }
        }
    }
    for e in 0..g.edge_count() {
        let d = 2 * e;
        let (a, b) = (g.source(d), g.target(d));
        if tree_dart[b] == g.partner(d) || tree_dart[a] == d {
            continue;
        }
        let mut v = pot[a].clone().unwrap();
        add_letter(&mut v, r.labeling.letter(d), 1);
        for (x, y) in v.iter_mut().zip(pot[b].as_ref().unwrap()) {
            *x -= y;
        }
        if v.iter().any(|&x| x != 0) {
            out.push(v);
        }
    }
    out
}

fn hermite(mut rows: Vec<Vec<i128>>, cols: usize) -> Vec<(usize, Vec<i128>)> {
    let mut top = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        loop {
            let pick = (top..rows.len()).filter(|&i| rows[i][c] != 0).min_by_key(|&i| rows[i][c].abs());
            let Some(i) = pick else { break };
            rows.swap(top, i);
            let mut clean = true;
            for j in top + 1..rows.len() {
                if rows[j][c] != 0 {
                    let q = rows[j][c] / rows[top][c];
                    let pivot = rows[top].clone();
                    for (x, y) in rows[j].iter_mut().zip(&pivot) {
                        *x -= q * y;
                    }
                    clean &= rows[j][c] == 0;
                }
            }
            if clean {
                if rows[top][c] < 0 {
                    rows[top].iter_mut().for_each(|x| *x = -*x);
                }
                pivots.push(c);
                top += 1;
                break;
            }
        }
    }
    rows.truncate(top);
    for k in 0..rows.len() {
        let c = pivots[k];
        for j in 0..k {
            let q = rows[j][c].div_euclid(rows[k][c]);
            if q != 0 {
                let pivot = rows[k].clone();
                for (x, y) in rows[j].iter_mut().zip(&pivot) {
                    *x -= q * y;
                }
            }
        }
    }
    pivots.into_iter().zip(rows).collect()
}

impl AbelianInvariant {
    pub(crate) fn new(alphabet_size: u64, relators: &[PresentedRelator]) -> Self {
        let size = alphabet_size as usize;
        let rows: Vec<Vec<i128>> = relators.iter().flat_map(|r| cycle_vectors(r, size)).collect();
        AbelianInvariant { size, basis: hermite(rows, size) }
    }

    pub fn rank_of_relations(&self) -> usize {
        self.basis.len()
    }

    /// Canonical coset representative of the word's letter counts.
    pub fn key(&self, w: &Word) -> Vec<i128> {
        let mut v = vec![0; self.size];
        for &l in w.letters() {
            add_letter(&mut v, l, 1);
        }
        for (c, row) in &self.basis {
            let q = v[*c].div_euclid(row[*c]);
            if q != 0 {
                for (x, y) in v.iter_mut().zip(row) {
                    *x -= q * y;
                }
            }
        }
        v
    }

    /// True only when the word is certainly nontrivial.
    pub fn separates_from_identity(&self, w: &Word) -> bool {
        self.key(w).iter().any(|&x| x != 0)
    }
}
