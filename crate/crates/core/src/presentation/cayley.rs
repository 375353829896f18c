use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::labeling::{Letter, Word};

use super::shortcut::{free_reduce, least_geodesic};
use super::trivial::{is_trivial, Triviality};
use super::GraphicalPresentation;

/// Search cap handed to each equality query.
const EQUALITY_SEARCH_CAP: usize = 256;

/// Ball of the Cayley graph around the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyPatch {
    pub radius: usize,
    /// Canonical words; the first found in breadth-first letter order.
    pub vertices: Vec<Word>,
    pub layer: Vec<usize>,
    /// `(u, v, x)` with `u · x = v` and `x` a positive generator.
    pub edges: Vec<(usize, usize, Letter)>,
    /// Every equality query was decided and the vertex cap was not hit.
    pub exact: bool,
    pub capped: bool,
    keys: HashMap<Vec<i128>, Vec<usize>>,
}

impl CayleyPatch {
    /// `PATCH` header, then one `ID <word>` line per vertex and one
    /// `ID ID <letter>` line per edge.
    pub fn dump(&self) -> String {
        let mut s = format!(
            "PATCH radius {} vertices {} edges {} exact {}\n",
            self.radius,
            self.vertices.len(),
            self.edges.len(),
            self.exact
        );
        for (i, w) in self.vertices.iter().enumerate() {
            if w.is_empty() {
                writeln!(s, "{i}").unwrap();
            } else {
                writeln!(s, "{i} {w}").unwrap();
            }
        }
        for (u, v, x) in &self.edges {
            writeln!(s, "{u} {v} {x}").unwrap();
        }
        s
    }

    /// Vertex equal to `w` among layers `lo..=hi`.
    fn locate(&self, p: &GraphicalPresentation, w: &Word, lo: usize, hi: usize) -> (Option<usize>, bool) {
        let mut decided = true;
        let Some(bucket) = self.keys.get(&p.abelian().key(w)) else {
            return (None, true);
        };
        for &u in bucket {
            if self.layer[u] < lo || self.layer[u] > hi {
                continue;
            }
            match is_trivial(p, &w.concat(&self.vertices[u].inverse()), EQUALITY_SEARCH_CAP) {
                Triviality::Yes => return (Some(u), true),
                Triviality::No => {}
                Triviality::Unknown => decided = false,
            }
        }
        (None, decided)
    }

    fn push(&mut self, p: &GraphicalPresentation, w: Word, layer: usize) -> usize {
        let id = self.vertices.len();
        self.keys.entry(p.abelian().key(&w)).or_default().push(id);
        self.vertices.push(w);
        self.layer.push(layer);
        id
    }

    /// Distance from the identity to the element `w`, if it lies in the patch.
    pub fn distance_of(&self, p: &GraphicalPresentation, w: &Word) -> Option<usize> {
        let w = free_reduce(w);
        self.locate(p, &w, 0, self.radius).0.map(|u| self.layer[u])
    }
}

/// Breadth-first ball of radius `radius`, with equality decided by the
/// word-problem oracle and buckets keyed by the abelian invariant.
pub fn cayley_patch(p: &GraphicalPresentation, radius: usize, vertex_cap: usize) -> CayleyPatch {
    let mut patch = CayleyPatch {
        radius,
        vertices: Vec::new(),
        layer: Vec::new(),
        edges: Vec::new(),
        exact: true,
        capped: false,
        keys: HashMap::new(),
    };
    patch.push(p, Word::default(), 0);
    let mut layer_start = 0;
    for r in 0..=radius {
        let layer_end = patch.vertices.len();
        for u in layer_start..layer_end {
            for x in p.alphabet.letters() {
                let w = free_reduce(&patch.vertices[u].concat(&Word(vec![x])));
                let (found, decided) = patch.locate(p, &w, r.saturating_sub(1), r + 1);
                patch.exact &= decided;
                let v = match found {
                    Some(v) => v,
                    None if r < radius => {
                        if patch.vertices.len() >= vertex_cap {
                            patch.capped = true;
                            patch.exact = false;
                            continue;
                        }
                        patch.push(p, w, r + 1)
                    }
                    None => continue,
                };
                if x.is_positive() {
                    patch.edges.push((u, v, x));
                }
            }
        }
        layer_start = layer_end;
    }
    patch
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbeddingPair {
    pub x: usize,
    pub y: usize,
    pub relator_distance: usize,
    pub cayley_distance: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbeddingReport {
    pub relator: usize,
    pub cap: usize,
    /// `None` when some distance could not be decided.
    pub ok: Option<bool>,
    /// The presentation is not certified C'(1/24).
    pub advisory: bool,
    pub pairs_checked: usize,
    pub patch_vertices: usize,
    /// Pair with the largest shortfall `relator_distance - cayley_distance`.
    pub worst: Option<EmbeddingPair>,
}

/// Compares relator distances with Cayley distances for vertex pairs at
/// relator distance at most `cap`.
pub fn embedding_check(p: &GraphicalPresentation, relator: usize, cap: usize, vertex_cap: usize) -> EmbeddingReport {
    let r = &p.relators[relator];
    let patch = cayley_patch(p, cap, vertex_cap);
    let mut report = EmbeddingReport {
        relator,
        cap,
        ok: Some(true),
        advisory: !p.certified(),
        pairs_checked: 0,
        patch_vertices: patch.vertices.len(),
        worst: None,
    };
    let mut worst_gap = -1i64;
    let n = r.graph.vertex_count();
    for x in 0..n {
        for y in x + 1..n {
            let d = r.distances[x][y];
            if d > cap {
                continue;
            }
            report.pairs_checked += 1;
            let label = least_geodesic(r, x, y);
            let cd = patch.distance_of(p, &label);
            let gap = match cd {
                Some(c) => d as i64 - c as i64,
                None => {
                    report.ok = None;
                    i64::MAX
                }
            };
            if gap != 0 && report.ok == Some(true) {
                report.ok = Some(false);
            }
            if gap > worst_gap {
                worst_gap = gap;
                report.worst = Some(EmbeddingPair { x, y, relator_distance: d, cayley_distance: cd });
            }
        }
    }
    if !patch.exact && report.ok == Some(true) {
        report.ok = None;
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::labeling::Labeling;

    #[test]
    fn free_group_balls() {
        let p1 = cayley_patch(&GraphicalPresentation::free(1), 3, 1000);
        assert_eq!(p1.vertices.len(), 7);
        assert_eq!(p1.edges.len(), 6);
        assert!(p1.exact);
        let p2 = cayley_patch(&GraphicalPresentation::free(2), 2, 1000);
        assert_eq!(p2.vertices.len(), 17);
        assert_eq!(p2.edges.len(), 16);
    }

    #[test]
    fn finite_cyclic_group_closes_up() {
        // ⟨a | a^4⟩ has four elements and a 4-cycle Cayley graph
        let g = Graph::cycle(4);
        let lab = Labeling::from_edge_values(&g, 1, &[1, 1, 1, 1]).unwrap();
        let p = GraphicalPresentation::new(1, vec![(g, lab)]).unwrap();
        let patch = cayley_patch(&p, 3, 100);
        assert_eq!(patch.vertices.len(), 4);
        assert_eq!(patch.edges.len(), 4);
        assert_eq!(patch.layer, vec![0, 1, 1, 2]);
    }

    #[test]
    fn dump_layout() {
        let patch = cayley_patch(&GraphicalPresentation::free(1), 1, 10);
        assert_eq!(patch.dump(), "PATCH radius 1 vertices 3 edges 2 exact true\n0\n1 1\n2 -1\n0 1 1\n2 0 1\n");
    }

    #[test]
    fn vertex_cap_marks_inexact() {
        let patch = cayley_patch(&GraphicalPresentation::free(2), 3, 10);
        assert!(patch.capped && !patch.exact);
        assert_eq!(patch.vertices.len(), 10);
    }

    #[test]
    fn distinct_letter_cycle_embeds() {
        let g = Graph::cycle(6);
        let lab = Labeling::from_edge_values(&g, 6, &[1, 2, 3, 4, 5, 6]).unwrap();
        let p = GraphicalPresentation::new(6, vec![(g, lab)]).unwrap();
        let rep = embedding_check(&p, 0, 3, 100_000);
        assert_eq!(rep.ok, Some(true));
        assert!(!rep.advisory);
        assert_eq!(rep.pairs_checked, 15);
    }
}
