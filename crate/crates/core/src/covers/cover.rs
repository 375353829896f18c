use std::collections::VecDeque;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{metrics, DartId, Distance, Graph, VertexId};
use crate::labeling::{Labeling, LabelingError};

/// Homology rank above which the cover is not built.
pub const MAX_RANK: usize = 22;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("graph is empty or disconnected")]
    Disconnected,
    #[error("homology rank {rank} exceeds the limit {limit}")]
    RankTooLarge { rank: usize, limit: usize },
    #[error("graph has no cycle")]
    NoCycle,
    #[error("girth {achieved} after {iterations} covers, target {target}")]
    Exhausted { achieved: usize, iterations: usize, target: usize },
    #[error(transparent)]
    Labeling(#[from] LabelingError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
pub enum CoveringViolation {
    #[error("dart {0}: projection does not commute with the involution")]
    Involution(DartId),
    #[error("dart {0}: projection does not commute with incidence")]
    Incidence(DartId),
    #[error("vertex {0}: star does not map bijectively")]
    Star(VertexId),
    #[error("vertex {0}: deck orbit differs from its fiber")]
    Transitivity(VertexId),
    #[error("deck generator {0} does not preserve adjacency")]
    Deck(usize),
    #[error("dart {0}: letter differs from the base letter")]
    Label(DartId),
}

/// A covering `cover -> base` with its deck translations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringMap {
    pub base: Graph,
    pub cover: Graph,
    pub vertex_projection: Vec<VertexId>,
    pub dart_projection: Vec<DartId>,
    /// Deck group generators as vertex permutations of the cover.
    pub deck_generators: Vec<Vec<VertexId>>,
    /// Base edges of the spanning tree used to build the cover.
    pub tree_edges: Vec<usize>,
    pub base_labeling: Option<Labeling>,
    pub cover_labeling: Option<Labeling>,
}

impl CoveringMap {
    pub fn rank(&self) -> usize {
        self.deck_generators.len()
    }

    /// Sheet index of a cover vertex; sheet 0 is a fundamental domain.
    pub fn sheet(&self, v: VertexId) -> usize {
        v / self.base.vertex_count()
    }

    /// Independent check of the covering axioms and the label pullback.
    pub fn check(&self) -> Result<(), CoveringViolation> {
        let (b, c) = (&self.base, &self.cover);
        for d in 0..c.dart_count() {
            let pd = self.dart_projection[d];
            if self.dart_projection[c.partner(d)] != b.partner(pd) {
                return Err(CoveringViolation::Involution(d));
            }
            if self.vertex_projection[c.source(d)] != b.source(pd)
                || self.vertex_projection[c.target(d)] != b.target(pd)
            {
                return Err(CoveringViolation::Incidence(d));
            }
        }
        for v in 0..c.vertex_count() {
            let mut image: Vec<DartId> = c.out_darts(v).iter().map(|&d| self.dart_projection[d]).collect();
            image.sort_unstable();
            if image != b.out_darts(self.vertex_projection[v]) {
                return Err(CoveringViolation::Star(v));
            }
        }
        for (i, perm) in self.deck_generators.iter().enumerate() {
            let mut edges: Vec<(usize, usize)> = c.edges().map(|(u, v)| (u.min(v), u.max(v))).collect();
            let mut moved: Vec<(usize, usize)> =
                c.edges().map(|(u, v)| (perm[u].min(perm[v]), perm[u].max(perm[v]))).collect();
            edges.sort_unstable();
            moved.sort_unstable();
            if edges != moved || (0..c.vertex_count()).any(|v| self.vertex_projection[perm[v]] != self.vertex_projection[v]) {
                return Err(CoveringViolation::Deck(i));
            }
        }
        for v in 0..b.vertex_count() {
            let mut orbit = vec![v];
            let mut seen = vec![false; c.vertex_count()];
            seen[v] = true;
            let mut k = 0;
            while k < orbit.len() {
                let x = orbit[k];
                for perm in &self.deck_generators {
                    if !seen[perm[x]] {
                        seen[perm[x]] = true;
                        orbit.push(perm[x]);
                    }
                }
                k += 1;
            }
            let fiber = (0..c.vertex_count()).filter(|&u| self.vertex_projection[u] == v).count();
            if orbit.len() != fiber || orbit.iter().any(|&u| self.vertex_projection[u] != v) {
                return Err(CoveringViolation::Transitivity(v));
            }
        }
        if let (Some(bl), Some(cl)) = (&self.base_labeling, &self.cover_labeling) {
            for d in 0..c.dart_count() {
                if cl.letter(d) != bl.letter(self.dart_projection[d])
                    || cl.letter(c.partner(d)) != cl.letter(d).inverse()
                {
                    return Err(CoveringViolation::Label(d));
                }
            }
        }
        Ok(())
    }
}

/// Edges of the BFS spanning tree from vertex 0, ascending.
fn bfs_tree(g: &Graph) -> Vec<usize> {
    let mut seen = vec![false; g.vertex_count()];
    let mut tree = Vec::new();
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(u) = queue.pop_front() {
        for &d in g.out_darts(u) {
            let w = g.target(d);
            if !seen[w] {
                seen[w] = true;
                tree.push(Graph::edge_of(d));
                queue.push_back(w);
            }
        }
    }
    tree.sort_unstable();
    tree
}

/// The ℤ₂-homology cover.
///
/// Cover vertex `(v, x)` has id `x·V + v`, where `x` is a bit vector over the
/// non-tree edges in increasing order; base edge `u` from `a` to `b` lifts to
/// edge `x·E + u` from `(a, x)` to `(b, x + e_j)`, with `e_j = 0` on tree edges.
pub fn z2_cover(g: &Graph, labeling: Option<&Labeling>) -> Result<CoveringMap, CoverError> {
    if g.check_connected().is_err() {
        return Err(CoverError::Disconnected);
    }
    let tree = bfs_tree(g);
    let mut bit = vec![0usize; g.edge_count()];
    let mut rank = 0;
    for (u, b) in bit.iter_mut().enumerate() {
        if tree.binary_search(&u).is_err() {
            if rank >= MAX_RANK {
                return Err(CoverError::RankTooLarge { rank: g.edge_count() + 1 - g.vertex_count(), limit: MAX_RANK });
            }
            *b = 1 << rank;
            rank += 1;
        }
    }
    let (nv, ne, sheets) = (g.vertex_count(), g.edge_count(), 1usize << rank);
    let mut edges = Vec::with_capacity(sheets * ne);
    for x in 0..sheets {
        for (u, (a, b)) in g.edges().enumerate() {
            edges.push((x * nv + a, (x ^ bit[u]) * nv + b));
        }
    }
    let cover = Graph::from_edges(format!("{}.z2", g.name()), sheets * nv, &edges).expect("lifted edges in range");
    let vertex_projection = (0..cover.vertex_count()).map(|v| v % nv).collect();
    let dart_projection = (0..cover.dart_count()).map(|d| 2 * (Graph::edge_of(d) % ne) + d % 2).collect();
    let deck_generators = (0..rank)
        .map(|j| (0..cover.vertex_count()).map(|v| ((v / nv) ^ (1 << j)) * nv + v % nv).collect())
        .collect();
    let mut cm = CoveringMap {
        base: g.clone(),
        cover,
        vertex_projection,
        dart_projection,
        deck_generators,
        tree_edges: tree,
        base_labeling: labeling.cloned(),
        cover_labeling: None,
    };
    if let Some(lab) = labeling {
        lab.check_graph(g)?;
        let letters = cm.dart_projection.iter().map(|&d| lab.letter(d)).collect();
        cm.cover_labeling = Some(Labeling::from_dart_letters(&cm.cover, lab.alphabet(), letters)?);
    }
    Ok(cm)
}

/// Iterated ℤ₂-homology covers.
#[derive(Debug, Clone)]
pub struct CompositeCover {
    pub stages: Vec<CoveringMap>,
    pub girth: usize,
}

impl CompositeCover {
    pub fn top(&self) -> Option<&CoveringMap> {
        self.stages.last()
    }

    /// Projection of top vertices to the original base.
    pub fn vertex_projection(&self) -> Vec<VertexId> {
        let Some(top) = self.top() else { return Vec::new() };
        (0..top.cover.vertex_count())
            .map(|v| self.stages.iter().rev().fold(v, |x, s| s.vertex_projection[x]))
            .collect()
    }

    pub fn dart_projection(&self) -> Vec<DartId> {
        let Some(top) = self.top() else { return Vec::new() };
        (0..top.cover.dart_count())
            .map(|d| self.stages.iter().rev().fold(d, |x, s| s.dart_projection[x]))
            .collect()
    }
}

fn girth_of(g: &Graph) -> Option<usize> {
    match metrics(g).ok()?.girth {
        Distance::Finite(n) => Some(n),
        Distance::Infinite => None,
    }
}

/// Covers repeatedly until the girth reaches `target`.
pub fn girth_boost(
    g: &Graph,
    labeling: Option<&Labeling>,
    target: usize,
    max_iterations: usize,
) -> Result<CompositeCover, CoverError> {
    let mut girth = girth_of(g).ok_or(CoverError::NoCycle)?;
    let mut stages: Vec<CoveringMap> = Vec::new();
    while girth < target {
        if stages.len() >= max_iterations {
            return Err(CoverError::Exhausted { achieved: girth, iterations: stages.len(), target });
        }
        let next = match stages.last() {
            Some(s) => z2_cover(&s.cover, s.cover_labeling.as_ref())?,
            None => z2_cover(g, labeling)?,
        };
        girth = girth_of(&next.cover).ok_or(CoverError::NoCycle)?;
        stages.push(next);
    }
    Ok(CompositeCover { stages, girth })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycles_double() {
        for n in 3..=8 {
            let cm = z2_cover(&Graph::cycle(n), None).unwrap();
            assert_eq!(cm.rank(), 1);
            assert_eq!((cm.cover.vertex_count(), cm.cover.edge_count()), (2 * n, 2 * n));
            assert_eq!(girth_of(&cm.cover), Some(2 * n));
            assert!(cm.cover.is_connected());
            cm.check().unwrap();
        }
    }

    #[test]
    fn theta_gives_cube() {
        let cm = z2_cover(&Graph::theta(), None).unwrap();
        assert_eq!((cm.cover.vertex_count(), cm.cover.edge_count(), cm.rank()), (8, 12, 2));
        assert_eq!(girth_of(&cm.cover), Some(4));
        assert!((0..8).all(|v| cm.cover.degree(v) == 3));
        cm.check().unwrap();
    }

    #[test]
    fn tree_is_its_own_cover() {
        let g = Graph::path_graph(4);
        let cm = z2_cover(&g, None).unwrap();
        assert_eq!(cm.rank(), 0);
        assert_eq!(cm.cover.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
        assert!(matches!(girth_boost(&g, None, 5, 3), Err(CoverError::NoCycle)));
    }

    #[test]
    fn labels_pull_back() {
        let g = Graph::theta();
        let lab = Labeling::from_edge_values(&g, 3, &[1, -2, 3]).unwrap();
        let cm = z2_cover(&g, Some(&lab)).unwrap();
        cm.check().unwrap();
        assert!(cm.cover_labeling.unwrap().is_reduced(&cm.cover).is_ok());
    }

    #[test]
    fn boost_triangle() {
        let c = girth_boost(&Graph::cycle(3), None, 12, 5).unwrap();
        assert_eq!((c.stages.len(), c.girth), (2, 12));
        let c = girth_boost(&Graph::cycle(3), None, 24, 5).unwrap();
        assert_eq!((c.stages.len(), c.girth), (3, 24));
        assert_eq!(c.top().unwrap().cover.vertex_count(), 24);
        let proj = c.vertex_projection();
        assert_eq!(proj.iter().filter(|&&v| v == 0).count(), 8);
        let theta = girth_boost(&Graph::theta(), None, 4, 5).unwrap();
        assert_eq!(theta.stages.len(), 1);
        assert!(matches!(
            girth_boost(&Graph::cycle(3), None, 100, 2),
            Err(CoverError::Exhausted { achieved: 12, iterations: 2, target: 100 })
        ));
    }

    #[test]
    fn broken_projection_detected() {
        let mut cm = z2_cover(&Graph::cycle(4), None).unwrap();
        cm.dart_projection.swap(0, 2);
        assert!(cm.check().is_err());
    }
}
