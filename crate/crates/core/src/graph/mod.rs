//! Bounded-degree multigraphs stored as paired half-edges.
//!
//! Undirected edge `k` owns the directed edges `2k` (as declared, `u -> v`)
//! and `2k + 1` (reverse). The partner of a directed edge `d` is `d ^ 1`, so
//! the pairing is a fixed-point-free involution even for loops.

mod family;
mod generate;
pub mod io;
mod metrics;
mod paths;

pub use family::{validate_family, FamilyReport, FamilySpec, FamilyViolation};
pub use generate::{random_regular, GenerateError, DEFAULT_RETRY_BUDGET};
pub use metrics::{bfs_distances, metrics, Distance, Metrics};
pub use paths::{enumerate_paths, paths_through_edge, Path, PathIter};

use thiserror::Error;

pub type VertexId = usize;
/// Index of a directed edge (half-edge).
pub type DartId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HalfEdge {
    pub source: VertexId,
    pub target: VertexId,
    pub partner: DartId,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {vertex_count} vertices")]
    VertexOutOfRange { vertex: VertexId, vertex_count: usize },
    #[error("graph is disconnected: vertices {0} and {1} lie in different components")]
    Disconnected(VertexId, VertexId),
    #[error("vertex {vertex} has degree {degree}, above the bound {bound}")]
    DegreeTooLarge { vertex: VertexId, degree: usize, bound: usize },
    #[error("graph has no vertices")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    name: String,
    vertex_count: usize,
    half_edges: Vec<HalfEdge>,
    /// Outgoing darts per vertex, sorted ascending.
    out: Vec<Vec<DartId>>,
}

impl Graph {
    /// Builds a graph from undirected edge declarations `(u, v)`.
    ///
    /// Connectivity is not enforced here; see [`Graph::check_connected`].
    pub fn from_edges(
        name: impl Into<String>,
        vertex_count: usize,
        edges: &[(VertexId, VertexId)],
    ) -> Result<Self, GraphError> {
        let mut half_edges = Vec::with_capacity(2 * edges.len());
        let mut out = vec![Vec::new(); vertex_count];
        for (k, &(u, v)) in edges.iter().enumerate() {
            for &w in &[u, v] {
                if w >= vertex_count {
                    return Err(GraphError::VertexOutOfRange { vertex: w, vertex_count });
                }
            }
            half_edges.push(HalfEdge { source: u, target: v, partner: 2 * k + 1 });
            half_edges.push(HalfEdge { source: v, target: u, partner: 2 * k });
            out[u].push(2 * k);
            out[v].push(2 * k + 1);
        }
        Ok(Graph { name: name.into(), vertex_count, half_edges, out })
    }

    /// Like [`Graph::from_edges`] but also rejects empty or disconnected input.
    pub fn connected_from_edges(
        name: impl Into<String>,
        vertex_count: usize,
        edges: &[(VertexId, VertexId)],
    ) -> Result<Self, GraphError> {
        let g = Self::from_edges(name, vertex_count, edges)?;
        g.check_connected()?;
        Ok(g)
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 1);
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edges(format!("C{n}"), n, &edges).expect("cycle edges are in range")
    }

    pub fn path_graph(n: usize) -> Self {
        assert!(n >= 1);
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(format!("P{n}"), n, &edges).expect("path edges are in range")
    }

    /// Two vertices joined by three parallel edges.
    pub fn theta() -> Self {
        Self::from_edges("theta", 2, &[(0, 1), (0, 1), (0, 1)]).expect("in range")
    }

    pub fn petersen() -> Self {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Self::from_edges("petersen", 10, &edges).expect("in range")
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Self::from_edges(format!("K{n}"), n, &edges).expect("in range")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.half_edges.len() / 2
    }

    pub fn dart_count(&self) -> usize {
        self.half_edges.len()
    }

    pub fn half_edges(&self) -> &[HalfEdge] {
        &self.half_edges
    }

    pub fn dart(&self, d: DartId) -> HalfEdge {
        self.half_edges[d]
    }

    pub fn source(&self, d: DartId) -> VertexId {
        self.half_edges[d].source
    }

    pub fn target(&self, d: DartId) -> VertexId {
        self.half_edges[d].target
    }

    pub fn partner(&self, d: DartId) -> DartId {
        self.half_edges[d].partner
    }

    /// Undirected edge carrying dart `d`.
    pub fn edge_of(d: DartId) -> usize {
        d / 2
    }

    /// Endpoints of undirected edge `k` in declaration order.
    pub fn endpoints(&self, k: usize) -> (VertexId, VertexId) {
        let h = self.half_edges[2 * k];
        (h.source, h.target)
    }

    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        (0..self.edge_count()).map(move |k| self.endpoints(k))
    }

    pub fn out_darts(&self, v: VertexId) -> &[DartId] {
        &self.out[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.out[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.out.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn check_degree_bound(&self, bound: usize) -> Result<(), GraphError> {
        match (0..self.vertex_count).find(|&v| self.degree(v) > bound) {
            Some(v) => Err(GraphError::DegreeTooLarge { vertex: v, degree: self.degree(v), bound }),
            None => Ok(()),
        }
    }

    /// Component label per vertex, labels assigned in order of first vertex.
    pub fn components(&self) -> Vec<usize> {
        self.components_without(|_| false)
    }

    /// Components after deleting the open undirected edges for which `removed` is true.
    pub fn components_without(&self, removed: impl Fn(usize) -> bool) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.vertex_count];
        let mut next = 0;
        let mut stack = Vec::new();
        for s in 0..self.vertex_count {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &d in &self.out[u] {
                    if removed(d / 2) {
                        continue;
                    }
                    let w = self.half_edges[d].target;
                    if comp[w] == usize::MAX {
                        comp[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn check_connected(&self) -> Result<(), GraphError> {
        if self.vertex_count == 0 {
            return Err(GraphError::Empty);
        }
        let comp = self.components();
        match comp.iter().position(|&c| c != 0) {
            Some(v) => Err(GraphError::Disconnected(0, v)),
            None => Ok(()),
        }
    }

    pub fn is_connected(&self) -> bool {
        self.check_connected().is_ok()
    }

    /// True when the graph has no loops and no parallel edges.
    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.edges().all(|(u, v)| u != v && seen.insert((u.min(v), u.max(v))))
    }

    /// Dart from `u` to `v` with the smallest index, if any.
    pub fn dart_between(&self, u: VertexId, v: VertexId) -> Option<DartId> {
        self.out[u].iter().copied().find(|&d| self.half_edges[d].target == v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partner_is_fixed_point_free_involution() {
        for g in [Graph::petersen(), Graph::theta(), Graph::cycle(1), Graph::cycle(2)] {
            for d in 0..g.dart_count() {
                let p = g.partner(d);
                assert_ne!(p, d);
                assert_eq!(g.partner(p), d);
                assert_eq!(g.source(p), g.target(d));
                assert_eq!(g.target(p), g.source(d));
            }
        }
    }

    #[test]
    fn loops_count_twice_toward_degree() {
        let g = Graph::cycle(1);
        assert_eq!(g.degree(0), 2);
        assert_eq!(g.out_darts(0), &[0, 1]);
    }

    #[test]
    fn disconnected_input_is_rejected() {
        let err = Graph::connected_from_edges("two", 4, &[(0, 1), (2, 3)]).unwrap_err();
        assert_eq!(err, GraphError::Disconnected(0, 2));
        assert!(Graph::connected_from_edges("bad", 2, &[(0, 5)]).is_err());
    }

    #[test]
    fn petersen_is_cubic_and_simple() {
        let g = Graph::petersen();
        assert!((0..10).all(|v| g.degree(v) == 3));
        assert!(g.is_simple());
        assert!(g.is_connected());
    }
}
