use std::collections::VecDeque;

use super::{Graph, GraphError, VertexId};

/// Girth value: a positive cycle length or infinity (forests).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(n) => Some(n),
            Distance::Infinite => None,
        }
    }
}

impl std::fmt::Display for Distance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Distance::Finite(n) => write!(f, "{n}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Metrics {
    pub girth: Distance,
    pub diameter: usize,
    /// Row-major `n x n` table of path distances.
    pub distances: Vec<Vec<usize>>,
}

impl Metrics {
    pub fn distance(&self, u: VertexId, v: VertexId) -> usize {
        self.distances[u][v]
    }
}

/// Single-source BFS distances; `usize::MAX` marks unreachable vertices.
pub fn bfs_distances(g: &Graph, source: VertexId) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.vertex_count()];
    let mut queue = VecDeque::new();
    dist[source] = 0;
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        for &d in g.out_darts(u) {
            let w = g.target(d);
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Shortest cycle through BFS trees rooted at every vertex.
///
/// Loops give girth 1 and parallel edges girth 2. For each root the BFS
/// remembers the dart used to reach each vertex; any other dart closing onto
/// an already discovered vertex yields a closed walk of length
/// `dist[u] + dist[w] + 1` that contains a cycle no longer than that, and the
/// minimum over all roots is attained exactly.
fn girth(g: &Graph) -> Distance {
    let mut best = usize::MAX;
    for (d, h) in g.half_edges().iter().enumerate() {
        if h.source == h.target && d % 2 == 0 {
            return Distance::Finite(1);
        }
    }
    let n = g.vertex_count();
    let mut dist = vec![usize::MAX; n];
    let mut via = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        dist.iter_mut().for_each(|x| *x = usize::MAX);
        via.iter_mut().for_each(|x| *x = usize::MAX);
        queue.clear();
        dist[root] = 0;
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            if 2 * dist[u] + 1 >= best {
                break;
            }
            for &d in g.out_darts(u) {
                if via[u] != usize::MAX && d == g.partner(via[u]) {
                    continue;
                }
                let w = g.target(d);
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    via[w] = d;
                    queue.push_back(w);
                } else {
                    best = best.min(dist[u] + dist[w] + 1);
                }
            }
        }
    }
    if best == usize::MAX {
        Distance::Infinite
    } else {
        Distance::Finite(best)
    }
}

pub fn metrics(g: &Graph) -> Result<Metrics, GraphError> {
    g.check_connected()?;
    let distances: Vec<Vec<usize>> = (0..g.vertex_count()).map(|v| bfs_distances(g, v)).collect();
    let diameter = distances.iter().flat_map(|row| row.iter().copied()).max().unwrap_or(0);
    Ok(Metrics { girth: girth(g), diameter, distances })
}
