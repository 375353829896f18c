use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;
use thiserror::Error;

use super::cover::CoveringMap;
use super::functions::Monotone;
use crate::graph::{bfs_distances, Graph, VertexId};
use crate::ratio::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
pub enum WallError {
    #[error("edge {0} lies in no wall")]
    Uncovered(usize),
    #[error("edge {edge} lies in walls {first} and {second}")]
    Duplicate { edge: usize, first: usize, second: usize },
    #[error("edge {edge} out of range for {edges} edges")]
    OutOfRange { edge: usize, edges: usize },
    #[error("wall {wall} leaves {components} components")]
    Components { wall: usize, components: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Partition of the undirected edges into walls.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WallSystem {
    pub graph: String,
    pub walls: Vec<Vec<usize>>,
}

/// Validated walls together with the two sides of each.
#[derive(Debug, Clone)]
pub struct WallSides {
    /// `side[w][v]` is 0 or 1.
    side: Vec<Vec<u8>>,
    wall_of: Vec<usize>,
}

impl WallSystem {
    /// Checks the partition and the two-component axiom.
    pub fn validate(&self, g: &Graph) -> Result<WallSides, WallError> {
        let mut wall_of = vec![usize::MAX; g.edge_count()];
        for (w, edges) in self.walls.iter().enumerate() {
            for &e in edges {
                if e >= g.edge_count() {
                    return Err(WallError::OutOfRange { edge: e, edges: g.edge_count() });
                }
                if wall_of[e] != usize::MAX {
                    return Err(WallError::Duplicate { edge: e, first: wall_of[e], second: w });
                }
                wall_of[e] = w;
            }
        }
        if let Some(e) = wall_of.iter().position(|&w| w == usize::MAX) {
            return Err(WallError::Uncovered(e));
        }
        let mut side = Vec::with_capacity(self.walls.len());
        for w in 0..self.walls.len() {
            let comp = g.components_without(|e| wall_of[e] == w);
            let count = comp.iter().max().map_or(0, |m| m + 1);
            if count != 2 {
                return Err(WallError::Components { wall: w, components: count });
            }
            side.push(comp.into_iter().map(|c| c as u8).collect());
        }
        Ok(WallSides { side, wall_of })
    }

    pub fn write(&self) -> String {
        let mut s = format!("WALLS {} K {}\n", self.graph, self.walls.len());
        for (i, w) in self.walls.iter().enumerate() {
            let edges: Vec<String> = w.iter().map(|e| e.to_string()).collect();
            s.push_str(&format!("WALL {}: {}\n", i, edges.join(" ")));
        }
        s
    }

    pub fn parse(text: &str) -> Result<WallSystem, WallError> {
        let err = |line: usize, message: &str| WallError::Parse { line, message: message.to_string() };
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
        let (n, header) = lines.next().ok_or_else(|| err(1, "missing header"))?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        let [tag, name, k, count] = parts.as_slice() else {
            return Err(err(n + 1, "expected `WALLS <name> K <count>`"));
        };
        if *tag != "WALLS" || *k != "K" {
            return Err(err(n + 1, "expected `WALLS <name> K <count>`"));
        }
        let count: usize = count.parse().map_err(|_| err(n + 1, "bad wall count"))?;
        let mut walls = Vec::new();
        for (n, line) in lines {
            let rest = line.trim().strip_prefix("WALL ").ok_or_else(|| err(n + 1, "expected `WALL <id>: ...`"))?;
            let (id, edges) = rest.split_once(':').ok_or_else(|| err(n + 1, "missing `:`"))?;
            if id.trim().parse::<usize>().ok() != Some(walls.len()) {
                return Err(err(n + 1, "wall ids must be consecutive from 0"));
            }
            let edges = edges
                .split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|_| err(n + 1, "bad edge index")))
                .collect::<Result<Vec<_>, _>>()?;
            walls.push(edges);
        }
        if walls.len() != count {
            return Err(err(0, "wall count does not match header"));
        }
        Ok(WallSystem { graph: name.to_string(), walls })
    }
}

impl WallSides {
    pub fn wall_count(&self) -> usize {
        self.side.len()
    }

    pub fn wall_of(&self, edge: usize) -> usize {
        self.wall_of[edge]
    }

    pub fn separates(&self, wall: usize, p: VertexId, q: VertexId) -> bool {
        self.side[wall][p] != self.side[wall][q]
    }

    /// Number of walls separating `p` from `q`.
    pub fn metric(&self, p: VertexId, q: VertexId) -> usize {
        self.side.iter().filter(|s| s[p] != s[q]).count()
    }
}

/// Walls are the edge fibers of the covering projection.
pub fn fiber_walls(cm: &CoveringMap) -> Result<(WallSystem, WallSides), WallError> {
    let ne = cm.base.edge_count();
    let mut walls = vec![Vec::new(); ne];
    for e in 0..cm.cover.edge_count() {
        walls[cm.dart_projection[2 * e] / 2].push(e);
    }
    let ws = WallSystem { graph: cm.cover.name().to_string(), walls };
    let sides = ws.validate(&cm.cover)?;
    Ok((ws, sides))
}

pub fn wall_metric(sides: &WallSides, p: VertexId, q: VertexId) -> usize {
    sides.metric(p, q)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparationProfile {
    /// Least `(d(e,e')+1)/girth` over distinct same-wall edges; `None` when
    /// every wall is a single edge.
    #[serde(with = "option_pq")]
    pub beta_margin: Option<Rational>,
    pub beta_ok: bool,
    /// Geodesic length `t` to the least number of separating edges on a
    /// geodesic of that length.
    pub phi_table: BTreeMap<usize, usize>,
    pub complete: bool,
    /// Whether the supplied Φ lower-bounds the table; `None` when no Φ was
    /// given or some argument lies outside its table.
    pub phi_ok: Option<bool>,
}

pub(crate) mod option_pq {
    use serde::Serializer;

    use crate::ratio::{self, Rational};

    pub fn serialize<S: Serializer>(x: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(r) => s.serialize_str(&ratio::format(r)),
            None => s.serialize_none(),
        }
    }
}

/// Which geodesics a profile examines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Scope {
    /// Start points are `0..sources`; with deck invariant walls a fundamental
    /// domain suffices.
    pub sources: usize,
    /// Bound on the total size of the geodesic intervals examined.
    pub work_cap: usize,
}

impl Scope {
    pub fn all(g: &Graph) -> Scope {
        Scope { sources: g.vertex_count(), work_cap: usize::MAX }
    }
}

/// Separation data of a walled graph.
pub fn separation_profile(
    g: &Graph,
    walls: &WallSystem,
    sides: &WallSides,
    beta: &Rational,
    girth: usize,
    phi: Option<&Monotone>,
    scope: Scope,
) -> SeparationProfile {
    let mut beta_margin: Option<Rational> = None;
    for wall in &walls.walls {
        for (i, &e) in wall.iter().enumerate() {
            let (a, b) = g.endpoints(e);
            let (da, db) = (bfs_distances(g, a), bfs_distances(g, b));
            for &f in &wall[i + 1..] {
                let (c, d) = g.endpoints(f);
                let dist = da[c].min(da[d]).min(db[c]).min(db[d]);
                let m = Rational::new(dist as i128 + 1, girth as i128);
                if beta_margin.as_ref().is_none_or(|x| m < *x) {
                    beta_margin = Some(m);
                }
            }
        }
    }
    let beta_ok = beta_margin.as_ref().is_none_or(|m| m >= beta);
    let mut table: BTreeMap<usize, usize> = BTreeMap::new();
    let mut work = 0usize;
    let mut complete = true;
    'outer: for p in 0..scope.sources.min(g.vertex_count()) {
        let dist = bfs_distances(g, p);
        for q in 0..g.vertex_count() {
            if dist[q] == usize::MAX {
                continue;
            }
            let (count, size) = least_separating(g, sides, &dist, p, q);
            work += size;
            let slot = table.entry(dist[q]).or_insert(count);
            *slot = (*slot).min(count);
            if work > scope.work_cap {
                complete = false;
                break 'outer;
            }
        }
    }
    let phi_ok = phi.and_then(|f| {
        let mut ok = true;
        for (&t, &c) in &table {
            match f.eval(&ratio::int(t as i128)) {
                Some(v) => ok &= v <= ratio::int(c as i128),
                None => return None,
            }
        }
        Some(ok && complete)
    });
    SeparationProfile { beta_margin, beta_ok, phi_table: table, complete, phi_ok }
}

/// Minimum over geodesics from `p` to `q` of the number of edges whose wall
/// separates `p` from `q`, by dynamic programming over the geodesic interval.
fn least_separating(g: &Graph, sides: &WallSides, dist: &[usize], p: VertexId, q: VertexId) -> (usize, usize) {
    // interval vertices, found backwards from q
    let mut inside = vec![false; g.vertex_count()];
    let mut order = vec![q];
    inside[q] = true;
    let mut queue = VecDeque::from([q]);
    while let Some(v) = queue.pop_front() {
        for &d in g.out_darts(v) {
            let u = g.target(d);
            if dist[u] + 1 == dist[v] && !inside[u] {
                inside[u] = true;
                order.push(u);
                queue.push_back(u);
            }
        }
    }
    order.sort_by_key(|&v| dist[v]);
    let mut best: BTreeMap<VertexId, usize> = BTreeMap::new();
    best.insert(p, 0);
    for &v in &order[1..] {
        let mut m = usize::MAX;
        for &d in g.out_darts(v) {
            let u = g.target(d);
            if inside[u] && dist[u] + 1 == dist[v] {
                let w = usize::from(sides.separates(sides.wall_of(Graph::edge_of(d)), p, q));
                m = m.min(best[&u] + w);
            }
        }
        best.insert(v, m);
    }
    (best[&q], order.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covers::cover::z2_cover;
    use crate::graph::metrics;
    use crate::ratio::rat;

    #[test]
    fn antipodal_walls_on_even_cycles() {
        for n in 3..=6 {
            let cm = z2_cover(&Graph::cycle(n), None).unwrap();
            let (ws, sides) = fiber_walls(&cm).unwrap();
            assert_eq!(ws.walls.len(), n);
            assert!(ws.walls.iter().all(|w| w.len() == 2));
            let m = metrics(&cm.cover).unwrap();
            for p in 0..2 * n {
                for q in 0..2 * n {
                    assert_eq!(wall_metric(&sides, p, q), m.distance(p, q));
                }
            }
            let prof = separation_profile(&cm.cover, &ws, &sides, &rat(1, 2), 2 * n, None, Scope::all(&cm.cover));
            assert_eq!(prof.beta_margin, Some(rat(1, 2)));
            assert!(prof.beta_ok);
            assert!(prof.phi_table.iter().all(|(t, c)| t == c));
        }
    }

    #[test]
    fn cube_walls() {
        let cm = z2_cover(&Graph::theta(), None).unwrap();
        let (ws, sides) = fiber_walls(&cm).unwrap();
        assert_eq!(ws.walls.len(), 3);
        assert!(ws.walls.iter().all(|w| w.len() == 4));
        let m = metrics(&cm.cover).unwrap();
        for p in 0..8 {
            for q in 0..8 {
                assert_eq!(wall_metric(&sides, p, q), m.distance(p, q));
            }
        }
        let prof = separation_profile(&cm.cover, &ws, &sides, &rat(1, 2), 4, None, Scope::all(&cm.cover));
        assert_eq!(prof.phi_table[&1], 1);
    }

    #[test]
    fn single_edge_tree() {
        let g = Graph::path_graph(2);
        let ws = WallSystem { graph: g.name().into(), walls: vec![vec![0]] };
        let sides = ws.validate(&g).unwrap();
        assert!(sides.separates(0, 0, 1));
    }

    #[test]
    fn bad_walls_rejected() {
        let g = Graph::cycle(4);
        let one = WallSystem { graph: "C4".into(), walls: vec![vec![0], vec![1, 2, 3]] };
        assert_eq!(one.validate(&g).unwrap_err(), WallError::Components { wall: 0, components: 1 });
        let missing = WallSystem { graph: "C4".into(), walls: vec![vec![0, 2]] };
        assert_eq!(missing.validate(&g).unwrap_err(), WallError::Uncovered(1));
        let dup = WallSystem { graph: "C4".into(), walls: vec![vec![0, 2], vec![1, 3, 0]] };
        assert!(matches!(dup.validate(&g), Err(WallError::Duplicate { edge: 0, .. })));
    }

    #[test]
    fn wall_file_round_trip() {
        let cm = z2_cover(&Graph::theta(), None).unwrap();
        let (ws, _) = fiber_walls(&cm).unwrap();
        let text = ws.write();
        assert!(text.starts_with("WALLS theta.z2 K 3\nWALL 0: "));
        assert_eq!(WallSystem::parse(&text).unwrap(), ws);
        assert!(WallSystem::parse("WALLS x K 2\nWALL 0: 1\n").is_err());
        assert!(WallSystem::parse("WALL 0: 1\n").is_err());
    }

    #[test]
    fn supplied_phi_compared() {
        let cm = z2_cover(&Graph::cycle(5), None).unwrap();
        let (ws, sides) = fiber_walls(&cm).unwrap();
        let ident = Monotone::affine(ratio::int(1), ratio::int(0));
        let steep = Monotone::affine(ratio::int(2), ratio::int(0));
        let p = |f: &Monotone| separation_profile(&cm.cover, &ws, &sides, &rat(1, 2), 10, Some(f), Scope::all(&cm.cover)).phi_ok;
        assert_eq!(p(&ident), Some(true));
        assert_eq!(p(&steep), Some(false));
        let short = Monotone::table(vec![(ratio::int(0), ratio::int(0)), (ratio::int(2), ratio::int(2))]).unwrap();
        assert_eq!(p(&short), None);
        let capped = separation_profile(&cm.cover, &ws, &sides, &rat(1, 2), 10, None, Scope { sources: 10, work_cap: 3 });
        assert!(!capped.complete);
    }
}
