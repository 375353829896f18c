use super::{DartId, Graph, VertexId};

/// Non-backtracking path given by its darts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub darts: Vec<DartId>,
    pub start: VertexId,
    pub end: VertexId,
}

impl Path {
    /// Checks incidence and non-backtracking before building the path.
    pub fn new(g: &Graph, darts: Vec<DartId>) -> Option<Path> {
        let first = *darts.first()?;
        for w in darts.windows(2) {
            if g.target(w[0]) != g.source(w[1]) || g.partner(w[0]) == w[1] {
                return None;
            }
        }
        let last = *darts.last()?;
        Some(Path { start: g.source(first), end: g.target(last), darts })
    }

    pub(crate) fn from_darts_unchecked(g: &Graph, darts: Vec<DartId>) -> Path {
        Path { start: g.source(darts[0]), end: g.target(*darts.last().unwrap()), darts }
    }

    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    pub fn reversed(&self, g: &Graph) -> Path {
        Path {
            darts: self.darts.iter().rev().map(|&d| g.partner(d)).collect(),
            start: self.end,
            end: self.start,
        }
    }

    pub fn vertices(&self, g: &Graph) -> Vec<VertexId> {
        let mut vs = Vec::with_capacity(self.darts.len() + 1);
        vs.push(self.start);
        vs.extend(self.darts.iter().map(|&d| g.target(d)));
        vs
    }

    /// No vertex visited twice.
    pub fn is_simple(&self, g: &Graph) -> bool {
        let mut vs = self.vertices(g);
        vs.sort_unstable();
        vs.windows(2).all(|w| w[0] != w[1])
    }
}

/// Lexicographic (by dart index) stream of non-backtracking paths of a fixed length.
pub struct PathIter<'g> {
    g: &'g Graph,
    length: usize,
    // stack[i] = (candidate darts for position i, cursor)
    stack: Vec<(Vec<DartId>, usize)>,
    current: Vec<DartId>,
    started: bool,
}

impl<'g> PathIter<'g> {
    fn candidates(&self, pos: usize) -> Vec<DartId> {
        if pos == 0 {
            return (0..self.g.dart_count()).collect();
        }
        let prev = self.current[pos - 1];
        let back = self.g.partner(prev);
        self.g.out_darts(self.g.target(prev)).iter().copied().filter(|&d| d != back).collect()
    }

    /// Descends from the current stack top, always taking first candidates.
    fn fill(&mut self) -> bool {
        while self.current.len() < self.length {
            let pos = self.current.len();
            let cands = self.candidates(pos);
            if cands.is_empty() {
                if !self.advance() {
                    return false;
                }
                continue;
            }
            self.current.push(cands[0]);
            self.stack.push((cands, 0));
        }
        true
    }

    /// Moves to the next sibling, popping exhausted levels.
    fn advance(&mut self) -> bool {
        while let Some((cands, cursor)) = self.stack.last_mut() {
            self.current.pop();
            if *cursor + 1 < cands.len() {
                *cursor += 1;
                let d = cands[*cursor];
                self.current.push(d);
                return true;
            }
            self.stack.pop();
        }
        false
    }
}

impl Iterator for PathIter<'_> {
    type Item = Path;

    fn next(&mut self) -> Option<Path> {
        if self.length == 0 {
            return None;
        }
        let ok = if !self.started {
            self.started = true;
            self.fill()
        } else {
            self.advance() && self.fill()
        };
        if ok {
            Some(Path::from_darts_unchecked(self.g, self.current.clone()))
        } else {
            self.stack.clear();
            self.current.clear();
            self.length = 0;
            None
        }
    }
}

/// Every non-backtracking path of exactly `length` darts, once per direction.
pub fn enumerate_paths(g: &Graph, length: usize) -> PathIter<'_> {
    PathIter { g, length, stack: Vec::new(), current: Vec::new(), started: false }
}

/// All non-backtracking paths of `length` darts that traverse undirected edge
/// `edge` (in either direction), deduplicated and sorted.
pub fn paths_through_edge(g: &Graph, edge: usize, length: usize) -> Vec<Path> {
    let mut out = Vec::new();
    if length == 0 {
        return out;
    }
    for dart in [2 * edge, 2 * edge + 1] {
        for before in 0..length {
            let after = length - 1 - before;
            // backward extensions: walk from the source of `dart` against direction
            let mut backs = Vec::new();
            extend(g, g.partner(dart), before, &mut Vec::new(), &mut backs);
            let mut fronts = Vec::new();
            extend(g, dart, after, &mut Vec::new(), &mut fronts);
            for b in &backs {
                for f in &fronts {
                    let mut darts: Vec<DartId> = b.iter().rev().map(|&d| g.partner(d)).collect();
                    darts.push(dart);
                    darts.extend_from_slice(f);
                    out.push(Path::from_darts_unchecked(g, darts));
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Non-backtracking continuations of `steps` darts after `from`.
fn extend(g: &Graph, from: DartId, steps: usize, acc: &mut Vec<DartId>, out: &mut Vec<Vec<DartId>>) {
    if steps == 0 {
        out.push(acc.clone());
        return;
    }
    let last = acc.last().copied().unwrap_or(from);
    let back = g.partner(last);
    for &d in g.out_darts(g.target(last)) {
        if d == back {
            continue;
        }
        acc.push(d);
        extend(g, from, steps - 1, acc, out);
        acc.pop();
    }
}
