//! Long cycles: maximal paths, the chord-closure cycle finder, greedy
//! stripping, and the rotation-extension witness.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{peel_to_min_degree, Graph, Vertex, WorkGraph};
use crate::piece::Piece;

/// Read-only adjacency shared by [`Graph`] and the scratch [`WorkGraph`].
pub(crate) trait Adjacency {
    fn order(&self) -> usize;
    fn adjacent(&self, v: Vertex) -> &[Vertex];
}

impl Adjacency for Graph {
    fn order(&self) -> usize {
        self.n()
    }
    fn adjacent(&self, v: Vertex) -> &[Vertex] {
        self.neighbors(v)
    }
}

impl Adjacency for WorkGraph {
    fn order(&self) -> usize {
        self.n()
    }
    fn adjacent(&self, v: Vertex) -> &[Vertex] {
        self.neighbors(v)
    }
}

/// Scratch state for greedy path growth, reusable across calls.
pub(crate) struct PathGrower {
    on_path: Vec<bool>,
    cursor: Vec<usize>,
    touched: Vec<Vertex>,
}

impl PathGrower {
    pub fn new(n: usize) -> Self {
        PathGrower {
            on_path: vec![false; n],
            cursor: vec![0; n],
            touched: Vec::new(),
        }
    }

    fn reset(&mut self) {
        for &v in &self.touched {
            self.on_path[v] = false;
            self.cursor[v] = 0;
        }
        self.touched.clear();
    }

    fn mark(&mut self, v: Vertex) {
        self.on_path[v] = true;
        self.touched.push(v);
    }

    /// Next neighbour of `v` that is allowed and not yet on the path.
    fn next_free<A: Adjacency>(&mut self, g: &A, v: Vertex, allowed: Option<&[bool]>) -> Option<Vertex> {
        let nbrs = g.adjacent(v);
        while self.cursor[v] < nbrs.len() {
            let w = nbrs[self.cursor[v]];
            if !self.on_path[w] && allowed.is_none_or(|a| a[w]) {
                return Some(w);
            }
            self.cursor[v] += 1;
        }
        None
    }

    fn extend_end<A: Adjacency>(&mut self, g: &A, path: &mut Vec<Vertex>, allowed: Option<&[bool]>) {
        let mut end = *path.last().expect("non-empty path");
        while let Some(w) = self.next_free(g, end, allowed) {
            self.mark(w);
            path.push(w);
            end = w;
        }
    }

    /// Grows a path from `start` greedily in both directions until neither
    /// end has a free neighbour.
    pub fn maximal_path<A: Adjacency>(&mut self, g: &A, start: Vertex, allowed: Option<&[bool]>) -> Vec<Vertex> {
        self.reset();
        self.mark(start);
        let mut fwd = vec![start];
        self.extend_end(g, &mut fwd, allowed);
        fwd.reverse();
        self.extend_end(g, &mut fwd, allowed);
        self.reset();
        fwd
    }
}

/// A path under Pósa rotations with its first vertex held fixed.
pub(crate) struct RotatingPath {
    pub path: Vec<Vertex>,
    pos: Vec<usize>,
}

impl RotatingPath {
    const OFF: usize = usize::MAX;

    pub fn new(n: usize) -> Self {
        RotatingPath {
            path: Vec::new(),
            pos: vec![Self::OFF; n],
        }
    }

    pub fn clear(&mut self) {
        for &v in &self.path {
            self.pos[v] = Self::OFF;
        }
        self.path.clear();
    }

    pub fn push(&mut self, v: Vertex) {
        self.pos[v] = self.path.len();
        self.path.push(v);
    }

    pub fn end(&self) -> Vertex {
        self.path[self.path.len() - 1]
    }

    pub fn extend<A: Adjacency>(&mut self, g: &A, allowed: Option<&[bool]>) {
        loop {
            let end = self.end();
            let next = g
                .adjacent(end)
                .iter()
                .find(|&&w| self.pos[w] == Self::OFF && allowed.is_none_or(|a| a[w]));
            match next {
                Some(&w) => self.push(w),
                None => return,
            }
        }
    }

    /// Reverses the segment after index `i`, making `path[i + 1]` the end.
    pub fn rotate(&mut self, i: usize) {
        self.path[i + 1..].reverse();
        for j in i + 1..self.path.len() {
            self.pos[self.path[j]] = j;
        }
    }

    /// Positions of the end's path neighbours that allow a rotation.
    pub fn pivots<A: Adjacency>(&self, g: &A) -> Vec<usize> {
        let len = self.path.len();
        g.adjacent(self.end())
            .iter()
            .map(|&w| self.pos[w])
            .filter(|&i| i != Self::OFF && i + 2 < len)
            .collect()
    }

    /// Longest cycle closed by the end's farthest chord over up to `budget`
    /// rotations, re-extending after each. The path must be maximal with an
    /// end of degree at least two. New ends are marked in `seen` and logged
    /// in `visited`, and a rotation never produces an end seen before.
    pub fn longest_closure<A: Adjacency>(
        &mut self,
        g: &A,
        allowed: Option<&[bool]>,
        seen: &mut [bool],
        visited: &mut Vec<Vertex>,
        budget: usize,
    ) -> Vec<Vertex> {
        let mut best: Option<(usize, Vec<Vertex>)> = None;
        for round in 0..=budget {
            let pivots = self.pivots(g);
            let i = *pivots.iter().min().expect("maximal path end has a chord");
            let len = self.path.len() - i;
            if best.as_ref().is_none_or(|(b, _)| *b < len) {
                best = Some((len, self.path[i..].to_vec()));
            }
            if i == 0 || round == budget {
                break;
            }
            let Some(&j) = pivots.iter().find(|&&j| !seen[self.path[j + 1]]) else {
                break;
            };
            self.rotate(j);
            self.extend(g, allowed);
            seen[self.end()] = true;
            visited.push(self.end());
        }
        best.expect("at least one closure").1
    }
}

/// A simple path through `start` that cannot be extended at either end.
pub fn maximal_path(g: &Graph, start: Vertex) -> Result<Vec<Vertex>> {
    if start >= g.n() {
        return Err(Error::UnknownVertex {
            vertex: start,
            n: g.n(),
        });
    }
    if g.degree(start) == 0 {
        return Err(Error::IsolatedVertex(start));
    }
    Ok(PathGrower::new(g.n()).maximal_path(g, start, None))
}

/// Longest cycle closed by an endpoint chord of a maximal path: the endpoint's
/// farthest path neighbour. Every neighbour of a maximal path's end lies on
/// the path, so the cycle has at least `deg(end) + 1` vertices.
pub(crate) fn chord_closure<A: Adjacency>(g: &A, path: &[Vertex], allowed: Option<&[bool]>) -> Option<Vec<Vertex>> {
    let len = path.len();
    if len < 3 {
        return None;
    }
    let n = g.order();
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in path.iter().enumerate() {
        pos[v] = i;
    }
    let ok = |w: Vertex| allowed.is_none_or(|a| a[w]);
    // far end: smallest index among neighbours of path[len-1]
    let tail = path[len - 1];
    let lo = g
        .adjacent(tail)
        .iter()
        .filter(|&&w| ok(w) && pos[w] != usize::MAX)
        .map(|&w| pos[w])
        .min()
        .unwrap_or(len - 1);
    // near end: largest index among neighbours of path[0]
    let head = path[0];
    let hi = g
        .adjacent(head)
        .iter()
        .filter(|&&w| ok(w) && pos[w] != usize::MAX)
        .map(|&w| pos[w])
        .max()
        .unwrap_or(0);
    let tail_len = len - lo;
    let head_len = hi + 1;
    if tail_len < 3 && head_len < 3 {
        return None;
    }
    Some(if tail_len >= head_len {
        path[lo..].to_vec()
    } else {
        path[..=hi].to_vec()
    })
}

/// Finds a cycle of length at least `δ* + 1`, where `δ*` is the minimum
/// degree of the `m/n`-core (or of the 2-core when that core is acyclic).
/// Returns `None` exactly when `g` is a forest.
pub fn find_long_cycle(g: &Graph) -> Option<Piece> {
    if !g.has_cycle() {
        return None;
    }
    let k = g.m().div_ceil(g.n().max(1)).max(2);
    let mut core = peel_to_min_degree(g, k);
    if core.is_empty() {
        core = peel_to_min_degree(g, 2);
    }
    let h = g.restricted(&core).expect("core vertices are in range");
    let path = PathGrower::new(h.n()).maximal_path(&h, core[0], None);
    let cycle = chord_closure(&h, &path, None).expect("core has minimum degree two");
    Some(Piece::cycle(cycle))
}

/// Rotations spent per stripped cycle looking for a longer closure.
const STRIP_ROTATIONS: usize = 32;

#[derive(Clone, Debug)]
pub struct StripResult {
    pub cycles: Vec<Piece>,
    pub residual: Graph,
}

/// Repeatedly removes cycles of length at least `min_len` while the finder
/// produces them.
///
/// The first phase works inside the `(min_len - 1)`-core, where every maximal
/// path closes a cycle of the required length, and re-peels incrementally as
/// edges go. Each path is rotated a few times to find a longer closure, and
/// a search over the whole 2-core is tried first, kept when long enough. The second phase calls [`find_long_cycle`] on what remains until
/// it comes back short.
pub fn strip_long_cycles(g: &Graph, min_len: usize) -> StripResult {
    let min_len = min_len.max(3);
    let n = g.n();
    let mut work = WorkGraph::from_graph(g);
    let mut cycles = Vec::new();
    let mut core = Core::new(&work, min_len - 1);
    let mut wide = Core::new(&work, 2);

    let mut grower = PathGrower::new(n);
    let mut rp = RotatingPath::new(n);
    let mut seen = vec![false; n];
    let mut visited = Vec::new();
    let mut attempt = |work: &WorkGraph, start: Vertex, alive: &[bool]| {
        let path = grower.maximal_path(work, start, Some(alive));
        let closed = chord_closure(work, &path, Some(alive))?;
        rp.clear();
        for &v in &path {
            rp.push(v);
        }
        let rotated = rp.longest_closure(work, Some(alive), &mut seen, &mut visited, STRIP_ROTATIONS);
        for v in visited.drain(..) {
            seen[v] = false;
        }
        Some(if rotated.len() > closed.len() { rotated } else { closed })
    };
    let mut scan = 0;
    while scan < n {
        let mut found = None;
        if wide.alive[scan] && core.k > 2 {
            found = attempt(&work, scan, &wide.alive).filter(|c| c.len() >= min_len);
        }
        if found.is_none() && core.alive[scan] {
            found = attempt(&work, scan, &core.alive);
            debug_assert!(found.as_ref().is_none_or(|c| c.len() >= min_len));
        }
        let Some(cycle) = found else {
            scan += 1;
            continue;
        };
        let piece = Piece::cycle(cycle);
        for (u, v) in piece.edges() {
            work.remove_edge(u, v);
            core.remove_edge(u, v);
            wide.remove_edge(u, v);
        }
        core.peel(&work);
        wide.peel(&work);
        cycles.push(piece);
    }

    let mut residual = work.to_graph();
    while let Some(c) = find_long_cycle(&residual) {
        if c.len() < min_len {
            break;
        }
        residual = residual.remove_edges(&c.edges()).expect("cycle edges present");
        cycles.push(c);
    }
    StripResult { cycles, residual }
}

/// The `k`-core of a shrinking graph, maintained incrementally.
struct Core {
    k: usize,
    /// Alive neighbours of each alive vertex.
    deg: Vec<usize>,
    alive: Vec<bool>,
    doomed: Vec<Vertex>,
}

impl Core {
    fn new(work: &WorkGraph, k: usize) -> Self {
        let n = work.n();
        let deg: Vec<usize> = (0..n).map(|v| work.degree(v)).collect();
        let doomed = (0..n).filter(|&v| deg[v] < k).collect();
        let mut core = Core {
            k,
            deg,
            alive: vec![true; n],
            doomed,
        };
        core.peel(work);
        core
    }

    /// Call before peeling, after `(u, v)` left the graph.
    fn remove_edge(&mut self, u: Vertex, v: Vertex) {
        if self.alive[u] && self.alive[v] {
            for x in [u, v] {
                self.deg[x] -= 1;
                if self.deg[x] < self.k {
                    self.doomed.push(x);
                }
            }
        }
    }

    fn peel(&mut self, work: &WorkGraph) {
        while let Some(v) = self.doomed.pop() {
            if !self.alive[v] {
                continue;
            }
            self.alive[v] = false;
            for &w in work.neighbors(v) {
                if self.alive[w] {
                    self.deg[w] -= 1;
                    if self.deg[w] < self.k {
                        self.doomed.push(w);
                    }
                }
            }
        }
    }
}

/// Outcome of the rotation-extension search.
#[derive(Clone, Debug, PartialEq)]
pub enum PosaWitness {
    /// A cycle longer than `3t`.
    LongCycle(Piece),
    /// `|S| <= t` and `|N(S)| <= 2|S|`.
    SmallSet(Vec<Vertex>),
    /// The rotation closure stabilized with `|N(S)| <= 2|S|` but `|S| > t`.
    /// Carries the longest cycle met during the search, if any.
    OversizeSet {
        set: Vec<Vertex>,
        longest_cycle: Option<Piece>,
    },
}

enum Closure {
    Long(Vec<Vertex>),
    Endpoints {
        set: Vec<Vertex>,
        longest: Option<Vec<Vertex>>,
    },
}

/// Rotation closure of the far endpoint with the first vertex held fixed.
/// Extensions restart the search with the longer path.
fn rotation_closure(g: &Graph, start: Vertex, limit: usize, grower: &mut PathGrower) -> Closure {
    let n = g.n();
    let mut base = grower.maximal_path(g, start, None);
    let mut longest: Option<Vec<Vertex>> = None;
    let mut on_path = vec![false; n];
    let mut pos = vec![0usize; n];
    'restart: loop {
        for &v in &base {
            on_path[v] = true;
        }
        let mut seen = vec![false; n];
        let mut endpoints = Vec::new();
        let mut queue: VecDeque<Vec<Vertex>> = VecDeque::new();
        let first_end = *base.last().expect("non-empty");
        seen[first_end] = true;
        endpoints.push(first_end);
        queue.push_back(base.clone());
        while let Some(path) = queue.pop_front() {
            let len = path.len();
            let end = path[len - 1];
            if let Some(&w) = g.neighbors(end).iter().find(|&&w| !on_path[w]) {
                let mut longer = path;
                longer.push(w);
                on_path[w] = true;
                extend_greedy(g, &mut longer, &mut on_path);
                for &v in &base {
                    on_path[v] = false;
                }
                for &v in &longer {
                    on_path[v] = false;
                }
                base = longer;
                continue 'restart;
            }
            for (i, &v) in path.iter().enumerate() {
                pos[v] = i;
            }
            for &w in g.neighbors(end) {
                let i = pos[w];
                if i + 2 > len - 1 {
                    continue;
                }
                let cyc_len = len - i;
                if cyc_len > limit {
                    return Closure::Long(path[i..].to_vec());
                }
                if longest.as_ref().is_none_or(|c| c.len() < cyc_len) {
                    longest = Some(path[i..].to_vec());
                }
                let new_end = path[i + 1];
                if !seen[new_end] {
                    seen[new_end] = true;
                    endpoints.push(new_end);
                    let mut rotated = path[..=i].to_vec();
                    rotated.extend(path[i + 1..].iter().rev());
                    queue.push_back(rotated);
                }
            }
        }
        endpoints.sort_unstable();
        return Closure::Endpoints {
            set: endpoints,
            longest,
        };
    }
}

fn extend_greedy(g: &Graph, path: &mut Vec<Vertex>, on_path: &mut [bool]) {
    loop {
        let end = *path.last().expect("non-empty");
        match g.neighbors(end).iter().find(|&&w| !on_path[w]) {
            Some(&w) => {
                on_path[w] = true;
                path.push(w);
            }
            None => return,
        }
    }
}

/// Either a cycle longer than `3t` or a set `S` with `|N(S)| <= 2|S|`.
///
/// A degree-one vertex is returned directly as a singleton witness. Otherwise
/// each component is searched in order of its smallest vertex with
/// rotation-extension from a maximal path.
pub fn rotation_witness(g: &Graph, t: usize) -> Result<PosaWitness> {
    if g.m() == 0 {
        return Err(Error::EmptyGraph);
    }
    if t == 0 {
        return Err(Error::Precondition("t must be positive".into()));
    }
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) == 1) {
        return Ok(PosaWitness::SmallSet(vec![v]));
    }
    let limit = 3 * t;
    let mut grower = PathGrower::new(g.n());
    let mut best_oversize: Option<(Vec<Vertex>, Option<Vec<Vertex>>)> = None;
    for comp in g.connected_components() {
        if comp.len() < 2 {
            continue;
        }
        match rotation_closure(g, comp[0], limit, &mut grower) {
            Closure::Long(c) => return Ok(PosaWitness::LongCycle(Piece::cycle(c))),
            Closure::Endpoints { set, longest } => {
                if set.len() <= t {
                    return Ok(PosaWitness::SmallSet(set));
                }
                let better = match &best_oversize {
                    None => true,
                    Some((s, _)) => set.len() < s.len(),
                };
                if better {
                    let keep_cycle = match &best_oversize {
                        Some((_, Some(c))) if longest.as_ref().is_none_or(|l| l.len() < c.len()) => Some(c.clone()),
                        _ => longest,
                    };
                    best_oversize = Some((set, keep_cycle));
                } else if let (Some((_, slot)), Some(l)) = (&mut best_oversize, longest) {
                    if slot.as_ref().is_none_or(|c| c.len() < l.len()) {
                        *slot = Some(l);
                    }
                }
            }
        }
    }
    let (set, longest) = best_oversize.expect("graph has an edge");
    Ok(PosaWitness::OversizeSet {
        set,
        longest_cycle: longest.map(Piece::cycle),
    })
}

/// Checks a witness against its definition in `g`.
pub fn verify_witness(g: &Graph, t: usize, w: &PosaWitness) -> bool {
    let set_ok = |s: &[Vertex]| {
        let mut sorted = s.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        !s.is_empty()
            && sorted.len() == s.len()
            && s.iter().all(|&v| v < g.n())
            && g.external_neighborhood(s).len() <= 2 * s.len()
    };
    match w {
        PosaWitness::LongCycle(c) => {
            c.is_cycle() && c.len() > 3 * t && crate::verify::verify_disjoint(g, std::slice::from_ref(c)).valid
        }
        PosaWitness::SmallSet(s) => s.len() <= t && set_ok(s),
        PosaWitness::OversizeSet { set, longest_cycle } => {
            set_ok(set)
                && longest_cycle
                    .as_ref()
                    .is_none_or(|c| crate::verify::verify_disjoint(g, std::slice::from_ref(c)).valid)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle_graph(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn path_graph(n: usize) -> Graph {
        Graph::new(n, (0..n - 1).map(|i| (i, i + 1))).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        Graph::new(n, e).unwrap()
    }

    fn is_simple_path(g: &Graph, p: &[Vertex]) -> bool {
        let mut s = p.to_vec();
        s.sort_unstable();
        s.dedup();
        s.len() == p.len() && p.windows(2).all(|w| g.has_edge(w[0], w[1]))
    }

    fn is_maximal(g: &Graph, p: &[Vertex]) -> bool {
        [p[0], p[p.len() - 1]]
            .iter()
            .all(|&e| g.neighbors(e).iter().all(|w| p.contains(w)))
    }

    #[test]
    fn maximal_path_examples() {
        let p5 = path_graph(5);
        let p = maximal_path(&p5, 2).unwrap();
        assert_eq!(p.len(), 5);
        assert!(is_simple_path(&p5, &p));

        let c4 = cycle_graph(4);
        for s in 0..4 {
            let p = maximal_path(&c4, s).unwrap();
            assert_eq!(p.len(), 4);
        }

        let k4 = complete(4);
        let p = maximal_path(&k4, 1).unwrap();
        assert_eq!(p.len(), 4);
        assert!(is_maximal(&k4, &p));
    }

    #[test]
    fn maximal_path_rejects_isolated() {
        let g = Graph::new(3, [(0, 1)]).unwrap();
        assert_eq!(maximal_path(&g, 2), Err(Error::IsolatedVertex(2)));
    }

    #[test]
    fn find_long_cycle_examples() {
        assert_eq!(find_long_cycle(&cycle_graph(5)).unwrap().len(), 5);
        assert!(find_long_cycle(&path_graph(6)).is_none());
        let star = Graph::new(5, (1..5).map(|i| (0, i))).unwrap();
        assert!(find_long_cycle(&star).is_none());
        assert_eq!(find_long_cycle(&complete(4)).unwrap().len(), 4);
    }

    #[test]
    fn strip_examples() {
        let r = strip_long_cycles(&cycle_graph(5), 5);
        assert_eq!(r.cycles.len(), 1);
        assert_eq!(r.residual.m(), 0);

        let r = strip_long_cycles(&cycle_graph(5), 6);
        assert!(r.cycles.is_empty());
        assert_eq!(r.residual, cycle_graph(5));

        let two = Graph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let r = strip_long_cycles(&two, 3);
        assert_eq!(r.cycles.len(), 2);
        assert_eq!(r.residual.m(), 0);
    }

    #[test]
    fn witness_examples() {
        match rotation_witness(&cycle_graph(9), 2).unwrap() {
            PosaWitness::LongCycle(c) => assert_eq!(c.len(), 9),
            other => panic!("expected long cycle, got {other:?}"),
        }
        let star = Graph::new(6, (1..6).map(|i| (0, i))).unwrap();
        let w = rotation_witness(&star, 2).unwrap();
        assert!(matches!(&w, PosaWitness::SmallSet(s) if s.len() == 1 && s[0] != 0));
        assert!(verify_witness(&star, 2, &w));

        let w = rotation_witness(&path_graph(5), 1).unwrap();
        assert_eq!(w, PosaWitness::SmallSet(vec![0]));
    }

    #[test]
    fn witness_errors() {
        assert_eq!(rotation_witness(&Graph::empty(4), 1), Err(Error::EmptyGraph));
        assert!(rotation_witness(&cycle_graph(4), 0).is_err());
    }

    #[test]
    fn complete_graph_small_t_gives_hamiltonian_cycle() {
        let g = complete(10);
        match rotation_witness(&g, 3).unwrap() {
            PosaWitness::LongCycle(c) => assert!(c.len() > 9),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn witness_closure_on_short_circumference() {
        // disjoint triangles: circumference 3, t = 1 → cycle needs length > 3
        let g = Graph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let w = rotation_witness(&g, 1).unwrap();
        assert!(verify_witness(&g, 1, &w), "{w:?}");
    }
}
