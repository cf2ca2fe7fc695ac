//! Binomial random graphs and the decomposition tailored to them.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use rand::seq::index::sample;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::check::CheckReport;
use crate::error::{Error, Result};
use crate::graph::{edge, Edge, Graph, Vertex};
use crate::long_cycle::strip_long_cycles;
use crate::path_decomp::{decompose_with_sparse_ends, PathSystem};
use crate::piece::{split_closed_walk, Decomposition, Piece};
use crate::rng::{derive_seed, rng};
use crate::telemetry::{RunTrace, StageRecord};

/// Every pair independently with probability `p`.
pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Precondition(format!("edge probability {p} outside [0, 1]")));
    }
    let mut r = rng(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if r.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges)
}

/// Every induced subgraph on `v` vertices has at most `gamma * v^(2 - epsilon)` edges.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SparsityParams {
    pub epsilon: f64,
    pub gamma: f64,
}

impl SparsityParams {
    /// `gamma = 2 / epsilon`.
    pub fn new(epsilon: f64) -> Result<Self> {
        Self::with_gamma(epsilon, 2.0 / epsilon)
    }

    pub fn with_gamma(epsilon: f64, gamma: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 0.5) || !(gamma >= 1.0 && gamma.is_finite()) {
            return Err(Error::Precondition(format!(
                "sparsity needs 0 < epsilon < 1/2 and gamma >= 1, got ({epsilon}, {gamma})"
            )));
        }
        Ok(SparsityParams { epsilon, gamma })
    }

    pub fn bound(&self, v: usize) -> f64 {
        self.gamma * (v as f64).powf(2.0 - self.epsilon)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMode {
    Exact,
    Sampled,
}

pub const EXACT_SPARSITY_MAX: usize = 14;

/// Deletion order of repeatedly removing a minimum-degree vertex, with the
/// edge count of the graph induced by the vertices not yet deleted before
/// each step.
pub(crate) fn min_degree_peeling(g: &Graph) -> (Vec<Vertex>, Vec<usize>) {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut alive = vec![true; n];
    let mut heap: BinaryHeap<Reverse<(usize, Vertex)>> = (0..n).map(|v| Reverse((deg[v], v))).collect();
    let mut order = Vec::with_capacity(n);
    let mut edges = Vec::with_capacity(n);
    let mut m = g.m();
    while let Some(Reverse((d, v))) = heap.pop() {
        if !alive[v] || d != deg[v] {
            continue;
        }
        edges.push(m);
        m -= d;
        alive[v] = false;
        order.push(v);
        for &w in g.neighbors(v) {
            if alive[w] {
                deg[w] -= 1;
                heap.push(Reverse((deg[w], w)));
            }
        }
    }
    (order, edges)
}

/// Tests the sparsity property. Exact mode examines every vertex subset and
/// needs `n <= 14`; sampled mode draws `trials` random subsets of each size
/// `1, 2, 4, ...` and adds the sets of a minimum-degree peeling. A reported
/// violation always is one.
pub fn sparsity_check(
    g: &Graph,
    sp: &SparsityParams,
    mode: CheckMode,
    trials: usize,
    seed: u64,
) -> Result<CheckReport> {
    const NAME: &str = "sparsity";
    let n = g.n();
    let violates = |set: &[Vertex]| {
        let mut mask = vec![false; n];
        for &v in set {
            mask[v] = true;
        }
        g.induced_edge_count(&mask) as f64 > sp.bound(set.len())
    };
    match mode {
        CheckMode::Exact => {
            if n > EXACT_SPARSITY_MAX {
                return Err(Error::Precondition(format!(
                    "exact sparsity check limited to {EXACT_SPARSITY_MAX} vertices, got {n}"
                )));
            }
            let adj: Vec<u32> = (0..n)
                .map(|v| g.neighbors(v).iter().fold(0u32, |a, &w| a | 1 << w))
                .collect();
            let total = 1u32 << n;
            for mask in 1..total {
                let twice: u32 = (0..n)
                    .filter(|&v| mask >> v & 1 == 1)
                    .map(|v| (adj[v] & mask).count_ones())
                    .sum();
                let size = mask.count_ones() as usize;
                if (twice / 2) as f64 > sp.bound(size) {
                    let set = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
                    return Ok(CheckReport::fail(NAME, true, mask as usize, set));
                }
            }
            Ok(CheckReport::pass(NAME, true, (total - 1) as usize))
        }
        CheckMode::Sampled => {
            let mut samples = 0;
            let (order, counts) = min_degree_peeling(g);
            for i in 0..n {
                samples += 1;
                if counts[i] as f64 > sp.bound(n - i) {
                    let mut set = order[i..].to_vec();
                    set.sort_unstable();
                    return Ok(CheckReport::fail(NAME, false, samples, set));
                }
            }
            let mut r = rng(seed);
            let mut size = 1;
            while size <= n {
                for _ in 0..trials {
                    let mut set = sample(&mut r, n, size).into_vec();
                    set.sort_unstable();
                    samples += 1;
                    if violates(&set) {
                        return Ok(CheckReport::fail(NAME, false, samples, set));
                    }
                }
                size *= 2;
            }
            Ok(CheckReport::pass(NAME, false, samples))
        }
    }
}

/// Removes every cycle found in the remainder and returns the rest as single
/// edges.
fn finish(rem: &Graph, pieces: &mut Vec<Piece>, trace: &mut RunTrace) {
    let tail = strip_long_cycles(rem, 3);
    let mut rec = StageRecord::new("final", rem.n(), rem.m());
    rec.cycles_emitted = tail.cycles.len();
    rec.leftover_edges = tail.residual.m();
    trace.push(rec);
    pieces.extend(tail.cycles);
    pieces.extend(tail.residual.edges().iter().map(|&(u, v)| Piece::single(u, v)));
}

/// The halving ladder: while more than `2n` edges remain, strip every cycle
/// of length at least `m/n + 1`; then strip whatever cycles remain and emit
/// the rest as single edges.
pub fn decompose_sparse(g: &Graph) -> Decomposition {
    let (pieces, trace) = sparse_pieces(g);
    Decomposition::new(g, pieces).with_trace(trace)
}

pub(crate) fn sparse_pieces(g: &Graph) -> (Vec<Piece>, RunTrace) {
    let n = g.n();
    let mut trace = RunTrace::default();
    let mut pieces = Vec::new();
    let mut rem = g.clone();
    while rem.m() > 2 * n {
        let l = rem.m() / n + 1;
        let strip = strip_long_cycles(&rem, l);
        if strip.cycles.is_empty() {
            break;
        }
        let mut rec = StageRecord::new("ladder", n, rem.m());
        rec.cycles_emitted = strip.cycles.len();
        rec.leftover_edges = strip.residual.m();
        trace.push(rec);
        trace.rounds += 1;
        pieces.extend(strip.cycles);
        rem = strip.residual;
    }
    finish(&rem, &mut pieces, &mut trace);
    (pieces, trace)
}

/// Puts each edge into `g1` independently with probability `q / p`.
pub fn split_random(g: &Graph, p: f64, q: f64, seed: u64) -> Result<(Graph, Graph)> {
    if !(q > 0.0 && q <= p && p <= 1.0) {
        return Err(Error::Precondition(format!(
            "split needs 0 < q <= p <= 1, got q = {q}, p = {p}"
        )));
    }
    let ratio = q / p;
    let mut r = rng(seed);
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for &e in g.edges() {
        if r.gen_bool(ratio) {
            a.push(e);
        } else {
            b.push(e);
        }
    }
    Ok((Graph::new(g.n(), a)?, Graph::new(g.n(), b)?))
}

#[derive(Clone, Debug)]
pub struct ClosureResult {
    /// Pieces of the closed walks (cycles, and single edges for degenerate walks).
    pub closed: Vec<Piece>,
    /// Edges of paths that found no closure.
    pub singles: Vec<Piece>,
    /// Indices of those paths in the input system.
    pub failures: Vec<usize>,
    pub residual: Graph,
    /// How often each vertex served as a middle vertex.
    pub middle_usage: Vec<usize>,
    pub middle_cap: usize,
    pub used: Vec<Edge>,
}

/// Closes each path `u .. v` of `ps` with a path `u - w - v` in `g1`.
///
/// The middle vertex is the smallest common neighbour whose two edges are
/// unused and which has served fewer than `floor(sqrt n)` times. A path with
/// no such neighbour is emitted as single edges.
pub fn two_step_closures(g1: &Graph, ps: &PathSystem) -> ClosureResult {
    let n = g1.n();
    let cap = (n as f64).sqrt().floor() as usize;
    let mut used: HashSet<Edge> = HashSet::new();
    let mut usage = vec![0usize; n];
    let mut out = ClosureResult {
        closed: Vec::new(),
        singles: Vec::new(),
        failures: Vec::new(),
        residual: Graph::empty(n),
        middle_usage: Vec::new(),
        middle_cap: cap,
        used: Vec::new(),
    };
    let mut mark = vec![false; n];
    for (i, p) in ps.paths.iter().enumerate() {
        let u = p.vertices[0];
        let v = *p.vertices.last().expect("non-empty");
        for &a in g1.neighbors(u) {
            mark[a] = true;
        }
        let w = g1.neighbors(v).iter().copied().find(|&w| {
            mark[w] && w != u && w != v && usage[w] < cap && !used.contains(&edge(u, w)) && !used.contains(&edge(w, v))
        });
        for &a in g1.neighbors(u) {
            mark[a] = false;
        }
        match w {
            Some(w) => {
                usage[w] += 1;
                for e in [edge(u, w), edge(w, v)] {
                    used.insert(e);
                    out.used.push(e);
                }
                let mut walk = p.vertices.clone();
                walk.push(w);
                out.closed.extend(split_closed_walk(&walk));
            }
            None => {
                out.failures.push(i);
                out.singles
                    .extend(p.edges().into_iter().map(|(a, b)| Piece::single(a, b)));
            }
        }
    }
    out.residual = g1.remove_edges(&out.used).expect("used edges lie in g1");
    out.middle_usage = usage;
    out
}

/// Exponent of the split density `q = n^(-epsilon)`.
pub const SPLIT_EPSILON: f64 = 0.2;

/// Cycles and single edges for a binomial random graph.
///
/// Sparse inputs (`p <= n^(-1/5)`) go straight to [`decompose_sparse`].
/// Otherwise a sparse random part `g1` of density `n^(-1/5)` is split off,
/// the rest is cut into paths with few shared ends, each path is closed
/// through `g1`, and the remainder of `g1` goes through the ladder together
/// with the edges of paths that found no closure.
pub fn decompose_random(g: &Graph, p: f64, seed: u64) -> Decomposition {
    let n = g.n();
    let q = (n.max(1) as f64).powf(-SPLIT_EPSILON);
    if g.m() == 0 || p <= q {
        return decompose_sparse(g);
    }
    let (pieces, trace) = split_close_pieces(g, p.min(1.0), q, seed);
    Decomposition::new(g, pieces).with_trace(trace)
}

/// The split-and-close scheme alone.
pub fn decompose_split_close(g: &Graph, p: f64, seed: u64) -> Result<Decomposition> {
    let q = (g.n().max(1) as f64).powf(-SPLIT_EPSILON);
    if !(q < p && p <= 1.0) {
        return Err(Error::Precondition(format!(
            "split needs n^(-1/5) < p <= 1, got p = {p}"
        )));
    }
    let (pieces, trace) = split_close_pieces(g, p, q, seed);
    Ok(Decomposition::new(g, pieces).with_trace(trace))
}

fn split_close_pieces(g: &Graph, p: f64, q: f64, seed: u64) -> (Vec<Piece>, RunTrace) {
    let n = g.n();
    let (g1, g2) = split_random(g, p, q, derive_seed(seed, 0)).expect("0 < q < p <= 1");
    let ps = decompose_with_sparse_ends(&g2);
    let closures = two_step_closures(&g1, &ps);
    let mut trace = RunTrace::default();
    let mut rec = StageRecord::new("closures", n, g.m());
    rec.cycles_emitted = closures.closed.iter().filter(|p| p.is_cycle()).count();
    rec.leftover_edges = closures.singles.len();
    trace.push(rec);
    let mut pieces = ps.cycles;
    pieces.extend(closures.closed);
    // loose edges and unclosed paths rejoin what is left of g1
    let unclosed = ps.loose_edges.iter().chain(&closures.singles).flat_map(Piece::edges);
    let rest_graph = Graph::new(n, closures.residual.edges().iter().copied().chain(unclosed)).expect("disjoint edges");
    let (rest, rest_trace) = sparse_pieces(&rest_graph);
    pieces.extend(rest);
    trace.rounds = rest_trace.rounds;
    trace.extend(rest_trace);
    (pieces, trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::verify_decomposition;

    #[test]
    fn gnp_extremes() {
        assert_eq!(gnp(10, 0.0, 1).unwrap().m(), 0);
        assert_eq!(gnp(10, 1.0, 1).unwrap().m(), 45);
        assert!(gnp(10, 1.5, 1).is_err());
    }

    #[test]
    fn gnp_edge_count_in_range() {
        let m = gnp(100, 0.3, 11).unwrap().m();
        assert!((1300..=1670).contains(&m), "m = {m}");
    }

    #[test]
    fn complete_graph_is_not_sparse() {
        let g = gnp(20, 1.0, 0).unwrap();
        let sp = SparsityParams::with_gamma(0.49, 1.0).unwrap();
        let r = sparsity_check(&g, &sp, CheckMode::Sampled, 4, 0).unwrap();
        assert!(!r.passed);
        let sp = SparsityParams {
            epsilon: 0.5,
            gamma: 1.0,
        };
        let r = sparsity_check(&g, &sp, CheckMode::Sampled, 4, 0).unwrap();
        assert_eq!(r.witness.unwrap().len(), 20);
    }

    #[test]
    fn empty_graph_is_sparse() {
        let sp = SparsityParams::new(0.25).unwrap();
        let g = Graph::empty(12);
        assert!(sparsity_check(&g, &sp, CheckMode::Exact, 0, 0).unwrap().passed);
        assert!(sparsity_check(&g, &sp, CheckMode::Sampled, 3, 0).unwrap().passed);
    }

    #[test]
    fn exact_mode_size_limit() {
        let sp = SparsityParams::new(0.25).unwrap();
        assert!(sparsity_check(&Graph::empty(15), &sp, CheckMode::Exact, 0, 0).is_err());
    }

    #[test]
    fn sparse_random_graph_passes_sampled_check() {
        let n = 1000;
        let g = gnp(n, (n as f64).powf(-0.5), 3).unwrap();
        let sp = SparsityParams::with_gamma(0.25, 4.0).unwrap();
        assert!(sparsity_check(&g, &sp, CheckMode::Sampled, 8, 3).unwrap().passed);
    }

    #[test]
    fn forest_is_all_singles() {
        let g = Graph::new(6, [(0, 1), (1, 2), (1, 3), (4, 5)]).unwrap();
        let d = decompose_sparse(&g);
        assert_eq!(d.pieces.len(), 4);
        assert!(d.pieces.iter().all(|p| !p.is_cycle()));
    }

    #[test]
    fn seven_cycle() {
        let g = Graph::new(7, (0..7).map(|i| (i, (i + 1) % 7))).unwrap();
        assert_eq!(decompose_sparse(&g).pieces.len(), 1);
    }

    #[test]
    fn split_partitions_edges() {
        let g = gnp(200, 0.5, 2).unwrap();
        let (a, b) = split_random(&g, 0.5, 0.2, 9).unwrap();
        assert_eq!(a.m() + b.m(), g.m());
        assert_eq!(a.union(&b).unwrap().edges(), g.edges());
        let (a, b) = split_random(&g, 0.5, 0.5, 9).unwrap();
        assert_eq!((a.m(), b.m()), (g.m(), 0));
    }

    #[test]
    fn star_closes_single_path() {
        let g1 = Graph::new(4, [(0, 3), (2, 3)]).unwrap();
        let ps = PathSystem::new(4, vec![Piece::path(vec![0, 1, 2])], vec![], vec![]);
        let c = two_step_closures(&g1, &ps);
        assert_eq!(c.closed, vec![Piece::cycle(vec![0, 1, 2, 3])]);
        assert_eq!(c.residual.m(), 0);
    }

    #[test]
    fn empty_g1_degrades_to_singles() {
        let ps = PathSystem::new(4, vec![Piece::path(vec![0, 1, 2])], vec![], vec![]);
        let c = two_step_closures(&Graph::empty(4), &ps);
        assert!(c.closed.is_empty());
        assert_eq!(c.singles.len(), 2);
        assert_eq!(c.failures, vec![0]);
    }

    #[test]
    fn random_pipeline_is_valid() {
        for p in [0.01, 0.5] {
            let g = gnp(300, p, 1).unwrap();
            let d = decompose_random(&g, p, 1);
            assert!(verify_decomposition(&g, &d).valid);
        }
        let g = gnp(300, 0.5, 1).unwrap();
        let d = decompose_split_close(&g, 0.5, 1).unwrap();
        assert!(verify_decomposition(&g, &d).valid);
        assert!(decompose_split_close(&g, 0.01, 1).is_err());
        let g = Graph::empty(5);
        assert!(decompose_random(&g, 0.5, 0).pieces.is_empty());
    }
}
