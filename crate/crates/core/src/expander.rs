//! Sparse cuts and the deletion loop that leaves only edge expanders.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use num_rational::Ratio;
use rand::seq::index::sample;

use crate::check::CheckReport;
use crate::graph::{Edge, Graph, Vertex};
use crate::rng::{derive_seed, rng};

/// Components up to this size are searched exhaustively.
pub const EXACT_CUT_MAX: usize = 20;
const POWER_ITERATIONS: usize = 300;
const LOCAL_PASSES: usize = 10;

/// Nearest rational with denominator 1024, kept strictly positive.
pub fn ratio_from_f64(x: f64) -> Ratio<usize> {
    let numer = (x * 1024.0).round().max(1.0) as usize;
    Ratio::new(numer, 1024)
}

pub(crate) fn ratio_to_f64(r: Ratio<usize>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// `boundary < s * size`, exactly.
fn below(boundary: usize, size: usize, s: Ratio<usize>) -> bool {
    (boundary as u128) * (*s.denom() as u128) < (*s.numer() as u128) * (size as u128)
}

/// Compares `a_b / a_x` with `b_b / b_x`.
fn cmp_ratio(a_b: usize, a_x: usize, b_b: usize, b_x: usize) -> Ordering {
    (a_b as u128 * b_x as u128).cmp(&(b_b as u128 * a_x as u128))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseCut {
    pub x: Vec<Vertex>,
    pub boundary: usize,
    pub ratio: Ratio<usize>,
}

impl SparseCut {
    fn new(g: &Graph, mut x: Vec<Vertex>) -> Self {
        x.sort_unstable();
        let mask = g.membership(&x).expect("cut vertices in range");
        let boundary = g.cut_size(&mask);
        let ratio = Ratio::new(boundary, x.len());
        SparseCut { x, boundary, ratio }
    }

    /// Recounts the boundary in `g` and checks `e(X, X^c) < s|X|`, `|X| <= ⌊n/2⌋`.
    pub fn verifies(&self, g: &Graph, s: Ratio<usize>) -> bool {
        if self.x.is_empty() || self.x.len() > g.n() / 2 {
            return false;
        }
        let Ok(mask) = g.membership(&self.x) else { return false };
        let b = g.cut_size(&mask);
        b == self.boundary && below(b, self.x.len(), s)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExpansionReport {
    pub s: Ratio<usize>,
    pub deleted: Vec<Edge>,
    pub components: Vec<Vec<Vertex>>,
    /// `4 s n log2 n`.
    pub deletion_budget: f64,
}

impl ExpansionReport {
    pub fn within_budget(&self) -> bool {
        self.deleted.len() as f64 <= self.deletion_budget
    }
}

pub(crate) fn deletion_budget(n: usize, s: Ratio<usize>) -> f64 {
    if n < 2 {
        return 0.0;
    }
    4.0 * ratio_to_f64(s) * n as f64 * (n as f64).log2()
}

/// Visits every nonempty subset of at most `⌊n/2⌋` vertices in Gray-code
/// order and returns the sparsest one below `s`, if any. Requires `n <= 20`.
fn exact_cut(g: &Graph, s: Ratio<usize>) -> Option<Vec<Vertex>> {
    let n = g.n();
    debug_assert!(n <= EXACT_CUT_MAX);
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |a, &w| a | 1 << w))
        .collect();
    let mut set = 0u32;
    let mut boundary: usize = 0;
    let mut size = 0usize;
    let mut best: Option<(u32, usize, usize)> = None;
    for i in 1u32..(1u32 << n) {
        let v = i.trailing_zeros() as usize;
        let inside = (adj[v] & set).count_ones() as usize;
        let deg = g.degree(v);
        if set >> v & 1 == 1 {
            set &= !(1 << v);
            size -= 1;
            boundary = boundary + 2 * inside - deg;
        } else {
            set |= 1 << v;
            size += 1;
            boundary = boundary + deg - 2 * inside;
        }
        if size == 0 || size > n / 2 || !below(boundary, size, s) {
            continue;
        }
        let better = match best {
            None => true,
            Some((_, bb, bs)) => cmp_ratio(boundary, size, bb, bs) == Ordering::Less,
        };
        if better {
            best = Some((set, boundary, size));
        }
    }
    best.map(|(mask, _, _)| (0..n).filter(|&v| mask >> v & 1 == 1).collect())
}

/// Approximate Fiedler vector by power iteration on `cI - L`, with the
/// constant eigenvector projected out after every step.
pub(crate) fn fiedler_vector(g: &Graph) -> Vec<f64> {
    let n = g.n();
    if n == 0 {
        return Vec::new();
    }
    let c = 2.0 * g.max_degree() as f64 + 1.0;
    let mut x: Vec<f64> = (0..n)
        .map(|i| (derive_seed(0xf1ed, i as u64) >> 11) as f64 / (1u64 << 53) as f64 - 0.5)
        .collect();
    let mut y = vec![0.0; n];
    let normalize = |x: &mut Vec<f64>| {
        let mean = x.iter().sum::<f64>() / n as f64;
        x.iter_mut().for_each(|v| *v -= mean);
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm > 0.0 {
            x.iter_mut().for_each(|v| *v /= norm);
        }
    };
    normalize(&mut x);
    for _ in 0..POWER_ITERATIONS {
        for v in 0..n {
            let nb: f64 = g.neighbors(v).iter().map(|&w| x[w]).sum();
            y[v] = (c - g.degree(v) as f64) * x[v] + nb;
        }
        std::mem::swap(&mut x, &mut y);
        normalize(&mut x);
    }
    x
}

/// Best prefix or suffix cut of the spectral order, as a membership mask.
fn sweep(g: &Graph) -> Option<Vec<bool>> {
    let n = g.n();
    let f = fiedler_vector(g);
    let mut order: Vec<Vertex> = (0..n).collect();
    order.sort_by(|&a, &b| f[a].total_cmp(&f[b]).then(a.cmp(&b)));
    let mut inside = vec![false; n];
    let mut boundary = 0usize;
    let mut best: Option<(usize, usize, usize, bool)> = None; // (k, boundary, size, prefix)
    for (k, &v) in order.iter().enumerate().take(n - 1) {
        let nb_in = g.neighbors(v).iter().filter(|&&w| inside[w]).count();
        boundary = boundary + g.degree(v) - 2 * nb_in;
        inside[v] = true;
        let pre = k + 1;
        for (size, prefix) in [(pre, true), (n - pre, false)] {
            if size == 0 || size > n / 2 {
                continue;
            }
            let better = match best {
                None => true,
                Some((_, bb, bs, _)) => cmp_ratio(boundary, size, bb, bs) == Ordering::Less,
            };
            if better {
                best = Some((k, boundary, size, prefix));
            }
        }
    }
    let (k, _, size, prefix) = best?;
    let mut mask = vec![!prefix; n];
    for &v in &order[..=k] {
        mask[v] = prefix;
    }
    debug_assert_eq!(mask.iter().filter(|&&m| m).count(), size);
    Some(mask)
}

/// Single-vertex moves that lower `boundary - s|X|` while `1 <= |X| <= ⌊n/2⌋`.
fn local_improve(g: &Graph, mask: &mut [bool], s: Ratio<usize>) {
    let n = g.n();
    let (num, den) = (*s.numer() as i128, *s.denom() as i128);
    let mut nb_in: Vec<usize> = (0..n)
        .map(|v| g.neighbors(v).iter().filter(|&&w| mask[w]).count())
        .collect();
    let mut size = mask.iter().filter(|&&m| m).count();
    for _ in 0..LOCAL_PASSES {
        let mut moved = false;
        for v in 0..n {
            let deg = g.degree(v) as i128;
            let inn = nb_in[v] as i128;
            // change in boundary*den - num*size
            let (delta, new_size) = if mask[v] {
                ((2 * inn - deg) * den + num, size - 1)
            } else {
                ((deg - 2 * inn) * den - num, size + 1)
            };
            if delta >= 0 || new_size == 0 || new_size > n / 2 {
                continue;
            }
            mask[v] = !mask[v];
            size = new_size;
            for &w in g.neighbors(v) {
                if mask[v] {
                    nb_in[w] += 1;
                } else {
                    nb_in[w] -= 1;
                }
            }
            moved = true;
        }
        if !moved {
            break;
        }
    }
}

/// Looks for `X` with `|X| <= ⌊n/2⌋` and `e(X, X^c) < s|X|` in a connected
/// graph. Exhaustive up to [`EXACT_CUT_MAX`] vertices; beyond that a
/// heuristic (lowest-degree singleton, spectral sweep, local moves), so
/// `None` is not a certificate of expansion there.
pub fn find_sparse_cut(g: &Graph, s: Ratio<usize>) -> Option<SparseCut> {
    let n = g.n();
    if n < 2 {
        return None;
    }
    if n <= EXACT_CUT_MAX {
        return exact_cut(g, s).map(|x| SparseCut::new(g, x));
    }
    let mut candidates: Vec<SparseCut> = Vec::new();
    let v = (0..n).min_by_key(|&v| (g.degree(v), v)).expect("n >= 2");
    if below(g.degree(v), 1, s) {
        candidates.push(SparseCut::new(g, vec![v]));
    }
    if let Some(mut mask) = sweep(g) {
        let members = |m: &[bool]| (0..n).filter(|&v| m[v]).collect::<Vec<_>>();
        candidates.push(SparseCut::new(g, members(&mask)));
        local_improve(g, &mut mask, s);
        candidates.push(SparseCut::new(g, members(&mask)));
    }
    candidates
        .into_iter()
        .filter(|c| c.verifies(g, s))
        .min_by(|a, b| cmp_ratio(a.boundary, a.x.len(), b.boundary, b.x.len()).then(a.x.cmp(&b.x)))
}

/// Deletes sparse-cut boundaries until no component has a cut the search
/// can find. Components are processed largest first.
pub fn expansion_partition(g: &Graph, s: Ratio<usize>) -> ExpansionReport {
    let mut deleted: Vec<Edge> = Vec::new();
    let mut heap: BinaryHeap<(usize, Reverse<Vertex>, Vec<Vertex>)> = BinaryHeap::new();
    for comp in g.connected_components() {
        if comp.len() >= 2 {
            heap.push((comp.len(), Reverse(comp[0]), comp));
        }
    }
    while let Some((_, _, comp)) = heap.pop() {
        let local = g.induced_subgraph(&comp).expect("in range");
        let Some(cut) = find_sparse_cut(&local.graph, s) else {
            continue;
        };
        let x: Vec<Vertex> = local.lift_vertices(&cut.x);
        let in_x = g.membership(&x).expect("in range");
        let in_c = g.membership(&comp).expect("in range");
        for &v in &x {
            for &w in g.neighbors(v) {
                if in_c[w] && !in_x[w] {
                    deleted.push(crate::graph::edge(v, w));
                }
            }
        }
        let rest: Vec<Vertex> = comp.iter().copied().filter(|&v| !in_x[v]).collect();
        for side in [x, rest] {
            let h = g.induced_subgraph(&side).expect("in range");
            for c in h.graph.connected_components() {
                if c.len() >= 2 {
                    let lifted = h.lift_vertices(&c);
                    heap.push((lifted.len(), Reverse(lifted[0]), lifted));
                }
            }
        }
    }
    deleted.sort_unstable();
    let remaining = g.remove_edges(&deleted).expect("deleted edges present");
    ExpansionReport {
        s,
        deleted,
        components: remaining.connected_components(),
        deletion_budget: deletion_budget(g.n(), s),
    }
}

/// Checks that every component is an `s`-edge-expander. Exact for components
/// of at most [`EXACT_CUT_MAX`] vertices; otherwise `trials` random subsets
/// per size class (powers of two up to half the component) plus the spectral
/// search.
pub fn sampled_expansion_check(g: &Graph, s: Ratio<usize>, trials: usize, seed: u64) -> CheckReport {
    const NAME: &str = "edge-expansion";
    let mut exact = true;
    let mut samples = 0;
    for (ci, comp) in g.connected_components().into_iter().enumerate() {
        if comp.len() < 2 {
            continue;
        }
        let local = g.induced_subgraph(&comp).expect("in range");
        let h = &local.graph;
        let n = h.n();
        if n <= EXACT_CUT_MAX {
            samples += 1 << n;
            if let Some(x) = exact_cut(h, s) {
                return CheckReport::fail(NAME, true, samples, local.lift_vertices(&x));
            }
            continue;
        }
        exact = false;
        let mut r = rng(derive_seed(seed, ci as u64));
        let mut k = 1;
        while k <= n / 2 {
            for _ in 0..trials {
                let x: Vec<Vertex> = sample(&mut r, n, k).into_vec();
                samples += 1;
                let mask = h.membership(&x).expect("in range");
                if below(h.cut_size(&mask), k, s) {
                    let mut w = local.lift_vertices(&x);
                    w.sort_unstable();
                    return CheckReport::fail(NAME, false, samples, w);
                }
            }
            k *= 2;
        }
        samples += 1;
        if let Some(cut) = find_sparse_cut(h, s) {
            return CheckReport::fail(NAME, false, samples, local.lift_vertices(&cut.x));
        }
    }
    CheckReport::pass(NAME, exact, samples)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        Graph::new(n, e).unwrap()
    }

    fn two_k5_bridge() -> Graph {
        let mut e = Vec::new();
        for b in [0, 5] {
            for u in 0..5 {
                for v in u + 1..5 {
                    e.push((b + u, b + v));
                }
            }
        }
        e.push((4, 5));
        Graph::new(10, e).unwrap()
    }

    fn int(k: usize) -> Ratio<usize> {
        Ratio::from_integer(k)
    }

    #[test]
    fn complete_graph_has_no_sparse_cut() {
        assert_eq!(find_sparse_cut(&complete(8), int(1)), None);
        let r = expansion_partition(&complete(8), int(1));
        assert!(r.deleted.is_empty());
        assert_eq!(r.components.len(), 1);
        assert!(sampled_expansion_check(&complete(8), int(1), 4, 0).passed);
    }

    #[test]
    fn bridge_separates_blocks() {
        let g = two_k5_bridge();
        let cut = find_sparse_cut(&g, int(2)).unwrap();
        assert_eq!(cut.boundary, 1);
        assert_eq!(cut.x.len(), 5);
        assert!(cut.verifies(&g, int(2)));

        let r = expansion_partition(&g, int(2));
        assert_eq!(r.deleted, vec![(4, 5)]);
        assert_eq!(r.components.len(), 2);
        assert!(r.within_budget());

        let c = sampled_expansion_check(&g, int(2), 4, 0);
        assert!(!c.passed && c.exact);
        assert_eq!(c.witness.unwrap().len(), 5);
    }

    #[test]
    fn pendant_path_tail_is_cut() {
        // K6 with a 4-vertex tail 5-6-7-8-9
        let mut e: Vec<Edge> = complete(6).edges().to_vec();
        e.extend([(5, 6), (6, 7), (7, 8), (8, 9)]);
        let g = Graph::new(10, e).unwrap();
        let cut = find_sparse_cut(&g, int(2)).unwrap();
        assert!(cut.verifies(&g, int(2)));
        assert!(cut.x.iter().all(|&v| v >= 6));
    }

    #[test]
    fn empty_graph_partition() {
        let r = expansion_partition(&Graph::empty(4), int(1));
        assert!(r.deleted.is_empty());
        assert_eq!(r.components.len(), 4);
    }

    #[test]
    fn spectral_sweep_finds_planted_bridge() {
        // two K15 joined by one edge: beyond the exact threshold
        let mut e = Vec::new();
        for b in [0, 15] {
            for u in 0..15 {
                for v in u + 1..15 {
                    e.push((b + u, b + v));
                }
            }
        }
        e.push((0, 15));
        let g = Graph::new(30, e).unwrap();
        let cut = find_sparse_cut(&g, int(2)).unwrap();
        assert_eq!(cut.boundary, 1);
        assert_eq!(cut.x.len(), 15);
    }
}
