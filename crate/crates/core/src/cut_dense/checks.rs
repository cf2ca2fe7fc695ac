//! Cut density, thinness and the helper-subgraph checks.

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::check::CheckReport;
use crate::error::{Error, Result};
use crate::expander::fiedler_vector;
use crate::graph::{Graph, Vertex};
use crate::random_graph::{sparsity_check, CheckMode, SparsityParams, EXACT_SPARSITY_MAX};
use crate::rng::rng;

use super::params::CutDenseParams;

/// Largest graph whose cuts and set pairs are enumerated exhaustively.
pub const EXACT_CUT_DENSE_MAX: usize = 16;

/// `e(S, S^c) / (|S| |S^c|)`.
pub fn cut_density(g: &Graph, set: &[Vertex]) -> Result<Ratio<usize>> {
    let mask = g.membership(set)?;
    let k = mask.iter().filter(|&&b| b).count();
    if k == 0 || k == g.n() {
        return Err(Error::Precondition("cut density needs a non-trivial cut".into()));
    }
    Ok(Ratio::new(g.cut_size(&mask), k * (g.n() - k)))
}

/// A cut crossed by no edge always counts, so a disconnected graph is never
/// cut dense, even for `d = 0`.
fn sparse_cut(boundary: usize, k: usize, n: usize, d: f64) -> bool {
    boundary == 0 || (boundary as f64) < d * (k * (n - k)) as f64
}

fn mask_to_set(mask: &[bool]) -> Vec<Vertex> {
    (0..mask.len()).filter(|&v| mask[v]).collect()
}

/// Searches for a cut of density below `d`.
///
/// Graphs on at most 16 vertices are checked exhaustively. Larger graphs try
/// the components, the minimum-degree singleton, every prefix of the
/// spectral order and `trials` random cuts.
pub fn sampled_cut_dense_check(g: &Graph, d: f64, trials: usize, seed: u64) -> CheckReport {
    const NAME: &str = "cut-dense";
    let n = g.n();
    if n < 2 {
        return CheckReport::pass(NAME, true, 0);
    }
    if n <= EXACT_CUT_DENSE_MAX {
        let adj: Vec<u32> = (0..n)
            .map(|v| g.neighbors(v).iter().fold(0u32, |a, &w| a | 1 << w))
            .collect();
        let full = (1u32 << n) - 1;
        let mut samples = 0;
        // cuts with the last vertex outside S
        for mask in 1..1u32 << (n - 1) {
            samples += 1;
            let boundary: u32 = (0..n)
                .filter(|&v| mask >> v & 1 == 1)
                .map(|v| (adj[v] & !mask & full).count_ones())
                .sum();
            let k = mask.count_ones() as usize;
            if sparse_cut(boundary as usize, k, n, d) {
                let set = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
                return CheckReport::fail(NAME, true, samples, set);
            }
        }
        return CheckReport::pass(NAME, true, samples);
    }
    let mut samples = 0;
    let comps = g.connected_components();
    if comps.len() > 1 {
        return CheckReport::fail(NAME, false, 1, comps[0].clone());
    }
    let v = (0..n).min_by_key(|&v| (g.degree(v), v)).expect("n >= 2");
    samples += 1;
    if sparse_cut(g.degree(v), 1, n, d) {
        return CheckReport::fail(NAME, false, samples, vec![v]);
    }
    let f = fiedler_vector(g);
    let mut order: Vec<Vertex> = (0..n).collect();
    order.sort_by(|&a, &b| f[a].total_cmp(&f[b]).then(a.cmp(&b)));
    let mut inside = vec![false; n];
    let mut boundary = 0usize;
    for (k, &v) in order.iter().enumerate().take(n - 1) {
        let nb_in = g.neighbors(v).iter().filter(|&&w| inside[w]).count();
        boundary = boundary + g.degree(v) - 2 * nb_in;
        inside[v] = true;
        samples += 1;
        if sparse_cut(boundary, k + 1, n, d) {
            return CheckReport::fail(NAME, false, samples, order[..=k].to_vec());
        }
    }
    let mut r = rng(seed);
    for _ in 0..trials {
        let k = r.gen_range(1..=n / 2);
        let mut perm: Vec<Vertex> = (0..n).collect();
        perm.shuffle(&mut r);
        let mut mask = vec![false; n];
        for &v in &perm[..k] {
            mask[v] = true;
        }
        samples += 1;
        if sparse_cut(g.cut_size(&mask), k, n, d) {
            return CheckReport::fail(NAME, false, samples, mask_to_set(&mask));
        }
    }
    CheckReport::pass(NAME, false, samples)
}

/// Searches for disjoint `S`, `T` of size `ceil(rho n)` with
/// `e(S, T) > q |S| |T|`.
///
/// Exhaustive for at most 16 vertices; otherwise tries `trials` random pairs.
pub fn sampled_thin_check(g: &Graph, q: f64, rho: f64, trials: usize, seed: u64) -> CheckReport {
    const NAME: &str = "thin";
    let n = g.n();
    let k = ((rho * n as f64).ceil() as usize).max(1);
    if 2 * k > n {
        return CheckReport::pass(NAME, true, 0);
    }
    let limit = q * (k * k) as f64;
    let dense = |s: &[bool], t: &[bool]| g.cross_edges(s, t) as f64 > limit;
    if n <= EXACT_CUT_DENSE_MAX {
        let adj: Vec<u32> = (0..n)
            .map(|v| g.neighbors(v).iter().fold(0u32, |a, &w| a | 1 << w))
            .collect();
        let all = 1u32 << n;
        let mut samples = 0;
        for s in (1..all).filter(|m| m.count_ones() as usize == k) {
            let rest = (all - 1) & !s;
            // T ranges over k-subsets of the rest whose lowest vertex exceeds S's
            let low = s.trailing_zeros();
            let mut t = rest;
            loop {
                if t.count_ones() as usize == k && t.trailing_zeros() > low {
                    samples += 1;
                    let e: u32 = (0..n)
                        .filter(|&v| s >> v & 1 == 1)
                        .map(|v| (adj[v] & t).count_ones())
                        .sum();
                    if e as f64 > limit {
                        let sv = (0..n).filter(|&v| s >> v & 1 == 1).collect();
                        let tv = (0..n).filter(|&v| t >> v & 1 == 1).collect();
                        return CheckReport::fail(NAME, true, samples, sv).with_other(tv);
                    }
                }
                if t == 0 {
                    break;
                }
                t = (t - 1) & rest;
            }
        }
        return CheckReport::pass(NAME, true, samples);
    }
    let mut samples = 0;
    let mut r = rng(seed);
    let mut perm: Vec<Vertex> = (0..n).collect();
    for _ in 0..trials {
        perm.shuffle(&mut r);
        let mut s = vec![false; n];
        let mut t = vec![false; n];
        for &v in &perm[..k] {
            s[v] = true;
        }
        for &v in &perm[k..2 * k] {
            t[v] = true;
        }
        samples += 1;
        if dense(&s, &t) {
            return CheckReport::fail(NAME, false, samples, mask_to_set(&s)).with_other(mask_to_set(&t));
        }
    }
    CheckReport::pass(NAME, false, samples)
}

/// Keeps each edge independently with probability `q`.
pub fn random_subgraph(g: &Graph, q: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::Precondition(format!("subsample probability {q} outside [0, 1]")));
    }
    let mut r = rng(seed);
    let kept: Vec<_> = g.edges().iter().copied().filter(|_| r.gen_bool(q)).collect();
    Graph::new(g.n(), kept)
}

/// The four properties a helper subsample `G_q` of a `d`-cut-dense graph
/// should have.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HelperChecks {
    /// `(epsilon, gamma)`-sparse.
    pub sparse: CheckReport,
    /// `(2q, rho)`-thin.
    pub thin: CheckReport,
    /// Maximum degree at most `2qn`.
    pub max_degree: CheckReport,
    /// `qd/2`-cut dense.
    pub cut_dense: CheckReport,
}

impl HelperChecks {
    pub fn passed(&self) -> bool {
        self.sparse.passed && self.thin.passed && self.max_degree.passed && self.cut_dense.passed
    }

    pub fn reports(&self) -> [&CheckReport; 4] {
        [&self.sparse, &self.thin, &self.max_degree, &self.cut_dense]
    }
}

pub fn gqlem_checks(gq: &Graph, params: &CutDenseParams, seed: u64) -> Result<HelperChecks> {
    let n = gq.n();
    let sp = SparsityParams::with_gamma(params.epsilon, params.gamma)?;
    let mode = if n <= EXACT_SPARSITY_MAX {
        CheckMode::Exact
    } else {
        CheckMode::Sampled
    };
    let sparse = sparsity_check(gq, &sp, mode, params.trials, seed)?;
    let thin = sampled_thin_check(gq, 2.0 * params.q, params.rho, params.trials, seed);
    let cap = 2.0 * params.q * n as f64;
    let max_degree = match (0..n).max_by_key(|&v| (gq.degree(v), std::cmp::Reverse(v))) {
        Some(v) if gq.degree(v) as f64 > cap => CheckReport::fail("max-degree", true, n, vec![v]),
        _ => CheckReport::pass("max-degree", true, n),
    };
    let cut_dense = sampled_cut_dense_check(gq, params.q * params.d / 2.0, params.trials, seed);
    Ok(HelperChecks {
        sparse,
        thin,
        max_degree,
        cut_dense,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random_graph::gnp;

    fn complete(n: usize) -> Graph {
        gnp(n, 1.0, 0).unwrap()
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

    #[test]
    fn densities() {
        assert_eq!(cut_density(&complete(7), &[0, 3]).unwrap(), Ratio::from_integer(1));
        assert_eq!(
            cut_density(&two_k5_bridge(), &[0, 1, 2, 3, 4]).unwrap(),
            Ratio::new(1, 25)
        );
        assert_eq!(cut_density(&Graph::empty(4), &[0]).unwrap(), Ratio::from_integer(0));
        assert!(cut_density(&Graph::empty(4), &[]).is_err());
        assert!(cut_density(&Graph::empty(2), &[0, 1]).is_err());
    }

    #[test]
    fn cut_dense_checks() {
        let r = sampled_cut_dense_check(&complete(8), 1.0, 0, 0);
        assert!(r.passed && r.exact);
        let g = two_k5_bridge();
        let r = sampled_cut_dense_check(&g, 0.5, 0, 0);
        assert!(!r.passed);
        let w = r.witness.unwrap();
        let d = cut_density(&g, &w).unwrap();
        assert!(d < Ratio::new(1, 2));
    }

    #[test]
    fn large_bridge_is_found_by_sweep() {
        let mut e = Vec::new();
        for b in [0, 20] {
            for u in 0..20 {
                for v in u + 1..20 {
                    e.push((b + u, b + v));
                }
            }
        }
        e.push((0, 20));
        let g = Graph::new(40, e).unwrap();
        let r = sampled_cut_dense_check(&g, 0.01, 0, 0);
        assert!(!r.passed && !r.exact);
        assert_eq!(r.witness.unwrap().len(), 20);
    }

    #[test]
    fn dense_random_graph_is_thin_at_high_q() {
        let g = gnp(200, 0.5, 1).unwrap();
        assert!(sampled_thin_check(&g, 0.9, 0.1, 32, 4).passed);
        let r = sampled_thin_check(&g, 0.1, 0.1, 32, 4);
        assert!(!r.passed);
        let (s, t) = (r.witness.unwrap(), r.witness_other.unwrap());
        let (ms, mt) = (g.membership(&s).unwrap(), g.membership(&t).unwrap());
        assert!(g.cross_edges(&ms, &mt) as f64 > 0.1 * 400.0);
    }

    #[test]
    fn exact_thin_check_finds_clique_pair() {
        let g = complete(8);
        let r = sampled_thin_check(&g, 0.9, 0.25, 0, 0);
        assert!(!r.passed && r.exact);
        assert_eq!(r.witness_other.unwrap().len(), 2);
    }

    #[test]
    fn subsample_extremes() {
        let g = complete(30);
        assert_eq!(random_subgraph(&g, 1.0, 3).unwrap().edges(), g.edges());
        let empty = random_subgraph(&g, 0.0, 3).unwrap();
        assert_eq!(empty.m(), 0);
        let p = CutDenseParams {
            q: 0.0,
            ..CutDenseParams::for_graph(30, 1.0).unwrap()
        };
        let c = gqlem_checks(&empty, &p, 0).unwrap();
        assert!(c.sparse.passed && c.thin.passed && c.max_degree.passed);
        assert!(!c.cut_dense.passed);
        let p = CutDenseParams { q: 1.0, ..p };
        assert!(gqlem_checks(&g, &p, 0).unwrap().max_degree.passed);
    }

    #[test]
    fn complete_graph_helper_passes() {
        let g = complete(200);
        let p = CutDenseParams::for_graph(200, 1.0).unwrap();
        let gq = random_subgraph(&g, p.q, 6).unwrap();
        let c = gqlem_checks(&gq, &p, 6).unwrap();
        assert!(c.passed(), "{c:?}");
    }
}
