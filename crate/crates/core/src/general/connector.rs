//! Connector sets: a small random vertex set through which any two outside
//! vertices can be joined by a short path.

use std::collections::{HashSet, VecDeque};

use num_rational::Ratio;
use rand::seq::index::sample;
use rand::Rng as _;

use crate::error::{Error, Result};
use crate::graph::{edge, Edge, Graph, Vertex};
use crate::rng::{derive_seed, rng};

use super::params::PipelineParams;

const UNREACHED: usize = usize::MAX;

#[derive(Clone, Debug)]
pub struct ConnectorState {
    /// The connector set, sorted.
    pub u: Vec<Vertex>,
    pub in_u: Vec<bool>,
    /// Layer threshold parameter.
    pub s: Ratio<usize>,
    /// Upper bound on the number of layers, checked on construction.
    pub max_layers: usize,
    /// Deepest layer structure seen during the self-test.
    pub layers_seen: usize,
    pub route_limit: usize,
    /// Edges consumed by earlier routes.
    pub used_edges: HashSet<Edge>,
    /// Per vertex, the number of used edges with both ends in `U`.
    inside_used: Vec<usize>,
    /// A vertex of `U` with more than this many used inside edges is avoided.
    pub heavy_threshold: usize,
}

/// Layer index of every vertex for source `x`: `x` is at 0, its neighbours at
/// 1, and layer `i + 1` holds the vertices outside `N_i` with
/// `e(v, N_i) >= |N_i| / (2n/s)`.
pub fn layers(g: &Graph, x: Vertex, s: Ratio<usize>) -> Vec<usize> {
    let n = g.n();
    let mut level = vec![UNREACHED; n];
    let mut count = vec![0usize; n];
    level[x] = 0;
    let mut frontier = vec![x];
    let mut size = 1usize;
    let mut depth = 0;
    let mut candidates: Vec<Vertex> = Vec::new();
    loop {
        for &v in &frontier {
            for &w in g.neighbors(v) {
                if level[w] == UNREACHED {
                    if count[w] == 0 {
                        candidates.push(w);
                    }
                    count[w] += 1;
                }
            }
        }
        depth += 1;
        let (num, den) = (*s.numer() as u128, *s.denom() as u128);
        let need = |c: usize, size: usize| {
            if depth == 1 {
                c >= 1
            } else {
                (c as u128) * 2 * (n as u128) * den >= (size as u128) * num
            }
        };
        let mut next = Vec::new();
        candidates.retain(|&w| {
            if level[w] != UNREACHED {
                return false;
            }
            if need(count[w], size) {
                next.push(w);
                false
            } else {
                true
            }
        });
        if next.is_empty() {
            break;
        }
        for &w in &next {
            level[w] = depth;
        }
        size += next.len();
        frontier = next;
    }
    level
}

impl ConnectorState {
    fn new(g: &Graph, u: Vec<Vertex>, params: &PipelineParams) -> Self {
        let n = g.n();
        let mut in_u = vec![false; n];
        for &v in &u {
            in_u[v] = true;
        }
        let s = params.expansion_s(n);
        let nf = n as f64;
        ConnectorState {
            u,
            in_u,
            s,
            max_layers: (nf.powf(params.route_length_exponent).ceil() as usize).max(params.min_route_length),
            layers_seen: 0,
            route_limit: params.route_limit(n),
            used_edges: HashSet::new(),
            inside_used: vec![0; n],
            heavy_threshold: nf.powf(2.0 / 3.0).floor() as usize,
        }
    }

    fn usable(&self, a: Vertex, b: Vertex) -> bool {
        !self.used_edges.contains(&edge(a, b))
    }

    /// Marks a route's edges as used.
    pub fn commit(&mut self, path: &[Vertex]) {
        for w in path.windows(2) {
            let e = edge(w[0], w[1]);
            if self.in_u[e.0] && self.in_u[e.1] {
                self.inside_used[e.0] += 1;
                self.inside_used[e.1] += 1;
            }
            self.used_edges.insert(e);
        }
    }

    /// Connector vertices joined to `v` by an already used edge.
    pub fn used_neighbors(&self, g: &Graph, v: Vertex) -> Vec<Vertex> {
        g.neighbors(v)
            .iter()
            .copied()
            .filter(|&w| self.in_u[w] && !self.usable(v, w))
            .collect()
    }

    fn blocked(&self, w_set: &[bool], v: Vertex) -> bool {
        w_set[v] || self.inside_used[v] > self.heavy_threshold
    }

    fn greedy(&self, g: &Graph, x: Vertex, y: Vertex, level: &[usize], w_set: &[bool]) -> Option<Vec<Vertex>> {
        let mut path = vec![y];
        let mut cur = y;
        let mut cur_level = level[y];
        while path.len() <= self.route_limit {
            if cur != y && level[cur] == 1 && self.usable(cur, x) {
                path.push(x);
                return Some(path);
            }
            let next = g
                .neighbors(cur)
                .iter()
                .copied()
                .filter(|&b| {
                    self.in_u[b]
                        && level[b] != UNREACHED
                        && level[b] >= 1
                        && level[b] < cur_level
                        && !self.blocked(w_set, b)
                        && self.usable(cur, b)
                })
                .min_by_key(|&b| (level[b], b))?;
            path.push(next);
            cur = next;
            cur_level = level[next];
        }
        None
    }

    /// Shortest route through allowed connector vertices and unused edges.
    fn bfs(&self, g: &Graph, x: Vertex, y: Vertex, w_set: &[bool]) -> Option<Vec<Vertex>> {
        let n = g.n();
        let mut prev = vec![UNREACHED; n];
        let mut dist = vec![UNREACHED; n];
        dist[y] = 0;
        let mut queue = VecDeque::from([y]);
        while let Some(v) = queue.pop_front() {
            if dist[v] + 1 > self.route_limit {
                break;
            }
            for &w in g.neighbors(v) {
                if !self.usable(v, w) {
                    continue;
                }
                if w == x && v != y {
                    let mut path = vec![x, v];
                    let mut c = v;
                    while prev[c] != UNREACHED {
                        c = prev[c];
                        path.push(c);
                    }
                    path.reverse();
                    return Some(path);
                }
                if self.in_u[w] && !self.blocked(w_set, w) && dist[w] == UNREACHED {
                    dist[w] = dist[v] + 1;
                    prev[w] = v;
                    queue.push_back(w);
                }
            }
        }
        None
    }
}

/// Routes `y` to `x` through connector vertices outside `w`, using no edge
/// consumed by an earlier route, with at least one internal vertex.
///
/// Descends the layer structure of `x` greedily from `y`, always moving to a
/// connector neighbour of strictly smaller layer; falls back to a bounded
/// breadth-first search when the descent gets stuck. The returned path runs
/// from `y` to `x`. The route is not committed.
pub fn route_via_connector(st: &ConnectorState, g: &Graph, x: Vertex, y: Vertex, w: &[Vertex]) -> Result<Vec<Vertex>> {
    let fail = Error::RoutingFailed { from: x, to: y };
    if x == y || st.in_u[x] || st.in_u[y] {
        return Err(fail);
    }
    let mut w_set = vec![false; g.n()];
    for &v in w {
        w_set[v] = true;
    }
    let level = layers(g, x, st.s);
    st.greedy(g, x, y, &level, &w_set)
        .or_else(|| st.bfs(g, x, y, &w_set))
        .ok_or(fail)
}

/// Draws a uniform connector of the clamped size and self-tests it on random
/// pairs outside it, resampling up to `connector_attempts` times.
pub fn sample_connector(g: &Graph, params: &PipelineParams, seed: u64) -> Result<ConnectorState> {
    let n = g.n();
    let size = params.connector_size(n);
    for attempt in 0..params.connector_attempts {
        let mut r = rng(derive_seed(seed, attempt as u64));
        let mut u = sample(&mut r, n, size).into_vec();
        u.sort_unstable();
        let mut st = ConnectorState::new(g, u, params);
        let outside: Vec<Vertex> = (0..n)
            .filter(|&v| !st.in_u[v] && g.neighbors(v).iter().any(|&w| st.in_u[w]))
            .collect();
        let mut ok = true;
        if outside.len() >= 2 {
            for _ in 0..params.self_test_pairs {
                let a = outside[r.gen_range(0..outside.len())];
                let b = outside[r.gen_range(0..outside.len())];
                if a == b {
                    continue;
                }
                let level = layers(g, a, st.s);
                let depth = level.iter().filter(|&&l| l != UNREACHED).max().copied().unwrap_or(0);
                st.layers_seen = st.layers_seen.max(depth);
                if depth > st.max_layers || route_via_connector(&st, g, a, b, &[]).is_err() {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            return Ok(st);
        }
    }
    Err(Error::ConnectorUnusable {
        attempts: params.connector_attempts,
    })
}
