//! Short edge-disjoint paths: maximal collections between two sets, and
//! capped connections of prescribed pairs.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{edge, Edge, Graph, Vertex, WorkGraph};

const NONE: usize = usize::MAX;

/// Greedy maximal family of edge-disjoint `S`-`T` paths of length at most
/// `ell`: a shortest path is found by breadth-first search, its edges are
/// deleted, and the search repeats until it fails.
pub fn short_path_collection(g: &Graph, s: &[Vertex], t: &[Vertex], ell: usize) -> Result<Vec<Vec<Vertex>>> {
    let in_s = g.membership(s)?;
    let in_t = g.membership(t)?;
    if let Some(v) = (0..g.n()).find(|&v| in_s[v] && in_t[v]) {
        return Err(Error::Precondition(format!("vertex {v} lies in both sets")));
    }
    let mut work = WorkGraph::from_graph(g);
    let mut out = Vec::new();
    while let Some(path) = set_to_set_path(&work, &in_s, &in_t, ell) {
        for w in path.windows(2) {
            work.remove_edge(w[0], w[1]);
        }
        out.push(path);
    }
    Ok(out)
}

/// Shortest path from `S` to `T` with at most `ell` edges.
fn set_to_set_path(work: &WorkGraph, in_s: &[bool], in_t: &[bool], ell: usize) -> Option<Vec<Vertex>> {
    let n = work.n();
    let mut dist = vec![NONE; n];
    let mut prev = vec![NONE; n];
    let mut queue = VecDeque::new();
    for v in 0..n {
        if in_s[v] {
            dist[v] = 0;
            queue.push_back(v);
        }
    }
    while let Some(v) = queue.pop_front() {
        if dist[v] >= ell {
            continue;
        }
        for &w in work.neighbors(v) {
            if dist[w] != NONE {
                continue;
            }
            dist[w] = dist[v] + 1;
            prev[w] = v;
            if in_t[w] {
                let mut path = vec![w];
                let mut c = w;
                while prev[c] != NONE {
                    c = prev[c];
                    path.push(c);
                }
                path.reverse();
                return Some(path);
            }
            queue.push_back(w);
        }
    }
    None
}

/// Result of [`connect_pairs`]: one slot per requested pair.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairRouting {
    /// Path from `u_i` to `v_i`, or `None` when the pair could not be joined.
    pub paths: Vec<Option<Vec<Vertex>>>,
    /// Times each vertex is internal to a returned path.
    pub internal_use: Vec<usize>,
    /// Cap on `internal_use`.
    pub cap: usize,
    pub ell: usize,
}

impl PairRouting {
    pub fn failures(&self) -> Vec<usize> {
        (0..self.paths.len()).filter(|&i| self.paths[i].is_none()).collect()
    }

    pub fn errors(&self) -> Vec<Error> {
        self.failures().into_iter().map(Error::PairUnconnectable).collect()
    }

    /// Re-checks edge-disjointness, the length bound `ell + 2`, the
    /// internal-use cap, and that every path is a simple path of `g` joining
    /// its pair.
    pub fn verify(&self, g: &Graph, pairs: &[(Vertex, Vertex)]) -> bool {
        let mut seen: HashSet<Edge> = HashSet::new();
        let mut count = vec![0usize; g.n()];
        for (p, &(u, v)) in self.paths.iter().zip(pairs) {
            let Some(p) = p else { continue };
            if p.len() < 3 || p.len() > self.ell + 3 || p[0] != u || p[p.len() - 1] != v {
                return false;
            }
            let distinct: HashSet<Vertex> = p.iter().copied().collect();
            if distinct.len() != p.len() {
                return false;
            }
            for w in p.windows(2) {
                if !g.has_edge(w[0], w[1]) || !seen.insert(edge(w[0], w[1])) {
                    return false;
                }
            }
            for &x in &p[1..p.len() - 1] {
                count[x] += 1;
            }
        }
        count == self.internal_use && count.iter().all(|&c| c <= self.cap)
    }
}

/// `ceil(sqrt(t ell) / 2)`.
pub fn internal_cap(t: usize, ell: usize) -> usize {
    (((t * ell) as f64).sqrt() / 2.0).ceil() as usize
}

/// Joins each pair `(u_i, v_i)` by a path `u_i, w, ..., x, v_i` with a
/// middle section of at most `ell` edges, in order.
///
/// Paths are pairwise edge-disjoint and have at least one internal vertex;
/// no vertex is internal to more than `cap` of them. A pair that cannot be
/// joined gets `None`. Fails when a vertex occurs in more than `r` pairs.
pub fn connect_pairs(g: &Graph, pairs: &[(Vertex, Vertex)], r: usize, ell: usize, cap: usize) -> Result<PairRouting> {
    let n = g.n();
    let mut occ = vec![0usize; n];
    for &(u, v) in pairs {
        for x in [u, v] {
            if x >= n {
                return Err(Error::UnknownVertex { vertex: x, n });
            }
            occ[x] += 1;
            if occ[x] > r {
                return Err(Error::Precondition(format!("vertex {x} occurs in more than {r} pairs")));
            }
        }
    }
    let mut used: HashSet<Edge> = HashSet::new();
    let mut out = PairRouting {
        paths: Vec::with_capacity(pairs.len()),
        internal_use: vec![0; n],
        cap,
        ell,
    };
    let mut dist = vec![NONE; n];
    let mut prev = vec![NONE; n];
    let mut touched: Vec<Vertex> = Vec::new();
    for &(u, v) in pairs {
        let found = if u == v {
            None
        } else {
            route_pair(
                g,
                u,
                v,
                ell,
                &used,
                &out.internal_use,
                cap,
                &mut dist,
                &mut prev,
                &mut touched,
            )
        };
        for &x in &touched {
            dist[x] = NONE;
            prev[x] = NONE;
        }
        touched.clear();
        if let Some(p) = &found {
            for w in p.windows(2) {
                used.insert(edge(w[0], w[1]));
            }
            for &x in &p[1..p.len() - 1] {
                out.internal_use[x] += 1;
            }
        }
        out.paths.push(found);
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn route_pair(
    g: &Graph,
    u: Vertex,
    v: Vertex,
    ell: usize,
    used: &HashSet<Edge>,
    internal: &[usize],
    cap: usize,
    dist: &mut [usize],
    prev: &mut [usize],
    touched: &mut Vec<Vertex>,
) -> Option<Vec<Vertex>> {
    let free = |x: Vertex| x != u && x != v && internal[x] < cap;
    let mut queue = VecDeque::new();
    for &w in g.neighbors(u) {
        if free(w) && !used.contains(&edge(u, w)) {
            dist[w] = 0;
            touched.push(w);
            queue.push_back(w);
        }
    }
    while let Some(x) = queue.pop_front() {
        if g.has_edge(x, v) && !used.contains(&edge(x, v)) {
            let mut path = vec![v, x];
            let mut c = x;
            while prev[c] != NONE {
                c = prev[c];
                path.push(c);
            }
            path.push(u);
            path.reverse();
            return Some(path);
        }
        if dist[x] >= ell {
            continue;
        }
        for &y in g.neighbors(x) {
            if dist[y] == NONE && free(y) && !used.contains(&edge(x, y)) {
                dist[y] = dist[x] + 1;
                prev[y] = x;
                touched.push(y);
                queue.push_back(y);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random_graph::gnp;

    #[test]
    fn k6_direct_edges_first() {
        let g = gnp(6, 1.0, 0).unwrap();
        let paths = short_path_collection(&g, &[0, 1], &[2, 3], 2).unwrap();
        assert!(paths.len() >= 4);
        assert_eq!(paths.iter().filter(|p| p.len() == 2).count(), 4);
        let mut seen = HashSet::new();
        for p in &paths {
            assert!(p.len() <= 3);
            for w in p.windows(2) {
                assert!(seen.insert(edge(w[0], w[1])));
            }
        }
    }

    #[test]
    fn separated_sets_have_no_paths() {
        let g = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert!(short_path_collection(&g, &[0], &[3], 5).unwrap().is_empty());
        assert!(short_path_collection(&g, &[0], &[0], 5).is_err());
    }

    #[test]
    fn path_endpoints_give_one_path() {
        let g = Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let paths = short_path_collection(&g, &[0], &[4], 4).unwrap();
        assert_eq!(paths, vec![vec![0, 1, 2, 3, 4]]);
        assert!(short_path_collection(&g, &[0], &[4], 3).unwrap().is_empty());
    }

    #[test]
    fn k20_two_pairs() {
        let g = gnp(20, 1.0, 0).unwrap();
        let pairs = [(0, 1), (2, 3)];
        let r = connect_pairs(&g, &pairs, 1, 2, 2).unwrap();
        assert!(r.failures().is_empty());
        assert!(r.verify(&g, &pairs));
        assert!(r.paths.iter().flatten().all(|p| p.len() <= 5));
    }

    #[test]
    fn no_pairs() {
        let g = gnp(5, 1.0, 0).unwrap();
        let r = connect_pairs(&g, &[], 1, 4, 1).unwrap();
        assert!(r.paths.is_empty());
    }

    #[test]
    fn matching_cannot_connect() {
        let g = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        let r = connect_pairs(&g, &[(0, 2)], 1, 4, 1).unwrap();
        assert_eq!(r.failures(), vec![0]);
        assert_eq!(r.errors(), vec![Error::PairUnconnectable(0)]);
    }

    #[test]
    fn multiplicity_precondition() {
        let g = gnp(5, 1.0, 0).unwrap();
        assert!(connect_pairs(&g, &[(0, 1), (0, 2)], 1, 4, 1).is_err());
    }

    #[test]
    fn cap_limits_internal_use() {
        let g = gnp(12, 1.0, 0).unwrap();
        let pairs: Vec<_> = (0..5).map(|i| (2 * i, 2 * i + 1)).collect();
        let r = connect_pairs(&g, &pairs, 1, 4, 1).unwrap();
        assert!(r.verify(&g, &pairs));
        assert!(r.internal_use.iter().all(|&c| c <= 1));
    }
}
