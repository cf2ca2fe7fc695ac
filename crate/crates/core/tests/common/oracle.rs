//! Independent reference computations for small graphs.

use std::collections::HashSet;

use cyclepack_core::{Graph, Vertex};

/// Bit index of the pair `i < j` among the pairs of `0..n`.
fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// Adjacency rows of a graph given as a pair bitmask.
fn rows(n: usize, code: u32) -> Vec<u32> {
    let mut adj = vec![0u32; n];
    for i in 0..n {
        for j in i + 1..n {
            if code >> pair_index(n, i, j) & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
    }
    adj
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn rec(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(k + 1, p, out);
            p.swap(k, i);
        }
    }
    rec(0, &mut p, &mut out);
    out
}

/// Smallest pair code over relabelings that list vertices by non-decreasing
/// degree. Degree order is preserved by isomorphism, so this is canonical.
fn canonical(n: usize, adj: &[u32], perms: &[Vec<usize>]) -> u32 {
    let deg: Vec<u32> = adj.iter().map(|r| r.count_ones()).collect();
    let mut best = u32::MAX;
    for p in perms {
        // p[k] is the old vertex placed at position k
        if (1..n).any(|k| deg[p[k - 1]] > deg[p[k]]) {
            continue;
        }
        let mut code = 0u32;
        for i in 0..n {
            for j in i + 1..n {
                if adj[p[i]] >> p[j] & 1 == 1 {
                    code |= 1 << pair_index(n, i, j);
                }
            }
        }
        best = best.min(code);
    }
    best
}

/// One representative per isomorphism class of graphs on `n` vertices,
/// built by adding a vertex to every class on `n - 1` vertices.
pub fn graph_classes(n: usize) -> Vec<Graph> {
    let mut classes: Vec<Vec<u32>> = vec![vec![0]];
    for k in 1..=n {
        if k == 1 {
            classes.push(vec![0]);
            continue;
        }
        let perms = permutations(k);
        let mut seen: HashSet<u32> = HashSet::new();
        for &code in &classes[k - 1] {
            let base = rows(k - 1, code);
            for nb in 0u32..1 << (k - 1) {
                let mut adj: Vec<u32> = base.clone();
                adj.push(nb);
                for (v, row) in adj.iter_mut().enumerate().take(k - 1) {
                    if nb >> v & 1 == 1 {
                        *row |= 1 << (k - 1);
                    }
                }
                seen.insert(canonical(k, &adj, &perms));
            }
        }
        let mut list: Vec<u32> = seen.into_iter().collect();
        list.sort_unstable();
        classes.push(list);
    }
    classes[n]
        .iter()
        .map(|&code| {
            let adj = rows(n, code);
            let adj = &adj;
            let edges = (0..n).flat_map(|i| (i + 1..n).filter(move |&j| adj[i] >> j & 1 == 1).map(move |j| (i, j)));
            Graph::new(n, edges).unwrap()
        })
        .collect()
}

pub fn is_connected(g: &Graph) -> bool {
    if g.n() == 0 {
        return true;
    }
    let mut seen = vec![false; g.n()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// Minimum number of paths and cycles partitioning the edges, by iterative
/// deepening over pieces through the lowest uncovered edge.
pub fn min_path_cycle_decomposition(g: &Graph) -> usize {
    let edges = g.edges().to_vec();
    let m = edges.len();
    assert!(m <= 32);
    let n = g.n();
    let mut id = vec![vec![usize::MAX; n]; n];
    for (i, &(u, v)) in edges.iter().enumerate() {
        id[u][v] = i;
        id[v][u] = i;
    }
    let full: u64 = if m == 0 { 0 } else { (1u64 << m) - 1 };
    let ctx = Ctx { n, edges, id };
    let mut k = 0;
    loop {
        let mut failed = HashSet::new();
        if ctx.can(full, k, &mut failed) {
            return k;
        }
        k += 1;
    }
}

struct Ctx {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    id: Vec<Vec<usize>>,
}

impl Ctx {
    fn odd_vertices(&self, mask: u64) -> usize {
        let mut deg = vec![0usize; self.n];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                deg[u] += 1;
                deg[v] += 1;
            }
        }
        deg.iter().filter(|&&d| d % 2 == 1).count()
    }

    fn can(&self, mask: u64, k: usize, failed: &mut HashSet<(u64, usize)>) -> bool {
        if mask == 0 {
            return true;
        }
        if k == 0 || mask.count_ones() as usize > k * self.n || self.odd_vertices(mask).div_ceil(2) > k {
            return false;
        }
        if failed.contains(&(mask, k)) {
            return false;
        }
        let e = mask.trailing_zeros() as usize;
        let mut pieces = Vec::new();
        self.pieces_through(mask, e, &mut pieces);
        for p in pieces {
            if self.can(mask & !p, k - 1, failed) {
                return true;
            }
        }
        failed.insert((mask, k));
        false
    }

    /// Edge masks of every simple path and cycle within `mask` using edge `e`.
    fn pieces_through(&self, mask: u64, e: usize, out: &mut Vec<u64>) {
        let (a, b) = self.edges[e];
        let rest = mask & !(1 << e);
        // arms from a avoiding b
        let mut left = Vec::new();
        self.arms(rest, a, 1 << a | 1 << b, 0, &mut left);
        for &(lv, le, _) in &left {
            let mut right = Vec::new();
            self.arms(rest & !le, b, lv | 1 << b, 0, &mut right);
            for &(_, re, _) in &right {
                out.push(1 << e | le | re);
            }
        }
        // cycles: paths from b back to a of at least two edges
        let mut back = Vec::new();
        self.arms(rest, b, 1 << b, 0, &mut back);
        for &(_, be, end) in &back {
            if end == a && be.count_ones() >= 2 {
                out.push(1 << e | be);
            }
        }
        out.sort_unstable();
        out.dedup();
    }

    /// Every simple path from `v` into unvisited vertices, the empty one
    /// included, as (visited vertex mask, edge mask, end vertex).
    fn arms(&self, mask: u64, v: Vertex, visited: u64, used: u64, out: &mut Vec<(u64, u64, Vertex)>) {
        out.push((visited, used, v));
        for w in 0..self.n {
            let i = self.id[v][w];
            if i == usize::MAX || mask >> i & 1 == 0 || used >> i & 1 == 1 {
                continue;
            }
            if visited >> w & 1 == 1 {
                continue;
            }
            self.arms(mask, w, visited | 1 << w, used | 1 << i, out);
        }
    }
}
