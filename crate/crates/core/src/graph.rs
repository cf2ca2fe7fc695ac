//! Simple undirected graphs on dense vertex ids.
//!
//! [`Graph`] is an immutable value: every transformation returns a new graph.
//! [`WorkGraph`] is the mutable scratch copy used inside algorithms that
//! delete edges one at a time.

use std::collections::VecDeque;

use num_rational::Ratio;

use crate::error::{Error, Result};

pub type Vertex = usize;

/// An undirected edge, always stored with `0 < 1`.
pub type Edge = (Vertex, Vertex);

/// Normalizes an unordered pair.
#[inline]
pub fn edge(u: Vertex, v: Vertex) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<Vertex>>,
}

/// A relabeled subgraph together with the map back to the parent ids.
#[derive(Clone, Debug)]
pub struct Subgraph {
    pub graph: Graph,
    pub to_parent: Vec<Vertex>,
}

impl Subgraph {
    pub fn lift_edge(&self, (u, v): Edge) -> Edge {
        edge(self.to_parent[u], self.to_parent[v])
    }

    pub fn lift_vertices(&self, vs: &[Vertex]) -> Vec<Vertex> {
        vs.iter().map(|&v| self.to_parent[v]).collect()
    }
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicates and out-of-range ids.
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut list = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::UnknownVertex { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            list.push(edge(u, v));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0]));
        }
        Ok(Self::from_sorted_unique(n, list))
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted_unique(n, Vec::new())
    }

    fn from_sorted_unique(n: usize, edges: Vec<Edge>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges in ascending lexicographic order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// `2m / n`, zero for the empty vertex set.
    pub fn average_degree(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            2.0 * self.m() as f64 / self.n as f64
        }
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn non_isolated(&self) -> Vec<Vertex> {
        (0..self.n).filter(|&v| !self.adj[v].is_empty()).collect()
    }

    /// Stable 64-bit FNV-1a digest of `n` and the sorted edge list.
    pub fn fingerprint(&self) -> String {
        const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
        const PRIME: u64 = 0x0000_0100_0000_01b3;
        let mut h = OFFSET;
        let mut feed = |x: u64| {
            for b in x.to_le_bytes() {
                h ^= u64::from(b);
                h = h.wrapping_mul(PRIME);
            }
        };
        feed(self.n as u64);
        for &(u, v) in &self.edges {
            feed(u as u64);
            feed(v as u64);
        }
        format!("{h:016x}")
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::UnknownVertex { vertex: v, n: self.n })
        }
    }

    pub fn membership(&self, vertices: &[Vertex]) -> Result<Vec<bool>> {
        let mut mask = vec![false; self.n];
        for &v in vertices {
            self.check_vertex(v)?;
            mask[v] = true;
        }
        Ok(mask)
    }

    /// Induced subgraph on `vertices`, relabeled to `0..k` in the order given
    /// (after sorting and deduplication).
    pub fn induced_subgraph(&self, vertices: &[Vertex]) -> Result<Subgraph> {
        let mut to_parent = vertices.to_vec();
        to_parent.sort_unstable();
        to_parent.dedup();
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in to_parent.iter().enumerate() {
            self.check_vertex(v)?;
            local[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &v) in to_parent.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = local[w];
                if j != usize::MAX && i < j {
                    edges.push((i, j));
                }
            }
        }
        edges.sort_unstable();
        Ok(Subgraph {
            graph: Self::from_sorted_unique(to_parent.len(), edges),
            to_parent,
        })
    }

    /// Same vertex ids, keeping only edges with both ends in `vertices`.
    pub fn restricted(&self, vertices: &[Vertex]) -> Result<Graph> {
        let mask = self.membership(vertices)?;
        Ok(self.restricted_mask(&mask))
    }

    pub(crate) fn restricted_mask(&self, mask: &[bool]) -> Graph {
        let edges = self
            .edges
            .iter()
            .copied()
            .filter(|&(u, v)| mask[u] && mask[v])
            .collect();
        Self::from_sorted_unique(self.n, edges)
    }

    /// Returns a new graph without the given edges; every edge must exist.
    pub fn remove_edges(&self, removed: &[Edge]) -> Result<Graph> {
        let mut gone: Vec<Edge> = removed.iter().map(|&(u, v)| edge(u, v)).collect();
        gone.sort_unstable();
        gone.dedup();
        for &(u, v) in &gone {
            self.check_vertex(u)?;
            self.check_vertex(v)?;
            if !self.has_edge(u, v) {
                return Err(Error::MissingEdge((u, v)));
            }
        }
        let mut kept = Vec::with_capacity(self.m() - gone.len());
        let mut j = 0;
        for &e in &self.edges {
            if j < gone.len() && gone[j] == e {
                j += 1;
            } else {
                kept.push(e);
            }
        }
        Ok(Self::from_sorted_unique(self.n, kept))
    }

    /// Union with an edge-disjoint graph on the same vertex ids.
    pub fn union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n.max(other.n);
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Graph::new(n, edges)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    /// Isolated vertices are singleton components.
    pub fn connected_components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            queue.push_back(s);
            let mut comp = Vec::new();
            while let Some(v) = queue.pop_front() {
                comp.push(v);
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Whether the graph contains any cycle.
    pub fn has_cycle(&self) -> bool {
        let comps = self.connected_components().len();
        // a forest has exactly n - c edges
        self.m() + comps > self.n
    }

    /// `e(X, X^c)` for the set given by `mask`.
    pub fn cut_size(&self, mask: &[bool]) -> usize {
        self.edges.iter().filter(|&&(u, v)| mask[u] != mask[v]).count()
    }

    /// `e(X, Y)` for disjoint `X`, `Y` given by membership masks.
    pub fn cross_edges(&self, x: &[bool], y: &[bool]) -> usize {
        self.edges
            .iter()
            .filter(|&&(u, v)| (x[u] && y[v]) || (x[v] && y[u]))
            .count()
    }

    /// Vertices outside `set` with at least one neighbour inside.
    pub fn external_neighborhood(&self, set: &[Vertex]) -> Vec<Vertex> {
        let mut inside = vec![false; self.n];
        for &v in set {
            inside[v] = true;
        }
        let mut mark = vec![false; self.n];
        let mut out = Vec::new();
        for &v in set {
            for &w in &self.adj[v] {
                if !inside[w] && !mark[w] {
                    mark[w] = true;
                    out.push(w);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Number of edges inside `set`.
    pub fn induced_edge_count(&self, mask: &[bool]) -> usize {
        self.edges.iter().filter(|&&(u, v)| mask[u] && mask[v]).count()
    }
}

/// Maximal vertex set whose induced subgraph has minimum degree `>= delta`.
///
/// Peels any vertex whose remaining degree falls below the threshold; the
/// result is the unique fixed point and does not depend on peel order.
pub fn core_with_min_degree(g: &Graph, delta: Ratio<usize>) -> Vec<Vertex> {
    peel_to_min_degree(g, delta.ceil().to_integer())
}

pub(crate) fn peel_to_min_degree(g: &Graph, k: usize) -> Vec<Vertex> {
    let mut deg: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let mut alive = vec![true; g.n()];
    let mut stack: Vec<Vertex> = (0..g.n()).filter(|&v| deg[v] < k).collect();
    for &v in &stack {
        alive[v] = false;
    }
    while let Some(v) = stack.pop() {
        for &w in g.neighbors(v) {
            if alive[w] {
                deg[w] -= 1;
                if deg[w] < k {
                    alive[w] = false;
                    stack.push(w);
                }
            }
        }
    }
    (0..g.n()).filter(|&v| alive[v]).collect()
}

/// Mutable adjacency used while algorithms delete edges.
#[derive(Clone, Debug)]
pub(crate) struct WorkGraph {
    adj: Vec<Vec<Vertex>>,
    m: usize,
}

impl WorkGraph {
    pub fn from_graph(g: &Graph) -> Self {
        WorkGraph {
            adj: g.adj.clone(),
            m: g.m(),
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        match self.adj[u].binary_search(&v) {
            Ok(i) => {
                self.adj[u].remove(i);
                let j = self.adj[v].binary_search(&u).expect("symmetric adjacency");
                self.adj[v].remove(j);
                self.m -= 1;
                true
            }
            Err(_) => false,
        }
    }

    pub fn to_graph(&self) -> Graph {
        let mut edges = Vec::with_capacity(self.m);
        for (u, list) in self.adj.iter().enumerate() {
            edges.extend(list.iter().filter(|&&v| u < v).map(|&v| (u, v)));
        }
        Graph::from_sorted_unique(self.n(), edges)
    }
}
