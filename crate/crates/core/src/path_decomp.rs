//! Decompositions into paths and cycles with control over path endpoints.

use std::collections::HashMap;

use rand::seq::SliceRandom;

use crate::graph::{Graph, Vertex, WorkGraph};
use crate::long_cycle::RotatingPath;
use crate::piece::{excise_cycles, split_closed_walk, Piece, PieceKind};
use crate::rng::{derive_seed, rng};

/// Components with at most this many edges fall back to exhaustive search
/// when the heuristics miss the `⌊n/2⌋` target.
pub const EXACT_MAX_EDGES: usize = 24;
const EXACT_NODE_BUDGET: usize = 4_000_000;
const RESTART_SEED: u64 = 0x5eed_1075;

/// Paths, cycles and loose single edges, pairwise edge-disjoint.
#[derive(Clone, Debug, PartialEq)]
pub struct PathSystem {
    pub n: usize,
    /// Open paths; a one-edge path is stored with kind `SingleEdge`.
    pub paths: Vec<Piece>,
    pub cycles: Vec<Piece>,
    pub loose_edges: Vec<Piece>,
    /// Number of paths ending at each vertex.
    pub endpoint_multiplicity: Vec<usize>,
    /// `⌊n'/2⌋` for the source graph's `n'` non-isolated vertices.
    pub target: usize,
}

pub(crate) fn ceil_sqrt(x: usize) -> usize {
    let mut r = (x as f64).sqrt() as usize;
    while r * r < x {
        r += 1;
    }
    while r > 0 && (r - 1) * (r - 1) >= x {
        r -= 1;
    }
    r
}

fn multiplicity(n: usize, paths: &[Piece]) -> Vec<usize> {
    let mut mult = vec![0; n];
    for p in paths {
        mult[p.vertices[0]] += 1;
        mult[*p.vertices.last().expect("non-empty path")] += 1;
    }
    mult
}

impl PathSystem {
    pub fn new(n: usize, paths: Vec<Piece>, cycles: Vec<Piece>, loose_edges: Vec<Piece>) -> Self {
        let endpoint_multiplicity = multiplicity(n, &paths);
        PathSystem {
            n,
            paths,
            cycles,
            loose_edges,
            endpoint_multiplicity,
            target: 0,
        }
    }

    /// Number of paths.
    pub fn h(&self) -> usize {
        self.paths.len()
    }

    /// Paths plus cycles.
    pub fn piece_count(&self) -> usize {
        self.paths.len() + self.cycles.len()
    }

    /// `⌈√(2h)⌉`.
    pub fn endpoint_bound(&self) -> usize {
        ceil_sqrt(2 * self.h())
    }

    pub fn max_multiplicity(&self) -> usize {
        self.endpoint_multiplicity.iter().copied().max().unwrap_or(0)
    }

    pub fn all_pieces(&self) -> Vec<Piece> {
        let mut out = self.paths.clone();
        out.extend(self.cycles.iter().cloned());
        out.extend(self.loose_edges.iter().cloned());
        out
    }
}

fn remove_piece(work: &mut WorkGraph, p: &Piece) {
    for (u, v) in p.edges() {
        let ok = work.remove_edge(u, v);
        debug_assert!(ok);
    }
}

const ROTATION_BUDGET: usize = 64;

/// Repeatedly peels a path between two odd-degree vertices while any exist,
/// then a chord-closed cycle while edges remain. Paths are grown greedily and
/// lengthened by a bounded number of rotations of the free end.
fn peel_decompose(h: &Graph) -> Vec<Piece> {
    let n = h.n();
    let mut work = WorkGraph::from_graph(h);
    let mut rp = RotatingPath::new(n);
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    while work.m() > 0 {
        let odd = (0..n).find(|&v| work.degree(v) % 2 == 1);
        let start = odd.unwrap_or_else(|| (0..n).find(|&v| work.degree(v) > 0).expect("edges remain"));
        rp.clear();
        rp.push(start);
        rp.extend(&work, None);
        let mut visited = vec![rp.end()];
        seen[rp.end()] = true;
        let piece = if odd.is_some() {
            let is_odd = |v: Vertex| work.degree(v) % 2 == 1;
            for _ in 0..ROTATION_BUDGET {
                if is_odd(rp.end()) {
                    break;
                }
                let pivots = rp.pivots(&work);
                let pick = pivots
                    .iter()
                    .copied()
                    .find(|&i| is_odd(rp.path[i + 1]) && !seen[rp.path[i + 1]])
                    .or_else(|| pivots.iter().copied().find(|&i| !seen[rp.path[i + 1]]));
                let Some(i) = pick else { break };
                rp.rotate(i);
                rp.extend(&work, None);
                seen[rp.end()] = true;
                visited.push(rp.end());
            }
            let path = &rp.path;
            let cut = (1..path.len())
                .rev()
                .find(|&j| is_odd(path[j]))
                .unwrap_or(path.len() - 1);
            Piece::path(path[..=cut].to_vec())
        } else {
            Piece::cycle(rp.longest_closure(&work, None, &mut seen, &mut visited, ROTATION_BUDGET))
        };
        for v in visited {
            seen[v] = false;
        }
        remove_piece(&mut work, &piece);
        out.push(piece);
    }
    out
}

/// Euler circuit of `h` plus a virtual apex joined to every odd vertex,
/// cut at the apex into open trails; repeated vertices are excised as cycles.
fn euler_decompose(h: &Graph) -> Vec<Piece> {
    let n = h.n();
    let apex = n;
    let mut adj: Vec<Vec<(Vertex, usize)>> = vec![Vec::new(); n + 1];
    let mut id = 0;
    for &(u, v) in h.edges() {
        adj[u].push((v, id));
        adj[v].push((u, id));
        id += 1;
    }
    let odd: Vec<Vertex> = (0..n).filter(|&v| h.degree(v) % 2 == 1).collect();
    for &v in &odd {
        adj[v].push((apex, id));
        adj[apex].push((v, id));
        id += 1;
    }
    let mut used = vec![false; id];
    let mut cursor = vec![0usize; n + 1];
    let mut out = Vec::new();
    let mut done = vec![false; n + 1];
    let starts: Vec<Vertex> = if odd.is_empty() {
        (0..n).filter(|&v| h.degree(v) > 0).collect()
    } else {
        std::iter::once(apex).chain(0..n).collect()
    };
    for s in starts {
        if done[s] || cursor[s] == adj[s].len() {
            continue;
        }
        // Hierholzer
        let mut stack = vec![s];
        let mut circuit = Vec::new();
        while let Some(&v) = stack.last() {
            let mut advanced = false;
            while cursor[v] < adj[v].len() {
                let (w, e) = adj[v][cursor[v]];
                cursor[v] += 1;
                if !used[e] {
                    used[e] = true;
                    stack.push(w);
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                circuit.push(v);
                stack.pop();
            }
        }
        done[s] = true;
        circuit.pop(); // closed: last repeats first
        if circuit.contains(&apex) {
            let k = circuit.iter().position(|&v| v == apex).unwrap();
            circuit.rotate_left(k);
            for seg in circuit.split(|&v| v == apex).filter(|s| !s.is_empty()) {
                let (cycles, rest) = excise_cycles(seg, false);
                out.extend(cycles.into_iter().map(Piece::cycle));
                if rest.len() >= 2 {
                    out.push(Piece::path(rest));
                }
            }
        } else if circuit.len() >= 3 {
            out.extend(split_closed_walk(&circuit));
        }
    }
    out
}

fn is_simple(seq: &[Vertex], mark: &mut [bool]) -> bool {
    let mut ok = true;
    for &v in seq {
        if mark[v] {
            ok = false;
            break;
        }
        mark[v] = true;
    }
    for &v in seq {
        mark[v] = false;
    }
    ok
}

fn ends(p: &Piece) -> (Vertex, Vertex) {
    (p.vertices[0], *p.vertices.last().unwrap())
}

/// Joins two paths sharing an endpoint when the union is a simple path or,
/// when they share both endpoints, a simple cycle.
fn merge_paths(n: usize, pieces: Vec<Piece>) -> Vec<Piece> {
    let (mut paths, mut rest): (Vec<Piece>, Vec<Piece>) = pieces.into_iter().partition(|p| p.kind != PieceKind::Cycle);
    let mut mark = vec![false; n];
    'outer: loop {
        let mut at: HashMap<Vertex, Vec<usize>> = HashMap::new();
        for (i, p) in paths.iter().enumerate() {
            let (a, b) = ends(p);
            at.entry(a).or_default().push(i);
            at.entry(b).or_default().push(i);
        }
        let mut keys: Vec<Vertex> = at.keys().copied().collect();
        keys.sort_unstable();
        for v in keys {
            let list = &at[&v];
            for x in 0..list.len() {
                for y in x + 1..list.len() {
                    let (i, j) = (list[x], list[y]);
                    let mut first = paths[i].vertices.clone();
                    if first[first.len() - 1] != v {
                        first.reverse();
                    }
                    let mut second = paths[j].vertices.clone();
                    if second[0] != v {
                        second.reverse();
                    }
                    let closed = first[0] == second[second.len() - 1];
                    let mut joined = first;
                    joined.extend_from_slice(&second[1..]);
                    let merged = if closed {
                        joined.pop();
                        (joined.len() >= 3 && is_simple(&joined, &mut mark)).then(|| Piece::cycle(joined))
                    } else {
                        is_simple(&joined, &mut mark).then(|| Piece::path(joined))
                    };
                    if let Some(m) = merged {
                        let (hi, lo) = (i.max(j), i.min(j));
                        paths.swap_remove(hi);
                        paths.swap_remove(lo);
                        if m.is_cycle() {
                            rest.push(m);
                        } else {
                            paths.push(m);
                        }
                        continue 'outer;
                    }
                }
            }
        }
        break;
    }
    rest.extend(paths);
    rest
}

fn relabel(h: &Graph, perm: &[Vertex]) -> Graph {
    Graph::new(h.n(), h.edges().iter().map(|&(u, v)| (perm[u], perm[v]))).expect("relabeling preserves simplicity")
}

fn heuristic(h: &Graph, target: usize) -> Vec<Piece> {
    let attempts = match h.m() {
        0..=64 => 16,
        65..=4096 => 4,
        _ => 1,
    };
    let mut best: Option<Vec<Piece>> = None;
    for a in 0..attempts {
        let (g, inverse) = if a == 0 {
            (h.clone(), None)
        } else {
            let mut perm: Vec<Vertex> = (0..h.n()).collect();
            perm.shuffle(&mut rng(derive_seed(RESTART_SEED, a as u64)));
            let mut inv = vec![0; h.n()];
            for (i, &p) in perm.iter().enumerate() {
                inv[p] = i;
            }
            (relabel(h, &perm), Some(inv))
        };
        for method in [peel_decompose as fn(&Graph) -> Vec<Piece>, euler_decompose] {
            let mut pieces = merge_paths(g.n(), method(&g));
            if let Some(inv) = &inverse {
                pieces = pieces.into_iter().map(|p| p.map_vertices(|v| inv[v])).collect();
            }
            if best.as_ref().is_none_or(|b| pieces.len() < b.len()) {
                best = Some(pieces);
            }
        }
        if best.as_ref().unwrap().len() <= target {
            break;
        }
    }
    best.unwrap_or_default()
}

/// Exhaustive search for a decomposition of a small connected graph into at
/// most `limit` paths and cycles. `None` when no such decomposition exists
/// or the search budget runs out.
pub(crate) fn exact_small(h: &Graph, limit: usize) -> Option<Vec<Piece>> {
    let m = h.m();
    if m == 0 {
        return Some(Vec::new());
    }
    if m > 64 {
        return None;
    }
    let n = h.n();
    let index: HashMap<(Vertex, Vertex), usize> = h.edges().iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let eid = |u: Vertex, v: Vertex| index[&crate::graph::edge(u, v)];
    let mut found: HashMap<u64, Piece> = HashMap::new();
    let mut steps = 0usize;

    // every simple path and cycle, keyed by edge mask
    for s in 0..n {
        let mut stack: Vec<(Vec<Vertex>, u64)> = vec![(vec![s], 0)];
        while let Some((path, mask)) = stack.pop() {
            steps += 1;
            if steps > EXACT_NODE_BUDGET {
                return None;
            }
            let end = *path.last().unwrap();
            if path.len() >= 3 && h.has_edge(end, s) {
                let cm = mask | 1 << eid(end, s);
                found.entry(cm).or_insert_with(|| Piece::cycle(path.clone()));
            }
            if path.len() >= 2 {
                found.entry(mask).or_insert_with(|| Piece::path(path.clone()));
            }
            for &w in h.neighbors(end) {
                if !path.contains(&w) {
                    let mut next = path.clone();
                    next.push(w);
                    stack.push((next, mask | 1 << eid(end, w)));
                }
            }
        }
    }
    let mut groups: Vec<Vec<(u64, Piece)>> = vec![Vec::new(); m];
    for (mask, p) in found {
        groups[mask.trailing_zeros() as usize].push((mask, p));
    }
    for g in &mut groups {
        g.sort_by(|a, b| b.0.count_ones().cmp(&a.0.count_ones()).then(a.0.cmp(&b.0)));
    }
    let max_len = groups.iter().flatten().map(|(k, _)| k.count_ones()).max().unwrap_or(1) as usize;
    let incident: Vec<u64> = (0..n)
        .map(|v| h.neighbors(v).iter().fold(0u64, |acc, &w| acc | 1 << eid(v, w)))
        .collect();

    struct Search<'a> {
        groups: &'a [Vec<(u64, Piece)>],
        incident: &'a [u64],
        max_len: usize,
        nodes: usize,
        chosen: Vec<usize>,
        chosen_groups: Vec<usize>,
    }
    impl Search<'_> {
        fn run(&mut self, rem: u64, k: usize) -> Option<bool> {
            if rem == 0 {
                return Some(true);
            }
            self.nodes += 1;
            if self.nodes > EXACT_NODE_BUDGET {
                return None;
            }
            if k == 0 || rem.count_ones() as usize > k * self.max_len {
                return Some(false);
            }
            let odd = self
                .incident
                .iter()
                .filter(|&&inc| (rem & inc).count_ones() % 2 == 1)
                .count();
            if odd.div_ceil(2) > k {
                return Some(false);
            }
            let e = rem.trailing_zeros() as usize;
            for (idx, (mask, _)) in self.groups[e].iter().enumerate() {
                if mask & !rem == 0 {
                    self.chosen.push(idx);
                    self.chosen_groups.push(e);
                    if self.run(rem & !mask, k - 1)? {
                        return Some(true);
                    }
                    self.chosen.pop();
                    self.chosen_groups.pop();
                }
            }
            Some(false)
        }
    }

    let full = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    let mut search = Search {
        groups: &groups,
        incident: &incident,
        max_len,
        nodes: 0,
        chosen: Vec::new(),
        chosen_groups: Vec::new(),
    };
    let odd_all = incident.iter().filter(|&&inc| inc.count_ones() % 2 == 1).count();
    let lower = odd_all.div_ceil(2).max(1);
    for k in lower..=limit {
        if search.run(full, k)? {
            return Some(
                search
                    .chosen_groups
                    .iter()
                    .zip(&search.chosen)
                    .map(|(&g, &i)| groups[g][i].1.clone())
                    .collect(),
            );
        }
    }
    None
}

/// Edge-partitions `g` into paths and cycles, aiming for at most `⌊n/2⌋`
/// pieces over the `n` non-isolated vertices.
///
/// Each component is decomposed by two heuristics (greedy odd-to-odd path
/// peeling, and Euler trails with cycle excision), improved by merging paths
/// that share endpoints, and retried under seeded relabelings. Small
/// components that still miss their target are solved exhaustively.
pub fn lovasz_decompose(g: &Graph) -> PathSystem {
    let mut paths = Vec::new();
    let mut cycles = Vec::new();
    for comp in g.connected_components() {
        if comp.len() < 2 {
            continue;
        }
        let sub = g.induced_subgraph(&comp).expect("component vertices in range");
        let h = &sub.graph;
        let target = comp.len() / 2;
        let mut pieces = heuristic(h, target);
        if pieces.len() > target && h.m() <= EXACT_MAX_EDGES {
            if let Some(exact) = exact_small(h, target) {
                pieces = exact;
            }
        }
        for p in pieces {
            let lifted = p.map_vertices(|v| sub.to_parent[v]);
            if lifted.is_cycle() {
                cycles.push(lifted);
            } else {
                paths.push(lifted);
            }
        }
    }
    let mut ps = PathSystem::new(g.n(), paths, cycles, Vec::new());
    ps.target = g.non_isolated().len() / 2;
    ps
}

/// Trims path ends so that every vertex ends at most `⌈√(2h)⌉` paths.
///
/// Scans dangerous vertices (multiplicity above the bound) in ascending id.
/// For each, a path ending there whose neighbouring vertex has multiplicity
/// below the bound gives up its end edge, which becomes a loose edge.
pub fn sparse_ends(ps: &PathSystem) -> PathSystem {
    let h = ps.h();
    let mut out = ps.clone();
    if h == 0 {
        return out;
    }
    let r = ceil_sqrt(2 * h);
    let n = ps.n;
    let mut mult = multiplicity(n, &out.paths);
    let mut alive: Vec<Option<Vec<Vertex>>> = out.paths.iter().map(|p| Some(p.vertices.clone())).collect();
    let mut ends_at: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, p) in out.paths.iter().enumerate() {
        let (a, b) = ends(p);
        ends_at[a].push(i);
        ends_at[b].push(i);
    }
    for v in 0..n {
        while mult[v] > r {
            let choice = ends_at[v].iter().copied().find_map(|i| {
                let vs = alive[i].as_ref()?;
                let next = if vs[0] == v {
                    vs[1]
                } else if vs[vs.len() - 1] == v {
                    vs[vs.len() - 2]
                } else {
                    return None;
                };
                (mult[next] < r).then_some((i, next))
            });
            let Some((i, u)) = choice else {
                debug_assert!(false, "no movable path end at dangerous vertex {v}");
                break;
            };
            let vs = alive[i].as_mut().unwrap();
            if vs[0] == v {
                vs.remove(0);
            } else {
                vs.pop();
            }
            out.loose_edges.push(Piece::single(v, u));
            mult[v] -= 1;
            if vs.len() < 2 {
                // the path was the single edge (v, u)
                mult[u] -= 1;
                alive[i] = None;
            } else {
                mult[u] += 1;
                ends_at[u].push(i);
            }
        }
    }
    out.paths = alive.into_iter().flatten().map(Piece::path).collect();
    out.endpoint_multiplicity = multiplicity(n, &out.paths);
    out
}

/// [`lovasz_decompose`] followed by [`sparse_ends`].
pub fn decompose_with_sparse_ends(g: &Graph) -> PathSystem {
    sparse_ends(&lovasz_decompose(g))
}
