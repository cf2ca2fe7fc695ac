//! Graphs with linear minimum degree: cut-dense partition, bipartite
//! decomposition between parts, and closure inside each part.

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex};
use crate::path_decomp::{lovasz_decompose, PathSystem};
use crate::piece::{Decomposition, Piece};
use crate::random_graph::sparse_pieces;
use crate::rng::derive_seed;
use crate::telemetry::{RunTrace, StageRecord};

use super::checks::sampled_cut_dense_check;
use super::helper::{close_paths, decompose_cut_dense, routed_edges, routing_record};
use super::params::{ell_for, MinDegreeParams};
use super::paths::{connect_pairs, internal_cap};

/// Random cuts tried per part when looking for a sparse cut.
const PARTITION_TRIALS: usize = 16;

/// Slack for comparing the lemma's real-valued bounds.
const TOL: f64 = 1e-9;

fn min_induced_degree(g: &Graph, mask: &[bool]) -> usize {
    (0..g.n())
        .filter(|&v| mask[v])
        .map(|v| g.neighbors(v).iter().filter(|&&w| mask[w]).count())
        .min()
        .unwrap_or(0)
}

fn mask_of(n: usize, set: &[Vertex]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &v in set {
        m[v] = true;
    }
    m
}

/// Moves the vertices with few neighbours on their own side across a sparse
/// cut `(v1, v2)`.
///
/// `X_i` holds the vertices of `V_i` with fewer than `c|V_i|` neighbours in
/// `V_i`, and `U_i = (V_i - X_i) + X_(3-i)`. The result is checked: `e(U1, U2)
/// <= dn^2`, `G[U_i]` has minimum degree at least `(c - 5d/c)|U_i|`, and the
/// average degree in `U_i` drops by at most `4dn/c`.
pub fn refine_cut(g: &Graph, v1: &[Vertex], v2: &[Vertex], c: f64, d: f64) -> Result<(Vec<Vertex>, Vec<Vertex>)> {
    let n = g.n();
    let in1 = g.membership(v1)?;
    let in2 = g.membership(v2)?;
    if v1.is_empty() || v2.is_empty() || v1.len() + v2.len() != n || (0..n).any(|v| in1[v] == in2[v]) {
        return Err(Error::Precondition("sides must partition the vertex set".into()));
    }
    let nf = n as f64;
    if (g.min_degree() as f64) < c * nf - TOL {
        return Err(Error::Precondition(format!("minimum degree below {c} n")));
    }
    if d > c / 2.0 {
        return Err(Error::Precondition(format!("cut density {d} above c/2")));
    }
    if g.cut_size(&in1) as f64 > d * (v1.len() * v2.len()) as f64 + TOL {
        return Err(Error::Precondition(format!("cut density above {d}")));
    }
    let low = |side: &[Vertex], mask: &[bool]| -> Vec<Vertex> {
        let bound = c * side.len() as f64;
        side.iter()
            .copied()
            .filter(|&v| (g.neighbors(v).iter().filter(|&&w| mask[w]).count() as f64) < bound)
            .collect()
    };
    let x1 = low(v1, &in1);
    let x2 = low(v2, &in2);
    let mut u_in1 = in1.clone();
    for &v in &x1 {
        u_in1[v] = false;
    }
    for &v in &x2 {
        u_in1[v] = true;
    }
    let u1: Vec<Vertex> = (0..n).filter(|&v| u_in1[v]).collect();
    let u2: Vec<Vertex> = (0..n).filter(|&v| !u_in1[v]).collect();
    if u1.is_empty() || u2.is_empty() {
        return Err(Error::Postcondition("refinement emptied a side".into()));
    }
    let cross = g.cut_size(&u_in1) as f64;
    if cross > d * nf * nf + TOL {
        return Err(Error::Postcondition(format!("e(U1, U2) = {cross} above dn^2")));
    }
    let u_in2: Vec<bool> = u_in1.iter().map(|b| !b).collect();
    for (u, mask) in [(&u1, &u_in1), (&u2, &u_in2)] {
        let k = u.len() as f64;
        if (min_induced_degree(g, mask) as f64) < (c - 5.0 * d / c) * k - TOL {
            return Err(Error::Postcondition(
                "induced minimum degree below (c - 5d/c)|U|".into(),
            ));
        }
        // each crossing edge costs one end in U one unit of degree
        if cross / k > 4.0 * d * nf / c + TOL {
            return Err(Error::Postcondition("average degree loss above 4dn/c".into()));
        }
    }
    Ok((u1, u2))
}

/// Splits `g` into parts of order more than `cn/2` whose induced subgraphs
/// have minimum degree at least `(c/2)|V_i|` and pass the sampled `d`
/// cut-density check.
///
/// Each round takes a part with a sparse cut and replaces it by the two sides
/// of [`refine_cut`], using the part's own minimum-degree fraction. Cuts are
/// searched with a fixed seed per part and round.
pub fn partition_cut_dense(g: &Graph, c: f64, d: f64) -> Result<Vec<Vec<Vertex>>> {
    let n = g.n();
    let nf = n as f64;
    if (g.min_degree() as f64) < c * nf - TOL {
        return Err(Error::Precondition(format!("minimum degree below {c} n")));
    }
    if d > c.powi(3) / 80.0 + TOL {
        return Err(Error::Precondition(format!("cut density {d} above c^3/80")));
    }
    let limit = (2.0 / c).floor() as usize + 1;
    let mut parts: Vec<Vec<Vertex>> = vec![(0..n).collect()];
    let mut settled = vec![false];
    let mut rounds = 0;
    while let Some(i) = (0..parts.len()).find(|&i| !settled[i]) {
        let sub = g.induced_subgraph(&parts[i])?;
        let report = sampled_cut_dense_check(&sub.graph, d, PARTITION_TRIALS, derive_seed(rounds as u64, i as u64));
        let Some(witness) = report.witness.filter(|_| !report.passed) else {
            settled[i] = true;
            continue;
        };
        rounds += 1;
        if rounds > limit {
            return Err(Error::NonTermination { rounds });
        }
        let k = sub.graph.n();
        let inside = mask_of(k, &witness);
        let other: Vec<Vertex> = (0..k).filter(|&v| !inside[v]).collect();
        let ch = sub.graph.min_degree() as f64 / k as f64;
        let (u1, u2) = refine_cut(&sub.graph, &witness, &other, ch, d)?;
        parts[i] = sub.lift_vertices(&u1);
        parts.push(sub.lift_vertices(&u2));
        settled.push(false);
    }
    for p in &parts {
        let k = p.len() as f64;
        if k <= c * nf / 2.0 {
            return Err(Error::Postcondition(format!("part of {} vertices", p.len())));
        }
        let mask = mask_of(n, p);
        if (min_induced_degree(g, &mask) as f64) < c / 2.0 * k - TOL {
            return Err(Error::Postcondition("part with minimum degree below (c/2)|V_i|".into()));
        }
    }
    Ok(parts)
}

/// Cycles, paths with both ends in `a`, and single edges covering the
/// bipartite graph `h`.
///
/// Paths of the decomposition have their end edges trimmed into `a`; paths
/// of at most `4(s - 1)` edges become single edges; each remaining end moves
/// to the least loaded of the last `s` vertices of `a` on that end. The
/// output is checked: no vertex ends more than `n/s` paths and there are at
/// most `2sn` single edges.
pub fn bipartite_decompose(h: &Graph, a: &[Vertex], s: usize) -> Result<PathSystem> {
    let n = h.n();
    if s == 0 {
        return Err(Error::Precondition("s must be positive".into()));
    }
    let in_a = h.membership(a)?;
    if let Some(&e) = h.edges().iter().find(|&&(u, v)| in_a[u] == in_a[v]) {
        return Err(Error::NotBipartite(e));
    }
    let base = lovasz_decompose(h);
    let mut cycles = base.cycles;
    let mut singles: Vec<Piece> = base.loose_edges;
    let mut long: Vec<Vec<Vertex>> = Vec::new();
    for p in base.paths {
        let mut vs = p.vertices;
        if !in_a[vs[0]] {
            singles.push(Piece::single(vs[0], vs[1]));
            vs.remove(0);
        }
        if vs.len() >= 2 && !in_a[vs[vs.len() - 1]] {
            let k = vs.len();
            singles.push(Piece::single(vs[k - 2], vs[k - 1]));
            vs.pop();
        }
        if vs.len() < 2 {
            continue;
        }
        if vs.len() - 1 <= 4 * (s - 1) {
            singles.extend(vs.windows(2).map(|w| Piece::single(w[0], w[1])));
        } else {
            long.push(vs);
        }
    }
    let mut load = vec![0usize; n];
    let mut paths = Vec::with_capacity(long.len());
    for vs in long {
        let k = vs.len();
        let pick = |load: &[usize], at: &dyn Fn(usize) -> Vertex| {
            (0..s).map(|j| 2 * j).min_by_key(|&i| (load[at(i)], i)).expect("s >= 1")
        };
        let i0 = pick(&load, &|i| vs[i]);
        load[vs[i0]] += 1;
        let i1 = pick(&load, &|i| vs[k - 1 - i]);
        load[vs[k - 1 - i1]] += 1;
        singles.extend(vs[..=i0].windows(2).map(|w| Piece::single(w[0], w[1])));
        singles.extend(vs[k - 1 - i1..].windows(2).map(|w| Piece::single(w[0], w[1])));
        paths.push(Piece::path(vs[i0..k - i1].to_vec()));
    }
    cycles.retain(|c| !c.vertices.is_empty());
    let ps = PathSystem::new(n, paths, cycles, singles);
    if ps.max_multiplicity() * s > n {
        return Err(Error::Postcondition(format!(
            "a vertex ends {} paths",
            ps.max_multiplicity()
        )));
    }
    if ps.loose_edges.len() > 2 * s * n {
        return Err(Error::Postcondition(format!("{} single edges", ps.loose_edges.len())));
    }
    Ok(ps)
}

/// Cycles and single edges for a graph of minimum degree at least `cn`.
///
/// Partitions into cut-dense parts (a single part if that fails). For each
/// part `V_i` in order, the edges to later parts are decomposed by
/// [`bipartite_decompose`] with ends in `V_i`, the paths are closed inside
/// `G[V_i]` by [`connect_pairs`], and what is left of `G[V_i]` goes to
/// [`decompose_cut_dense`] with density `d/4`. Single edges from every stage
/// are pooled and passed through the ladder once more at the end.
pub fn decompose_min_degree(g: &Graph, c: f64, seed: u64) -> Result<Decomposition> {
    let params = MinDegreeParams::new(c)?;
    let n = g.n();
    if (g.min_degree() as f64) < c * n as f64 - TOL {
        return Err(Error::Precondition(format!(
            "minimum degree {} below {c} n",
            g.min_degree()
        )));
    }
    let mut trace = RunTrace::default();
    if g.m() == 0 {
        return Ok(Decomposition::empty(g));
    }
    let d = params.d;
    let parts = match partition_cut_dense(g, c, d) {
        Ok(p) => p,
        Err(_) => {
            let mut rec = StageRecord::new("partition-fallback", n, g.m());
            rec.violated = true;
            trace.push(rec);
            vec![(0..n).collect()]
        }
    };
    let mut part_of = vec![0usize; n];
    for (i, p) in parts.iter().enumerate() {
        for &v in p {
            part_of[v] = i;
        }
    }
    let ell = ell_for(2.0 / d);
    let mut pieces: Vec<Piece> = Vec::new();
    let mut pool: Vec<Edge> = Vec::new();
    for (i, part) in parts.iter().enumerate() {
        let cross: Vec<Edge> = g
            .edges()
            .iter()
            .copied()
            .filter(|&(u, v)| {
                let (a, b) = (part_of[u], part_of[v]);
                (a == i && b > i) || (b == i && a > i)
            })
            .collect();
        let bip = Graph::new(n, cross.iter().copied())?;
        let ps = match bipartite_decompose(&bip, part, params.s) {
            Ok(ps) => ps,
            Err(_) => {
                let mut rec = StageRecord::new("bipartite-fallback", n, bip.m());
                rec.violated = true;
                trace.push(rec);
                pool.extend(cross);
                PathSystem::new(n, Vec::new(), Vec::new(), Vec::new())
            }
        };
        pieces.extend(ps.cycles.iter().cloned());
        pool.extend(ps.loose_edges.iter().flat_map(Piece::edges));

        let sub = g.induced_subgraph(part)?;
        let mut local = vec![usize::MAX; n];
        for (j, &v) in sub.to_parent.iter().enumerate() {
            local[v] = j;
        }
        let pairs: Vec<(Vertex, Vertex)> = ps
            .paths
            .iter()
            .map(|p| (local[p.vertices[0]], local[*p.vertices.last().expect("non-empty")]))
            .collect();
        let r = ps.max_multiplicity().max(1);
        let cap = internal_cap(pairs.len(), ell).max(1);
        let routing = connect_pairs(&sub.graph, &pairs, r, ell, cap)?;
        trace.push(routing_record("connect-pairs", &sub.graph, &routing, &pairs));
        pieces.extend(close_paths(&ps.paths, &routing, |x| sub.to_parent[x], &mut pool));

        let rest = sub.graph.remove_edges(&routed_edges(&routing))?;
        let inner = decompose_cut_dense(&rest, d / 4.0, derive_seed(seed, i as u64))?;
        trace.extend(inner.trace);
        for p in inner.pieces {
            let p = p.map_vertices(|x| sub.to_parent[x]);
            if p.is_cycle() {
                pieces.push(p);
            } else {
                pool.extend(p.edges());
            }
        }
    }
    let (tail, tail_trace) = sparse_pieces(&Graph::new(n, pool)?);
    pieces.extend(tail);
    trace.extend(tail_trace);
    trace.rounds = parts.len();
    let mut rec = StageRecord::new("min-degree", n, g.m());
    rec.cycles_emitted = pieces.iter().filter(|p| p.is_cycle()).count();
    rec.leftover_edges = pieces.len() - rec.cycles_emitted;
    trace.push(rec.against(pieces.len() as f64, params.piece_budget(n)));
    Ok(Decomposition::new(g, pieces).with_trace(trace))
}
