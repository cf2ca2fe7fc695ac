//! Decomposition with a sparse random helper subgraph that closes paths.

use crate::error::{Error, Result};
use crate::general::{decompose_general, PipelineParams};
use crate::graph::{edge, Edge, Graph, Vertex};
use crate::path_decomp::decompose_with_sparse_ends;
use crate::piece::{split_closed_walk, Decomposition, Piece};
use crate::random_graph::sparse_pieces;
use crate::rng::derive_seed;
use crate::telemetry::{RunTrace, StageRecord};

use super::checks::{gqlem_checks, random_subgraph, sampled_cut_dense_check};
use super::params::CutDenseParams;
use super::paths::{connect_pairs, internal_cap, PairRouting};

/// Closes `path` (from `u` to `v`) with a connector running from `u` to `v`.
pub(crate) fn close_with(path: &[Vertex], connector: &[Vertex]) -> Vec<Piece> {
    let mut walk = path.to_vec();
    walk.extend(connector[1..connector.len() - 1].iter().rev());
    split_closed_walk(&walk)
}

/// Pieces of `paths` closed by `routing`. Edges of paths it could not join
/// go to `unclosed`.
pub(crate) fn close_paths(
    paths: &[Piece],
    routing: &PairRouting,
    lift: impl Fn(Vertex) -> Vertex,
    unclosed: &mut Vec<Edge>,
) -> Vec<Piece> {
    let mut out = Vec::new();
    for (p, conn) in paths.iter().zip(&routing.paths) {
        match conn {
            Some(c) => {
                let c: Vec<Vertex> = c.iter().map(|&x| lift(x)).collect();
                out.extend(close_with(&p.vertices, &c));
            }
            None => unclosed.extend(p.edges()),
        }
    }
    out
}

/// Edges used by the routed paths, lifted.
pub(crate) fn routed_edges(routing: &PairRouting) -> Vec<Edge> {
    routing
        .paths
        .iter()
        .flatten()
        .flat_map(|p| p.windows(2).map(|w| edge(w[0], w[1])))
        .collect()
}

pub(crate) fn routing_record(stage: &str, g: &Graph, routing: &PairRouting, pairs: &[(Vertex, Vertex)]) -> StageRecord {
    let mut rec = StageRecord::new(stage, g.n(), g.m());
    rec.cycles_emitted = routing.paths.len() - routing.failures().len();
    rec.leftover_edges = routing.failures().len();
    rec.violated = !routing.verify(g, pairs);
    rec
}

/// Paths with sparse ends for `g - helper`, each closed through `helper`
/// by [`connect_pairs`]. What is left of the helper, together with loose
/// edges and unclosed paths, goes through the ladder.
pub fn decompose_via_helper(g: &Graph, helper: &Graph, params: &CutDenseParams) -> Result<Decomposition> {
    if helper.n() != g.n() {
        return Err(Error::Precondition("helper has a different vertex count".into()));
    }
    if let Some(&(u, v)) = helper.edges().iter().find(|&&(u, v)| !g.has_edge(u, v)) {
        return Err(Error::MissingEdge((u, v)));
    }
    let n = g.n();
    let rest = g.remove_edges(helper.edges())?;
    let ps = decompose_with_sparse_ends(&rest);
    let pairs: Vec<(Vertex, Vertex)> = ps
        .paths
        .iter()
        .map(|p| (p.vertices[0], *p.vertices.last().expect("non-empty")))
        .collect();
    let r = ps.max_multiplicity().max(1);
    let cap = internal_cap(pairs.len(), params.ell).max(1);
    let routing = connect_pairs(helper, &pairs, r, params.ell, cap)?;
    let mut trace = RunTrace::default();
    trace.push(routing_record("helper-routing", helper, &routing, &pairs));

    let mut pool: Vec<Edge> = ps.loose_edges.iter().flat_map(Piece::edges).collect();
    let mut pieces = ps.cycles.clone();
    pieces.extend(close_paths(&ps.paths, &routing, |x| x, &mut pool));
    let residual = helper
        .remove_edges(&routed_edges(&routing))?
        .union(&Graph::new(n, pool)?)?;
    let (rest_pieces, rest_trace) = sparse_pieces(&residual);
    pieces.extend(rest_pieces);
    trace.extend(rest_trace);
    let mut rec = StageRecord::new("helper", n, g.m());
    rec.cycles_emitted = pieces.iter().filter(|p| p.is_cycle()).count();
    rec.leftover_edges = pieces.len() - rec.cycles_emitted;
    trace.push(rec.against(pieces.len() as f64, params.piece_budget(n)));
    Ok(Decomposition::new(g, pieces).with_trace(trace))
}

/// Cycles and single edges for a `d`-cut-dense graph.
///
/// Draws a helper subsample with `q = n^(-1/4)`, resampling until it passes
/// [`gqlem_checks`], and runs [`decompose_via_helper`]. When `g` fails the
/// sampled cut-density check, or no helper passes, the general pipeline is
/// used instead; the trace records which.
pub fn decompose_cut_dense(g: &Graph, d: f64, seed: u64) -> Result<Decomposition> {
    let params = CutDenseParams::for_graph(g.n(), d)?;
    if g.m() == 0 {
        return Ok(Decomposition::empty(g));
    }
    let mut trace = RunTrace::default();
    let check = sampled_cut_dense_check(g, d, params.trials, seed);
    if check.passed {
        for attempt in 0..params.helper_attempts {
            let s = derive_seed(seed, attempt as u64);
            let helper = random_subgraph(g, params.q, s)?;
            let checks = gqlem_checks(&helper, &params, s)?;
            if checks.passed() {
                let out = decompose_via_helper(g, &helper, &params)?;
                trace.extend(out.trace.clone());
                trace.rounds = attempt + 1;
                return Ok(out.with_trace(trace));
            }
            let mut rec = StageRecord::new("helper-rejected", g.n(), helper.m());
            rec.violated = true;
            trace.push(rec);
        }
    } else {
        trace.push(StageRecord::new("not-cut-dense", g.n(), g.m()));
    }
    let out = decompose_general(g, &PipelineParams::default(), seed);
    trace.push(StageRecord::new("fallback-general", g.n(), g.m()));
    trace.extend(out.trace.clone());
    Ok(out.with_trace(trace))
}
