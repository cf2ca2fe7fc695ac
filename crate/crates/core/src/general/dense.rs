//! Cycle packings of expanders and of arbitrary dense graphs, leaving a
//! small set of edges uncovered.

use std::collections::HashSet;

use num_rational::Ratio;

use crate::error::Result;
use crate::expander::expansion_partition;
use crate::graph::{edge, Edge, Graph, Vertex};
use crate::path_decomp::{decompose_with_sparse_ends, lovasz_decompose};
use crate::piece::{PartialDecomposition, Piece};
use crate::rng::derive_seed;
use crate::telemetry::{RunTrace, StageRecord};

use super::connector::{route_via_connector, sample_connector};
use super::params::PipelineParams;

/// Cycles covering all but a few edges of an expander.
///
/// Sets a connector `U` aside together with every edge touching it,
/// decomposes the rest into paths and cycles with sparse ends, and closes
/// each path into a cycle through `U`. Uncovered: unused edges at `U`, the
/// loose edges of the path system, and paths whose route failed.
/// A graph whose path decomposition has no open paths is returned as cycles
/// without sampling a connector.
pub fn decompose_expander(g: &Graph, params: &PipelineParams, seed: u64) -> Result<PartialDecomposition> {
    decompose_expander_traced(g, params, seed, &mut RunTrace::default())
}

pub(crate) fn decompose_expander_traced(
    g: &Graph,
    params: &PipelineParams,
    seed: u64,
    trace: &mut RunTrace,
) -> Result<PartialDecomposition> {
    let n = g.n();
    let mut out = PartialDecomposition::new(n);
    if g.m() == 0 {
        return Ok(out);
    }
    let whole = lovasz_decompose(g);
    if whole.paths.is_empty() {
        out.pieces = whole.cycles;
        return Ok(out);
    }
    let mut st = sample_connector(g, params, seed)?;
    let touching: Vec<Edge> = g
        .edges()
        .iter()
        .copied()
        .filter(|&(a, b)| st.in_u[a] || st.in_u[b])
        .collect();
    let rest = g.remove_edges(&touching).expect("edges of g");
    let ps = decompose_with_sparse_ends(&rest);
    out.pieces.extend(ps.cycles.iter().cloned());
    out.leftover
        .extend(ps.loose_edges.iter().map(|p| edge(p.vertices[0], p.vertices[1])));
    let mut failures = 0;
    for p in &ps.paths {
        let x = p.vertices[0];
        let y = *p.vertices.last().expect("non-empty");
        let mut w: Vec<Vertex> = st.used_neighbors(g, x);
        w.extend(st.used_neighbors(g, y));
        match route_via_connector(&st, g, x, y, &w) {
            Ok(route) => {
                st.commit(&route);
                // route runs y .. x; its inner vertices close the path
                let mut cycle = p.vertices.clone();
                cycle.extend_from_slice(&route[1..route.len() - 1]);
                out.pieces.push(Piece::cycle(cycle));
            }
            Err(_) => {
                failures += 1;
                out.leftover.extend(p.edges());
            }
        }
    }
    out.leftover
        .extend(touching.iter().copied().filter(|e| !st.used_edges.contains(e)));
    let mut rec = StageRecord::new("expander", n, g.m());
    rec.cycles_emitted = out.cycle_count();
    rec.leftover_edges = out.leftover.len();
    trace.push(rec.against(out.leftover.len() as f64, params.expander_leftover_budget(n)));
    if failures > 0 {
        let mut rec = StageRecord::new("routing-failures", n, g.m());
        rec.leftover_edges = failures;
        trace.push(rec);
    }
    Ok(out)
}

/// Deletes sparse cuts until every component expands, then packs each
/// component with [`decompose_expander`]. A component whose connector cannot
/// be used is re-cut once with doubled expansion; if that still fails its
/// edges are left uncovered.
pub fn decompose_dense(g: &Graph, params: &PipelineParams, seed: u64) -> PartialDecomposition {
    decompose_dense_traced(g, params, seed, &mut RunTrace::default())
}

fn pack_components(
    g: &Graph,
    s: Ratio<usize>,
    params: &PipelineParams,
    seed: u64,
    retry: bool,
    out: &mut PartialDecomposition,
    trace: &mut RunTrace,
) {
    let report = expansion_partition(g, s);
    out.leftover.extend(report.deleted.iter().copied());
    let remaining = g.remove_edges(&report.deleted).expect("deleted edges present");
    let mut rec = StageRecord::new("expansion-partition", g.n(), g.m());
    rec.leftover_edges = report.deleted.len();
    trace.push(rec.against(report.deleted.len() as f64, report.deletion_budget));
    for (i, comp) in report.components.iter().enumerate() {
        if comp.len() < 2 {
            continue;
        }
        let sub = remaining.induced_subgraph(comp).expect("in range");
        if sub.graph.m() == 0 {
            continue;
        }
        let child_seed = derive_seed(seed, i as u64);
        match decompose_expander_traced(&sub.graph, params, child_seed, trace) {
            Ok(pd) => out.absorb_mapped(pd, &sub.to_parent),
            Err(_) if retry => {
                let mut inner = PartialDecomposition::new(sub.graph.n());
                let doubled = s * 2;
                pack_components(&sub.graph, doubled, params, child_seed, false, &mut inner, trace);
                out.absorb_mapped(inner, &sub.to_parent);
            }
            Err(_) => {
                out.leftover.extend(sub.graph.edges().iter().map(|&e| sub.lift_edge(e)));
                trace.push(StageRecord::new("connector-unusable", sub.graph.n(), sub.graph.m()));
            }
        }
    }
}

pub(crate) fn decompose_dense_traced(
    g: &Graph,
    params: &PipelineParams,
    seed: u64,
    trace: &mut RunTrace,
) -> PartialDecomposition {
    let n = g.n();
    let mut out = PartialDecomposition::new(n);
    if g.m() == 0 {
        return out;
    }
    let s = params.expansion_s(n);
    pack_components(g, s, params, seed, true, &mut out, trace);
    let mut rec = StageRecord::new("dense", n, g.m());
    rec.cycles_emitted = out.cycle_count();
    rec.leftover_edges = out.leftover.len();
    rec = rec.against(out.leftover.len() as f64, params.dense_leftover_budget(n));
    trace.push(rec);
    debug_assert!({
        let mut all: Vec<Edge> = out.pieces.iter().flat_map(Piece::edges).collect();
        all.extend(out.leftover.iter().copied());
        let set: HashSet<Edge> = all.iter().copied().collect();
        set.len() == all.len() && all.len() == g.m()
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::verify_partial;

    fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        Graph::new(n, e).unwrap()
    }

    #[test]
    fn triangle_is_one_cycle() {
        let g = complete(3);
        let pd = decompose_dense(&g, &PipelineParams::default(), 0);
        assert_eq!(pd.cycle_count(), 1);
        assert!(pd.leftover.is_empty());
    }

    #[test]
    fn cycle_needs_no_connector() {
        let g = Graph::new(20, (0..20).map(|i| (i, (i + 1) % 20))).unwrap();
        let pd = decompose_expander(&g, &PipelineParams::default(), 0).unwrap();
        assert_eq!(pd.cycle_count(), 1);
        assert!(pd.leftover.is_empty());
    }

    #[test]
    fn complete_graph_expander_is_valid() {
        let g = complete(64);
        let pd = decompose_expander(&g, &PipelineParams::default(), 3).unwrap();
        assert!(verify_partial(&g, &pd).valid);
        assert!(pd.cycle_count() >= 1);
    }

    #[test]
    fn bridge_ends_in_leftover() {
        let mut e = Vec::new();
        for b in [0, 5] {
            for u in 0..5 {
                for v in u + 1..5 {
                    e.push((b + u, b + v));
                }
            }
        }
        e.push((4, 5));
        let g = Graph::new(10, e).unwrap();
        let params = PipelineParams {
            expansion_coeff: 2.0,
            expansion_exponent: 0.0,
            ..PipelineParams::default()
        };
        let pd = decompose_dense(&g, &params, 0);
        assert!(verify_partial(&g, &pd).valid);
        assert!(pd.leftover.contains(&(4, 5)));
    }

    #[test]
    fn empty_graph() {
        let pd = decompose_expander(&Graph::empty(5), &PipelineParams::default(), 0).unwrap();
        assert!(pd.pieces.is_empty() && pd.leftover.is_empty());
    }
}
