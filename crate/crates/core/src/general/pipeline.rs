//! Degree reduction by long-cycle stripping and dense packing, and the full
//! loop built on it.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::long_cycle::strip_long_cycles;
use crate::piece::{Decomposition, PartialDecomposition, Piece};
use crate::rng::derive_seed;
use crate::telemetry::{RunTrace, StageRecord};

use super::circumference::circumference_split;
use super::dense::decompose_dense_traced;
use super::params::PipelineParams;

#[derive(Clone, Debug)]
pub struct StepResult {
    pub cycles: Vec<Piece>,
    pub residual: Graph,
    pub trace: RunTrace,
}

/// One round of degree reduction.
///
/// Strips cycles of length at least `L = d / strip_divisor`, splits what is
/// left into parts of at most `L + 2` vertices, and packs each part with
/// [`decompose_dense`](super::decompose_dense). The residual holds every
/// edge no cycle took. Fails when `d` is below the floor or when no edge was
/// removed.
pub fn reduce_degree_step(g: &Graph, params: &PipelineParams, seed: u64) -> Result<StepResult> {
    let d = g.average_degree();
    if d < params.degree_floor {
        return Err(Error::Precondition(format!(
            "average degree {d:.3} below floor {}",
            params.degree_floor
        )));
    }
    let n = g.n();
    let l = params.strip_length(d);
    let mut trace = RunTrace::default();

    let strip = strip_long_cycles(g, l);
    let mut cycles = strip.cycles;
    let mut rec = StageRecord::new("strip", n, g.m());
    rec.cycles_emitted = cycles.len();
    trace.push(rec);

    let split = circumference_split(&strip.residual, l);
    let mut rec = StageRecord::new("circumference-split", n, strip.residual.m());
    rec.cycles_emitted = split.stripped.len();
    trace.push(rec.against(split.total_part_vertices() as f64, 3.0 * n as f64));
    cycles.extend(split.stripped);

    let mut packed = PartialDecomposition::new(n);
    for (i, part) in split.parts.iter().enumerate() {
        let pd = decompose_dense_traced(&part.graph, params, derive_seed(seed, i as u64), &mut trace);
        packed.absorb_mapped(pd, &part.to_parent);
    }
    cycles.extend(packed.pieces);
    let residual = Graph::new(n, packed.leftover).expect("leftover edges are distinct edges of g");
    if residual.m() >= g.m() {
        return Err(Error::Postcondition(format!(
            "degree step removed no edges (m = {})",
            g.m()
        )));
    }
    let mut rec = StageRecord::new("degree-step", n, g.m());
    rec.cycles_emitted = cycles.len();
    rec.leftover_edges = residual.m();
    trace.push(rec.against(residual.average_degree(), d.powf(0.9)));
    Ok(StepResult {
        cycles,
        residual,
        trace,
    })
}

/// Cycles and single edges for any graph.
///
/// Runs [`reduce_degree_step`] while the average degree stays at or above
/// the floor. What remains is stripped of every cycle the long-cycle search
/// still finds, and the rest is emitted as single edges.
pub fn decompose_general(g: &Graph, params: &PipelineParams, seed: u64) -> Decomposition {
    let mut trace = RunTrace::default();
    let mut pieces = Vec::new();
    let mut rem = g.clone();
    let mut round = 0u64;
    while rem.m() > 0 && rem.average_degree() >= params.degree_floor {
        match reduce_degree_step(&rem, params, derive_seed(seed, round)) {
            Ok(step) => {
                pieces.extend(step.cycles);
                rem = step.residual;
                trace.extend(step.trace);
                round += 1;
            }
            Err(_) => break,
        }
    }
    trace.rounds = round as usize;
    let tail = strip_long_cycles(&rem, 3);
    let mut rec = StageRecord::new("final", g.n(), rem.m());
    rec.cycles_emitted = tail.cycles.len();
    rec.leftover_edges = tail.residual.m();
    trace.push(rec);
    pieces.extend(tail.cycles);
    pieces.extend(tail.residual.edges().iter().map(|&(u, v)| Piece::single(u, v)));
    Decomposition::new(g, pieces).with_trace(trace)
}
