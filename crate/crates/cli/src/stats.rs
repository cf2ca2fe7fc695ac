//! CSV stats rows.

use std::time::Instant;

use cyclepack_core::{Decomposition, Graph};

pub fn timed<T>(f: impl FnOnce() -> T) -> (T, u128) {
    let t = Instant::now();
    let out = f();
    (out, t.elapsed().as_millis())
}

pub struct StatsRow {
    pub n: usize,
    pub m: usize,
    pub strategy: String,
    pub cycles: usize,
    pub edges: usize,
    pub pieces: usize,
    pub wall_ms: u128,
    pub seed: u64,
}

impl StatsRow {
    pub const HEADER: &'static str = "n,m,strategy,cycles,edges,pieces,pieces_per_n,wall_ms,seed";

    pub fn of(g: &Graph, strategy: &str, d: &Decomposition, wall_ms: u128, seed: u64) -> Self {
        let st = d.stats();
        StatsRow {
            n: g.n(),
            m: g.m(),
            strategy: strategy.to_string(),
            cycles: st.cycle_count,
            edges: st.single_edge_count,
            pieces: st.total_pieces,
            wall_ms,
            seed,
        }
    }

    pub fn pieces_per_n(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            self.pieces as f64 / self.n as f64
        }
    }

    pub fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{:.6},{},{}",
            self.n,
            self.m,
            self.strategy,
            self.cycles,
            self.edges,
            self.pieces,
            self.pieces_per_n(),
            self.wall_ms,
            self.seed
        )
    }
}
