//! Fixed corpus and pipeline list shared by the integration tests.
#![allow(dead_code)]

pub mod oracle;

use cyclepack_core::{Family, Graph, Strategy};

pub struct Instance {
    pub label: String,
    pub graph: Graph,
    pub seed: u64,
}

fn push(out: &mut Vec<Instance>, family: Family, n: usize, seed: u64) {
    let graph = family.generate(n, seed).expect("corpus parameters are valid");
    out.push(Instance {
        label: format!("{family} n={n} seed={seed}"),
        graph,
        seed,
    });
}

/// Every family, `n <= 2048`, fixed seeds.
pub fn corpus() -> Vec<Instance> {
    let mut out = Vec::new();
    for n in [10, 20, 40, 80, 160, 320] {
        for p in [0.05, 0.15, 0.3, 0.5, 0.8] {
            for seed in 0..8 {
                push(&mut out, Family::Gnp { p }, n, seed);
            }
        }
    }
    for n in [30, 60, 120, 250, 500, 1000] {
        for seed in 0..8 {
            push(&mut out, Family::Gnp { p: 1.5 / n as f64 }, n, seed);
            push(&mut out, Family::Gnp { p: 4.0 / n as f64 }, n, seed);
        }
    }
    for (n, p) in [(1024, 0.01), (1024, 0.05), (2048, 0.005), (2048, 0.02)] {
        push(&mut out, Family::Gnp { p }, n, 0);
    }
    for n in [3, 4, 5, 7, 10, 16, 25, 50, 100, 200, 500, 1000, 2048] {
        push(&mut out, Family::Cycle, n, 0);
    }
    for n in [3, 4, 5, 6, 7, 8, 10, 13, 16, 20, 25, 32, 40, 64, 100] {
        push(&mut out, Family::Complete, n, 0);
    }
    for k in [1, 2, 3, 5, 8, 13, 21, 34, 55, 100, 200, 400, 682] {
        push(&mut out, Family::DisjointTriangles, 3 * k, 0);
    }
    for n in [4, 6, 8, 10, 14, 20, 30, 40, 60, 80, 100, 150, 200] {
        push(&mut out, Family::TwoCliqueBridge, n, 0);
    }
    for n in [40, 80, 160, 320] {
        for (p_in, p_out) in [(0.5, 0.01), (0.3, 0.05), (0.8, 0.002)] {
            for seed in 0..5 {
                push(&mut out, Family::PlantedCut { p_in, p_out }, n, seed);
            }
        }
    }
    for n in [40, 80, 160, 320] {
        for c in [0.2, 0.3, 0.45] {
            for seed in 0..5 {
                push(&mut out, Family::MinDegree { c }, n, seed);
            }
        }
    }
    out
}

/// Strategies that apply to `g`: every pipeline, with min-degree only when
/// the minimum degree is at least `0.2 n`.
pub fn pipelines(g: &Graph) -> Vec<Strategy> {
    let mut out = vec![
        Strategy::General,
        Strategy::Sparse,
        Strategy::Random { p: None },
        Strategy::CutDense { d: 0.1 },
    ];
    let n = g.n();
    if n > 0 && g.m() > 0 && g.min_degree() as f64 >= 0.2 * n as f64 {
        out.push(Strategy::MinDegree {
            c: g.min_degree() as f64 / n as f64,
        });
    }
    out
}
