//! Fixed graphs shared by the benchmarks.

use cyclepack_core::{Family, Graph};

/// Seed used for every fixture.
pub const SEED: u64 = 11;

pub struct Fixture {
    pub label: String,
    pub graph: Graph,
}

fn fixture(family: Family, n: usize) -> Fixture {
    Fixture {
        label: format!("{family}/n={n}"),
        graph: family.generate(n, SEED).expect("fixture parameters are valid"),
    }
}

/// Dense random graphs of growing size.
pub fn dense(sizes: &[usize]) -> Vec<Fixture> {
    sizes.iter().map(|&n| fixture(Family::Gnp { p: 0.5 }, n)).collect()
}

/// Sparse random graphs with average degree about 4.
pub fn sparse(sizes: &[usize]) -> Vec<Fixture> {
    sizes
        .iter()
        .map(|&n| fixture(Family::Gnp { p: 4.0 / n as f64 }, n))
        .collect()
}

/// Two dense blocks joined by a sparse middle.
pub fn min_degree(sizes: &[usize]) -> Vec<Fixture> {
    sizes
        .iter()
        .map(|&n| fixture(Family::MinDegree { c: 0.3 }, n))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_build() {
        assert_eq!(dense(&[32])[0].graph.n(), 32);
        assert!(sparse(&[64])[0].graph.m() > 0);
        assert!(min_degree(&[60])[0].graph.min_degree() >= 18);
    }
}
