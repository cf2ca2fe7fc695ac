//! Constants of the cut-dense and minimum-degree pipelines.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Longest connector path searched for, whatever the density suggests.
pub const MAX_ELL: usize = 64;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CutDenseParams {
    /// Cut density `d`.
    pub d: f64,
    /// Helper subsample probability.
    pub q: f64,
    /// Thinness scale.
    pub rho: f64,
    /// Path length bound, even and at least 4.
    pub ell: usize,
    /// Sparsity exponent and constant checked on the helper.
    pub epsilon: f64,
    pub gamma: f64,
    /// Helper resamples before giving up.
    pub helper_attempts: usize,
    /// Random sets per sampled check.
    pub trials: usize,
    /// Coefficient of `n` the ladder is charged in the piece budget.
    pub b: f64,
}

impl CutDenseParams {
    /// `q = n^(-1/4)`, `rho = dq/8`, `ell = 2 ceil(8/d)` clamped to `[4, MAX_ELL]`.
    ///
    /// `rho n` is raised to at least `ceil(4/sqrt q)`: below that a pair of
    /// sets holds too few potential edges for the `2q` density to be typical.
    pub fn for_graph(n: usize, d: f64) -> Result<Self> {
        if !(d > 0.0 && d <= 1.0) {
            return Err(Error::Precondition(format!("cut density {d} outside (0, 1]")));
        }
        let q = (n.max(1) as f64).powf(-0.25).min(1.0);
        Ok(CutDenseParams {
            d,
            q,
            rho: (d * q / 8.0).max(min_thin_set(q) / n.max(1) as f64),
            ell: ell_for(8.0 / d),
            epsilon: 0.25,
            gamma: 8.0,
            helper_attempts: 5,
            trials: 16,
            b: 6.0,
        })
    }

    /// `(2 + ell/2 + b) n`.
    pub fn piece_budget(&self, n: usize) -> f64 {
        (2.0 + self.ell as f64 / 2.0 + self.b) * n as f64
    }
}

pub(crate) fn min_thin_set(q: f64) -> f64 {
    (4.0 / q.sqrt()).ceil()
}

/// `2 ceil(x)`, clamped to `[4, MAX_ELL]`.
pub(crate) fn ell_for(x: f64) -> usize {
    let half = if x.is_finite() {
        x.ceil().max(2.0).min(MAX_ELL as f64 / 2.0)
    } else {
        MAX_ELL as f64 / 2.0
    };
    2 * half as usize
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinDegreeParams {
    /// Minimum degree fraction `c`.
    pub c: f64,
    /// Cut density of the parts, `c^3 / 80`.
    pub d: f64,
    /// Path trimming scale of the bipartite step.
    pub s: usize,
}

impl MinDegreeParams {
    /// `d = c^3/80` and the calibrated `s = ceil(4/c)`.
    pub fn new(c: f64) -> Result<Self> {
        if !(c > 0.0 && c <= 1.0) {
            return Err(Error::Precondition(format!("degree fraction {c} outside (0, 1]")));
        }
        Ok(MinDegreeParams {
            c,
            d: c.powi(3) / 80.0,
            s: (4.0 / c).ceil() as usize,
        })
    }

    /// The asymptotic choice `2^40 c^-11`, kept for reference.
    pub fn asymptotic_s(&self) -> f64 {
        2f64.powi(40) * self.c.powi(-11)
    }

    /// `c^-12 n`.
    pub fn piece_budget(&self, n: usize) -> f64 {
        self.c.powi(-12) * n as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ell_is_even_and_clamped() {
        assert_eq!(ell_for(1.0), 4);
        assert_eq!(ell_for(8.0 / 0.5), 32);
        assert_eq!(ell_for(1e9), MAX_ELL);
        let p = CutDenseParams::for_graph(256, 1.0).unwrap();
        assert_eq!(p.q, 0.25);
        assert_eq!(p.ell, 16);
        assert!(CutDenseParams::for_graph(10, 0.0).is_err());
    }

    #[test]
    fn min_degree_constants() {
        let p = MinDegreeParams::new(0.5).unwrap();
        assert_eq!(p.s, 8);
        assert!((p.d - 0.125 / 80.0).abs() < 1e-15);
        assert!(MinDegreeParams::new(1.5).is_err());
    }
}
