//! Choosing and running a pipeline by name.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cut_dense::{decompose_cut_dense, decompose_min_degree};
use crate::error::{Error, Result};
use crate::general::{decompose_general, PipelineParams};
use crate::graph::Graph;
use crate::piece::Decomposition;
use crate::random_graph::{decompose_random, decompose_sparse};

/// Minimum degree fraction from which `auto` picks the min-degree pipeline.
pub const AUTO_MIN_DEGREE: f64 = 0.2;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "strategy")]
pub enum Strategy {
    Auto,
    General,
    Sparse,
    /// `p` only picks the branch; `None` uses the edge density of the input.
    Random {
        p: Option<f64>,
    },
    CutDense {
        d: f64,
    },
    MinDegree {
        c: f64,
    },
}

impl Strategy {
    pub const NAMES: [&'static str; 6] = ["auto", "general", "sparse", "random", "cut-dense", "min-degree"];

    pub fn name(&self) -> &'static str {
        match self {
            Strategy::Auto => "auto",
            Strategy::General => "general",
            Strategy::Sparse => "sparse",
            Strategy::Random { .. } => "random",
            Strategy::CutDense { .. } => "cut-dense",
            Strategy::MinDegree { .. } => "min-degree",
        }
    }

    /// Builds a strategy from its name and `key = value` parameters: `p` for
    /// random (optional), `d` for cut-dense and `c` for min-degree.
    pub fn from_parts(name: &str, params: &[(String, f64)]) -> Result<Strategy> {
        let get = |k: &str| params.iter().rev().find(|(key, _)| key == k).map(|&(_, v)| v);
        let need =
            |k: &str| get(k).ok_or_else(|| Error::Precondition(format!("strategy {name} needs --param {k}=<value>")));
        Ok(match name {
            "auto" => Strategy::Auto,
            "general" => Strategy::General,
            "sparse" => Strategy::Sparse,
            "random" => Strategy::Random { p: get("p") },
            "cut-dense" => Strategy::CutDense { d: need("d")? },
            "min-degree" => Strategy::MinDegree { c: need("c")? },
            _ => return Err(Error::Precondition(format!("unknown strategy {name:?}"))),
        })
    }

    /// The concrete strategy `auto` stands for on `g`.
    pub fn resolve(&self, g: &Graph) -> Strategy {
        match *self {
            Strategy::Auto => {
                let n = g.n();
                let frac = if n == 0 { 0.0 } else { g.min_degree() as f64 / n as f64 };
                if g.m() > 0 && frac >= AUTO_MIN_DEGREE {
                    Strategy::MinDegree { c: frac }
                } else {
                    Strategy::General
                }
            }
            s => s,
        }
    }

    pub fn run(&self, g: &Graph, seed: u64) -> Result<Decomposition> {
        match self.resolve(g) {
            Strategy::Auto => unreachable!("resolved"),
            Strategy::General => Ok(decompose_general(g, &PipelineParams::default(), seed)),
            Strategy::Sparse => Ok(decompose_sparse(g)),
            Strategy::Random { p } => {
                let n = g.n() as f64;
                let p = p.unwrap_or(if n < 2.0 {
                    0.0
                } else {
                    g.m() as f64 / (n * (n - 1.0) / 2.0)
                });
                Ok(decompose_random(g, p, seed))
            }
            Strategy::CutDense { d } => decompose_cut_dense(g, d, seed),
            Strategy::MinDegree { c } => decompose_min_degree(g, c, seed),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    /// A bare name; parameters must come through [`Strategy::from_parts`].
    fn from_str(s: &str) -> Result<Strategy> {
        Strategy::from_parts(s, &[])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle};
    use crate::verify::verify_decomposition;

    #[test]
    fn auto_dispatch() {
        assert_eq!(Strategy::Auto.resolve(&cycle(20).unwrap()), Strategy::General);
        assert!(matches!(
            Strategy::Auto.resolve(&complete(10)),
            Strategy::MinDegree { .. }
        ));
        assert_eq!(Strategy::Auto.resolve(&Graph::empty(4)), Strategy::General);
    }

    #[test]
    fn required_params() {
        assert!(Strategy::from_parts("min-degree", &[]).is_err());
        assert!("cut-dense".parse::<Strategy>().is_err());
        let s = Strategy::from_parts("cut-dense", &[("d".into(), 0.3)]).unwrap();
        assert_eq!(s, Strategy::CutDense { d: 0.3 });
        assert!("bogus".parse::<Strategy>().is_err());
    }

    #[test]
    fn every_strategy_runs() {
        let g = complete(12);
        for s in [
            Strategy::Auto,
            Strategy::General,
            Strategy::Sparse,
            Strategy::Random { p: None },
            Strategy::CutDense { d: 0.5 },
            Strategy::MinDegree { c: 0.5 },
        ] {
            let d = s.run(&g, 1).unwrap();
            assert!(verify_decomposition(&g, &d).valid, "{s}");
        }
    }
}
