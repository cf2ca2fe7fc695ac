//! Seeded graph families for tests, benchmarks and the command line.

use std::fmt;
use std::str::FromStr;

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::random_graph::gnp;
use crate::rng::rng;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "family")]
pub enum Family {
    Gnp {
        p: f64,
    },
    Cycle,
    Complete,
    /// `n/3` vertex-disjoint triangles.
    DisjointTriangles,
    /// Two cliques on `n/2` vertices joined by one edge.
    TwoCliqueBridge,
    /// Two halves, edges inside with `p_in` and across with `p_out`.
    PlantedCut {
        p_in: f64,
        p_out: f64,
    },
    /// Minimum degree at least `cn`: two dense blocks, a sparse middle,
    /// and random edges added at deficient vertices.
    MinDegree {
        c: f64,
    },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Gnp { .. } => "gnp",
            Family::Cycle => "cycle",
            Family::Complete => "complete",
            Family::DisjointTriangles => "disjoint-triangles",
            Family::TwoCliqueBridge => "two-clique-bridge",
            Family::PlantedCut { .. } => "planted-cut",
            Family::MinDegree { .. } => "min-degree",
        }
    }

    /// Family parameters, in the order [`Family::parse`] takes them.
    pub fn params(&self) -> Vec<f64> {
        match *self {
            Family::Gnp { p } => vec![p],
            Family::PlantedCut { p_in, p_out } => vec![p_in, p_out],
            Family::MinDegree { c } => vec![c],
            _ => Vec::new(),
        }
    }

    /// Builds a family from its name and positional parameters.
    pub fn parse(name: &str, params: &[f64]) -> Result<Family> {
        let want = |k: usize| {
            if params.len() == k {
                Ok(())
            } else {
                Err(Error::Precondition(format!(
                    "family {name} takes {k} parameter(s), got {}",
                    params.len()
                )))
            }
        };
        let f = match name {
            "gnp" => {
                want(1)?;
                Family::Gnp { p: params[0] }
            }
            "cycle" => Family::Cycle,
            "complete" => Family::Complete,
            "disjoint-triangles" => Family::DisjointTriangles,
            "two-clique-bridge" => Family::TwoCliqueBridge,
            "planted-cut" => {
                want(2)?;
                Family::PlantedCut {
                    p_in: params[0],
                    p_out: params[1],
                }
            }
            "min-degree" => {
                want(1)?;
                Family::MinDegree { c: params[0] }
            }
            _ => return Err(Error::Precondition(format!("unknown family {name:?}"))),
        };
        if !matches!(
            f,
            Family::Gnp { .. } | Family::PlantedCut { .. } | Family::MinDegree { .. }
        ) {
            want(0)?;
        }
        Ok(f)
    }

    pub fn generate(&self, n: usize, seed: u64) -> Result<Graph> {
        match *self {
            Family::Gnp { p } => gnp(n, p, seed),
            Family::Cycle => cycle(n),
            Family::Complete => Ok(complete(n)),
            Family::DisjointTriangles => disjoint_triangles(n),
            Family::TwoCliqueBridge => two_clique_bridge(n),
            Family::PlantedCut { p_in, p_out } => planted_cut(n, p_in, p_out, seed),
            Family::MinDegree { c } => min_degree_synthetic(n, c, seed),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())?;
        for p in self.params() {
            write!(f, " {p}")?;
        }
        Ok(())
    }
}

impl FromStr for Family {
    type Err = Error;

    /// `name p1 p2 ...`, separated by spaces or colons.
    fn from_str(s: &str) -> Result<Family> {
        let mut it = s
            .split(|c: char| c == ':' || c.is_whitespace())
            .filter(|t| !t.is_empty());
        let name = it.next().ok_or_else(|| Error::Precondition("empty family".into()))?;
        let params = it
            .map(|t| {
                t.parse::<f64>()
                    .map_err(|_| Error::Precondition(format!("bad parameter {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Family::parse(name, &params)
    }
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::Precondition(format!("a cycle needs 3 vertices, got {n}")));
    }
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn complete(n: usize) -> Graph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::new(n, edges).expect("simple")
}

pub fn disjoint_triangles(n: usize) -> Result<Graph> {
    if !n.is_multiple_of(3) {
        return Err(Error::Precondition(format!("{n} is not a multiple of 3")));
    }
    Graph::new(
        n,
        (0..n / 3).flat_map(|t| {
            let b = 3 * t;
            [(b, b + 1), (b + 1, b + 2), (b, b + 2)]
        }),
    )
}

pub fn two_clique_bridge(n: usize) -> Result<Graph> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(Error::Precondition(format!(
            "two-clique-bridge needs even n >= 4, got {n}"
        )));
    }
    let k = n / 2;
    let mut edges: Vec<Edge> = Vec::new();
    for b in [0, k] {
        edges.extend((0..k).flat_map(|u| (u + 1..k).map(move |v| (b + u, b + v))));
    }
    edges.push((0, k));
    Graph::new(n, edges)
}

fn check_prob(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::Precondition(format!("probability {p} outside [0, 1]")))
    }
}

pub fn planted_cut(n: usize, p_in: f64, p_out: f64, seed: u64) -> Result<Graph> {
    check_prob(p_in)?;
    check_prob(p_out)?;
    let half = n / 2;
    let mut r = rng(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let p = if (u < half) == (v < half) { p_in } else { p_out };
            if r.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges)
}

/// Blocks of `n/2` with inside density `min(1, 2c + 0.15)` and crossing
/// density 0.05; then each vertex of degree below `cn` gets random new
/// neighbours until it reaches `ceil(cn)`.
pub fn min_degree_synthetic(n: usize, c: f64, seed: u64) -> Result<Graph> {
    if !(c > 0.0 && c < 1.0) || ((c * n as f64).ceil() as usize) >= n.max(1) {
        return Err(Error::Precondition(format!(
            "degree fraction {c} not achievable on {n} vertices"
        )));
    }
    let p_in = (2.0 * c + 0.15).min(1.0);
    let base = planted_cut(n, p_in, 0.05, seed)?;
    let mut adj: Vec<Vec<bool>> = vec![vec![false; n]; n];
    let mut deg = vec![0usize; n];
    for &(u, v) in base.edges() {
        adj[u][v] = true;
        adj[v][u] = true;
        deg[u] += 1;
        deg[v] += 1;
    }
    let need = (c * n as f64).ceil() as usize;
    let mut r = rng(seed ^ 0x6d69_6e64);
    for u in 0..n {
        while deg[u] < need {
            let v = r.gen_range(0..n);
            if v != u && !adj[u][v] {
                adj[u][v] = true;
                adj[v][u] = true;
                deg[u] += 1;
                deg[v] += 1;
            }
        }
    }
    let edges = (0..n).flat_map(|u| {
        let row = &adj[u];
        (u + 1..n).filter(move |&v| row[v]).map(move |v| (u, v))
    });
    Graph::new(n, edges)
}
