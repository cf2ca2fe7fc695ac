//! Scaling runs over sizes and seeds.

use anyhow::{bail, Context as _};

use cyclepack_core::{Family, Strategy};

use crate::stats::{timed, StatsRow};

pub const HEADER: &str =
    "family,params,n,seed,strategy,m,cycles,edges,pieces,pieces_per_n,rounds,violations,wall_ms,within_budget,rounds_ok";

#[derive(Debug)]
pub struct Plan {
    pub family: Family,
    pub sizes: Vec<usize>,
    pub seeds: Vec<u64>,
}

fn param_names(family: &str) -> &'static [&'static str] {
    match family {
        "gnp" => &["p"],
        "planted-cut" => &["p_in", "p_out"],
        "min-degree" => &["c"],
        _ => &[],
    }
}

fn parse_sizes(v: &str) -> anyhow::Result<Vec<usize>> {
    if let Some((a, b)) = v.split_once("..") {
        let (a, b): (usize, usize) = (a.parse()?, b.parse()?);
        if a == 0 || a > b {
            bail!("size range {v} must satisfy 0 < a <= b");
        }
        let mut out = Vec::new();
        let mut n = a;
        while n <= b {
            out.push(n);
            n *= 2;
        }
        Ok(out)
    } else {
        v.split(',').map(|t| Ok(t.trim().parse()?)).collect()
    }
}

impl Plan {
    pub fn parse(family: &str, tokens: &[String]) -> anyhow::Result<Plan> {
        let names = param_names(family);
        let mut params: Vec<Option<f64>> = vec![None; names.len()];
        let mut sizes = None;
        let mut seeds = vec![0];
        for t in tokens {
            let (k, v) = t
                .split_once('=')
                .with_context(|| format!("expected key=value, got {t:?}"))?;
            match k {
                "n" => sizes = Some(parse_sizes(v).with_context(|| format!("bad sizes {v:?}"))?),
                "seeds" => seeds = (0..v.parse::<u64>().with_context(|| format!("bad seed count {v:?}"))?).collect(),
                _ => match names.iter().position(|&x| x == k) {
                    Some(i) => params[i] = Some(v.parse().with_context(|| format!("bad value for {k}"))?),
                    None => bail!("unknown key {k:?} for family {family}"),
                },
            }
        }
        let params = params
            .iter()
            .zip(names)
            .map(|(p, name)| p.with_context(|| format!("family {family} needs {name}=<value>")))
            .collect::<anyhow::Result<Vec<f64>>>()?;
        Ok(Plan {
            family: Family::parse(family, &params)?,
            sizes: sizes.context("missing n=<sizes>")?,
            seeds,
        })
    }
}

/// `ceil(k log2 log2 n) + 1`, at least 1.
pub fn rounds_bound(n: usize, k: f64) -> usize {
    let ll = (n.max(4) as f64).log2().log2();
    (k * ll).ceil().max(0.0) as usize + 1
}

pub fn run(
    plan: &Plan,
    strategy: Strategy,
    budget: f64,
    rounds_coeff: f64,
    no_timing: bool,
) -> anyhow::Result<Vec<String>> {
    let params = plan
        .family
        .params()
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(" ");
    let mut rows = Vec::new();
    for &n in &plan.sizes {
        for &seed in &plan.seeds {
            let g = plan.family.generate(n, seed)?;
            let (d, ms) = timed(|| strategy.run(&g, seed));
            let d = d.with_context(|| format!("n = {n}, seed = {seed}"))?;
            let row = StatsRow::of(
                &g,
                strategy.resolve(&g).name(),
                &d,
                if no_timing { 0 } else { ms },
                seed,
            );
            let ok_budget = row.pieces_per_n() <= budget;
            let ok_rounds = d.trace.rounds <= rounds_bound(n, rounds_coeff);
            rows.push(format!(
                "{},{},{},{},{},{},{},{},{},{:.6},{},{},{},{},{}",
                plan.family.name(),
                params,
                n,
                seed,
                row.strategy,
                row.m,
                row.cycles,
                row.edges,
                row.pieces,
                row.pieces_per_n(),
                d.trace.rounds,
                d.trace.violations(),
                row.wall_ms,
                ok_budget,
                ok_rounds
            ));
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn doubling_sizes() {
        assert_eq!(parse_sizes("64..1024").unwrap(), vec![64, 128, 256, 512, 1024]);
        assert_eq!(parse_sizes("10,30").unwrap(), vec![10, 30]);
        assert!(parse_sizes("9..3").is_err());
    }

    #[test]
    fn plan_needs_family_params() {
        let toks = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        let p = Plan::parse("gnp", &toks(&["n=64..1024", "p=0.5", "seeds=3"])).unwrap();
        assert_eq!(p.sizes.len() * p.seeds.len(), 15);
        assert!(Plan::parse("gnp", &toks(&["n=64"])).is_err());
        assert!(Plan::parse("cycle", &toks(&["n=64", "p=0.1"])).is_err());
    }

    #[test]
    fn rounds_bound_grows_slowly() {
        assert_eq!(rounds_bound(16, 1.0), 3);
        assert_eq!(rounds_bound(1024, 1.0), 5);
    }
}
