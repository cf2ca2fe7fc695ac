use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context as _};
use clap::{Args, Parser, Subcommand};

use cyclepack_core::{parse_edge_list, verify_pieces, write_edge_list, DecompositionDoc, Family, Graph, Strategy};

mod bench;
mod stats;

use stats::StatsRow;

const STATS_HELP: &str = "\
Stats CSV columns (decompose --stats):
  n,m,strategy,cycles,edges,pieces,pieces_per_n,wall_ms,seed
Bench CSV columns:
  family,params,n,seed,strategy,m,cycles,edges,pieces,pieces_per_n,rounds,violations,wall_ms,within_budget,rounds_ok
Numbers use '.' as decimal separator; pieces_per_n has six decimals.
Exit codes: 0 ok, 1 verification failure, 2 usage, input or run error.";

#[derive(Parser, Debug)]
#[command(name = "cyclepack", version, about = "Decompose graphs into cycles and single edges", after_help = STATS_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a generated graph as an edge list.
    Gen {
        /// gnp, cycle, complete, disjoint-triangles, two-clique-bridge, planted-cut, min-degree
        family: String,
        n: usize,
        /// Family parameters: p for gnp, p_in p_out for planted-cut, c for min-degree.
        params: Vec<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decompose an edge-list graph and write the pieces as JSON.
    Decompose {
        input: PathBuf,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write a CSV header and one stats row here.
        #[arg(long)]
        stats: Option<PathBuf>,
        /// Write per-stage telemetry here, one JSON object per line.
        #[arg(long)]
        telemetry: Option<PathBuf>,
    },
    /// Check that a decomposition partitions the edges of a graph.
    Verify { graph: PathBuf, decomposition: PathBuf },
    /// Run a family over sizes and seeds and write one CSV row per run.
    ///
    /// Tokens are key=value: n=64..1024 (doubling) or n=100,200; seeds=3
    /// (seeds 0, 1, 2); and the family parameters by name (p, p_in, p_out, c).
    Bench {
        family: String,
        spec: Vec<String>,
        #[command(flatten)]
        run: RunArgs,
        /// Flag rows whose pieces per vertex exceed this.
        #[arg(long, default_value_t = 4.0)]
        budget: f64,
        /// Flag rows with more than ceil(k log2 log2 n) + 1 rounds.
        #[arg(long, default_value_t = 1.0)]
        rounds_coeff: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct RunArgs {
    /// auto, general, sparse, random, cut-dense, min-degree
    #[arg(long, default_value = "auto")]
    strategy: String,
    /// Strategy parameter as key=value (c for min-degree, d for cut-dense, p for random).
    #[arg(long = "param", value_parser = parse_param)]
    params: Vec<(String, f64)>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Report wall_ms as 0 so output is byte-identical across runs.
    #[arg(long)]
    no_timing: bool,
}

impl RunArgs {
    fn strategy(&self) -> anyhow::Result<Strategy> {
        Ok(Strategy::from_parts(&self.strategy, &self.params)?)
    }
}

fn parse_param(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| format!("expected key=value, got {s:?}"))?;
    let v: f64 = v.trim().parse().map_err(|_| format!("not a number: {v:?}"))?;
    Ok((k.trim().to_string(), v))
}

/// Error that should exit with status 1 rather than 2.
#[derive(Debug)]
struct Invalid(String);

impl std::fmt::Display for Invalid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Invalid {}

fn write_out(path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn read_graph(path: &Path) -> anyhow::Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_edge_list(&text).with_context(|| format!("parsing {}", path.display()))
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Gen {
            family,
            n,
            params,
            seed,
            out,
        } => {
            let g = Family::parse(&family, &params)?.generate(n, seed)?;
            write_out(out.as_deref(), &write_edge_list(&g))
        }
        Command::Decompose {
            input,
            run,
            out,
            stats,
            telemetry,
        } => {
            let g = read_graph(&input)?;
            let strategy = run.strategy()?;
            let (d, wall_ms) = stats::timed(|| strategy.run(&g, run.seed));
            let d = d?;
            let wall_ms = if run.no_timing { 0 } else { wall_ms };
            let report = verify_pieces(&g, &d.pieces);
            if !report.valid {
                bail!(
                    "internal error: decomposition failed verification: {}",
                    report.violation.map(|v| v.to_string()).unwrap_or_default()
                );
            }
            let mut json = DecompositionDoc::from(&d).to_json();
            json.push('\n');
            write_out(out.as_deref(), &json)?;
            if let Some(p) = stats {
                let row = StatsRow::of(&g, strategy.resolve(&g).name(), &d, wall_ms, run.seed);
                fs::write(&p, format!("{}\n{}\n", StatsRow::HEADER, row.csv()))
                    .with_context(|| format!("writing {}", p.display()))?;
            }
            if let Some(p) = telemetry {
                fs::write(&p, d.trace.to_json_lines()).with_context(|| format!("writing {}", p.display()))?;
            }
            Ok(())
        }
        Command::Verify { graph, decomposition } => {
            let g = read_graph(&graph)?;
            let text =
                fs::read_to_string(&decomposition).with_context(|| format!("reading {}", decomposition.display()))?;
            let doc = DecompositionDoc::from_json(&text)?;
            if doc.n != g.n() {
                return Err(Invalid(format!("decomposition is on {} vertices, graph on {}", doc.n, g.n())).into());
            }
            if let Some(&(u, v)) = doc.leftover.first() {
                return Err(Invalid(format!("{} leftover edges, first ({u}, {v})", doc.leftover.len())).into());
            }
            let report = verify_pieces(&g, &doc.pieces);
            match report.violation {
                None => {
                    println!("ok: {} pieces cover all {} edges", report.pieces_checked, g.m());
                    Ok(())
                }
                Some(v) => Err(Invalid(v.to_string()).into()),
            }
        }
        Command::Bench {
            family,
            spec,
            run,
            budget,
            rounds_coeff,
            out,
        } => {
            let plan = bench::Plan::parse(&family, &spec)?;
            let strategy = run.strategy()?;
            let rows = bench::run(&plan, strategy, budget, rounds_coeff, run.no_timing)?;
            let mut text = String::from(bench::HEADER);
            text.push('\n');
            for r in rows {
                text.push_str(&r);
                text.push('\n');
            }
            write_out(out.as_deref(), &text)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Invalid>().is_some() {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
