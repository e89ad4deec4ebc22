//! `bnspec` command line.
//!
//! JSON goes to stdout and diagnostics to stderr. Exit codes: 0 success,
//! 1 runtime error, 2 usage error or invalid parameter, 3 a Monte Carlo run
//! found a violating non-complete graph or had uncertified trials.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::bounds::{bounds_report, lemma31_thresholds, BoundParams, DEFAULT_C0};
use crate::error::{Error, Result};
use crate::experiment::{
    check_conjecture_with, check_proof_events_with, run_monte_carlo, CheckConfig, MonteCarloConfig,
};
use crate::graph::{read_edge_list, sample_gnp, write_edge_list, GnpParams, Graph};
use crate::spectral::{SpectralConfig, DEFAULT_DENSE_LIMIT};

pub const EXIT_OK: i32 = 0;
pub const EXIT_RUNTIME: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_ALERT: i32 = 3;

/// Fallback output directory for `montecarlo` when neither `--out-dir` nor
/// the config's `out_dir` is given.
pub const OUT_DIR_ENV: &str = "BNSPEC_OUT_DIR";
const DEFAULT_OUT_DIR: &str = "bnspec-out";

#[derive(Debug, Parser)]
#[command(
    name = "bnspec",
    version,
    about = "Check λ₁² + λ₂² ≤ 2e(1 − 1/ω) on graphs and G(n,p) samples"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct SolverArgs {
    /// Largest n handled by the dense eigensolver.
    #[arg(long, default_value_t = DEFAULT_DENSE_LIMIT)]
    dense_limit: usize,
    /// Clique search budget in seconds (unlimited when omitted).
    #[arg(long)]
    clique_budget: Option<f64>,
}

impl SolverArgs {
    fn config(&self) -> Result<CheckConfig> {
        let clique_budget = match self.clique_budget {
            Some(s) if s >= 0.0 && s.is_finite() => Some(Duration::from_secs_f64(s)),
            Some(s) => {
                return Err(Error::invalid(format!(
                    "clique budget {s} is not a valid duration"
                )))
            }
            None => None,
        };
        Ok(CheckConfig {
            spectral: SpectralConfig {
                dense_limit: self.dense_limit,
                ..SpectralConfig::default()
            },
            clique_budget,
        })
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate the inequality on a graph file.
    Check {
        #[arg(long)]
        graph: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Sample G(n, p) and write it as an edge list.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the Monte Carlo harness described by a JSON config.
    Montecarlo {
        #[arg(long)]
        config: PathBuf,
        /// Worker threads; results do not depend on this.
        #[arg(long)]
        threads: Option<usize>,
        /// Overrides the config's out_dir.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Print the threshold chain m0..m4, n0', n0'', n0.
    Thresholds {
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = DEFAULT_C0)]
        c0: f64,
    },
    /// Print every closed-form bound at one n.
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value_t = DEFAULT_C0)]
        c0: f64,
    },
    /// Evaluate the events X, Y, Z on a graph file.
    Events {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = DEFAULT_C0)]
        c0: f64,
        #[command(flatten)]
        solver: SolverArgs,
    },
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn load_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path)?;
    read_edge_list(&text)
}

#[derive(Serialize)]
struct SampleOutput<'a> {
    n: usize,
    p: f64,
    seed: u64,
    edges: usize,
    outside_model: bool,
    out: &'a Path,
}

fn execute(command: Command) -> Result<i32> {
    match command {
        Command::Check { graph, solver } => {
            let g = load_graph(&graph)?;
            print_json(&check_conjecture_with(&g, &solver.config()?)?)?;
        }
        Command::Sample { n, p, seed, out } => {
            let params = GnpParams::new(n, p, seed)?;
            let g = sample_gnp(&params)?;
            fs::write(&out, write_edge_list(&g))?;
            print_json(&SampleOutput {
                n,
                p,
                seed,
                edges: g.edge_count(),
                outside_model: params.outside_model(),
                out: &out,
            })?;
        }
        Command::Montecarlo {
            config,
            threads,
            out_dir,
        } => {
            if threads == Some(0) {
                return Err(Error::invalid("--threads must be at least 1"));
            }
            let cfg = MonteCarloConfig::from_json(&fs::read_to_string(&config)?)?;
            let dir = out_dir
                .or_else(|| cfg.out_dir.as_ref().map(PathBuf::from))
                .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
                .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT_DIR));
            let report = run_monte_carlo(&cfg, threads)?;
            report.write_to(&dir)?;
            print_json(&report.summary)?;
            if report.alert() {
                eprintln!(
                    "bnspec: alert: {} counterexample(s), {} uncertified trial(s); see {}",
                    report.summary.counterexamples,
                    report.summary.invalid_trials,
                    dir.join("trials.csv").display()
                );
                return Ok(EXIT_ALERT);
            }
        }
        Command::Thresholds { eps, p, c0 } => {
            print_json(&lemma31_thresholds(&BoundParams::new(eps, p, c0)?))?;
        }
        Command::Bounds { n, p, eps, c0 } => {
            print_json(&bounds_report(n, &BoundParams::new(eps, p, c0)?)?)?;
        }
        Command::Events {
            graph,
            eps,
            p,
            c0,
            solver,
        } => {
            let params = BoundParams::new(eps, p, c0)?;
            let g = load_graph(&graph)?;
            print_json(&check_proof_events_with(&g, &params, &solver.config()?)?)?;
        }
    }
    Ok(EXIT_OK)
}

/// Parses `args` (including the program name) and runs the subcommand,
/// returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("bnspec: error: {err}");
            match err {
                Error::InvalidParameter(_) => EXIT_USAGE,
                _ => EXIT_RUNTIME,
            }
        }
    }
}
