//! Checking λ₁² + λ₂² ≤ 2e(G)(1 − 1/ω(G)) on individual graphs, splitting it
//! into the three sufficient events used for G(n, p), and the Monte Carlo
//! harness that estimates how often it holds.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{
    clique_factor_bound, hoeffding_edge_tail, lemma31_sides, lemma31_thresholds, spectral_envelope,
    theorem_lower_bound, BoundParams, DEFAULT_C0,
};
use crate::clique::{max_clique, CliqueResult};
use crate::error::{Error, Result};
use crate::graph::{derive_trial_seed, sample_gnp, GnpParams, Graph};
use crate::spectral::{top_two_with, SpectralConfig, SpectralSummary, DEFAULT_DENSE_LIMIT};

/// Relative slack allowed before a comparison counts as violated.
pub const EQUALITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, Default)]
pub struct CheckConfig {
    pub spectral: SpectralConfig,
    pub clique_budget: Option<Duration>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityCheck {
    pub n: usize,
    pub e: usize,
    pub omega: usize,
    pub lambda1: f64,
    pub lambda2: f64,
    /// λ₁² + λ₂²
    pub lhs: f64,
    /// 2e(1 − 1/ω)
    pub rhs: f64,
    pub slack: f64,
    pub holds: bool,
    pub is_complete: bool,
    pub witness: Vec<usize>,
}

/// The three events whose conjunction (together with the threshold
/// comparison at this `n`) implies the inequality:
///
/// * X: `λ₁² + λ₂² ≤ spectral_envelope(n)`
/// * Y: `1 − ln(1/p)/(2(1−ε) ln n) ≤ 1 − 1/ω`
/// * Z: `(1−ε) p n(n−1)/2 ≤ e(G)`
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EventTriple {
    pub n: usize,
    pub eps: f64,
    pub p: f64,
    pub c0: f64,
    pub event_x: bool,
    pub x_lhs: f64,
    pub x_rhs: f64,
    pub event_y: bool,
    pub y_lhs: f64,
    pub y_rhs: f64,
    pub event_z: bool,
    pub z_lhs: f64,
    pub z_rhs: f64,
    /// `spectral_envelope(n) ≤ p(1−ε)n(n−1)·y_lhs` at this n.
    pub lemma_holds: bool,
    pub lemma_lhs: f64,
    pub lemma_rhs: f64,
    pub n0: f64,
    pub beyond_n0: bool,
}

impl EventTriple {
    pub fn all(&self) -> bool {
        self.event_x && self.event_y && self.event_z
    }

    /// X, Y, Z and the envelope comparison at this n chain into the
    /// inequality; past n0 the comparison always holds.
    pub fn implies_inequality(&self) -> bool {
        self.all() && self.lemma_holds
    }
}

fn within(lhs: f64, rhs: f64) -> bool {
    lhs <= rhs + EQUALITY_TOL * rhs.abs().max(1.0)
}

struct Measured {
    spectral: SpectralSummary,
    clique: CliqueResult,
}

fn measure(g: &Graph, cfg: &CheckConfig) -> Result<Measured> {
    if g.n() < 2 {
        return Err(Error::invalid("the inequality needs at least two vertices"));
    }
    Ok(Measured {
        spectral: top_two_with(g, &cfg.spectral)?,
        clique: max_clique(g, cfg.clique_budget),
    })
}

fn inequality(g: &Graph, m: &Measured) -> InequalityCheck {
    let SpectralSummary {
        lambda1, lambda2, ..
    } = m.spectral;
    let e = g.edge_count();
    let omega = m.clique.omega;
    let lhs = lambda1 * lambda1 + lambda2 * lambda2;
    let rhs = (2 * e * (omega - 1)) as f64 / omega as f64;
    InequalityCheck {
        n: g.n(),
        e,
        omega,
        lambda1,
        lambda2,
        lhs,
        rhs,
        slack: rhs - lhs,
        holds: within(lhs, rhs),
        is_complete: g.is_complete(),
        witness: m.clique.witness.clone(),
    }
}

fn events(g: &Graph, m: &Measured, params: &BoundParams) -> Result<EventTriple> {
    params.validate()?;
    let n = g.n() as f64;
    let x_lhs = m.spectral.lambda1.powi(2) + m.spectral.lambda2.powi(2);
    let x_rhs = spectral_envelope(n, params);
    let y_lhs = clique_factor_bound(n, params);
    let y_rhs = 1.0 - 1.0 / m.clique.omega as f64;
    let z_lhs = (1.0 - params.eps) * params.p * n * (n - 1.0) / 2.0;
    let z_rhs = g.edge_count() as f64;
    let (lemma_lhs, lemma_rhs) = lemma31_sides(n, params)?;
    let thresholds = lemma31_thresholds(params);
    Ok(EventTriple {
        n: g.n(),
        eps: params.eps,
        p: params.p,
        c0: params.c0,
        event_x: x_lhs <= x_rhs,
        x_lhs,
        x_rhs,
        event_y: y_lhs <= y_rhs,
        y_lhs,
        y_rhs,
        event_z: z_lhs <= z_rhs,
        z_lhs,
        z_rhs,
        lemma_holds: lemma_lhs <= lemma_rhs,
        lemma_lhs,
        lemma_rhs,
        n0: thresholds.n0,
        beyond_n0: thresholds.p_admissible && n > thresholds.n0,
    })
}

fn require_certified(m: &Measured) -> Result<()> {
    if m.clique.certified() {
        Ok(())
    } else {
        Err(Error::NonCertified {
            lower_bound: m.clique.omega,
        })
    }
}

pub fn check_conjecture(g: &Graph) -> Result<InequalityCheck> {
    check_conjecture_with(g, &CheckConfig::default())
}

pub fn check_conjecture_with(g: &Graph, cfg: &CheckConfig) -> Result<InequalityCheck> {
    let m = measure(g, cfg)?;
    require_certified(&m)?;
    Ok(inequality(g, &m))
}

pub fn check_proof_events(g: &Graph, params: &BoundParams) -> Result<EventTriple> {
    check_proof_events_with(g, params, &CheckConfig::default())
}

pub fn check_proof_events_with(
    g: &Graph,
    params: &BoundParams,
    cfg: &CheckConfig,
) -> Result<EventTriple> {
    let m = measure(g, cfg)?;
    require_certified(&m)?;
    events(g, &m, params)
}

/// Inequality check and event decomposition from one spectral and one clique
/// computation.
pub fn check_all(
    g: &Graph,
    params: &BoundParams,
    cfg: &CheckConfig,
) -> Result<(InequalityCheck, EventTriple)> {
    let m = measure(g, cfg)?;
    require_certified(&m)?;
    Ok((inequality(g, &m), events(g, &m, params)?))
}

fn default_eps() -> f64 {
    0.5
}

fn default_c0() -> f64 {
    DEFAULT_C0
}

fn default_dense_limit() -> usize {
    DEFAULT_DENSE_LIMIT
}

/// Monte Carlo run description, read from JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonteCarloConfig {
    pub n: usize,
    pub p: f64,
    #[serde(default = "default_eps")]
    pub eps: f64,
    #[serde(rename = "C0", alias = "c0", default = "default_c0")]
    pub c0: f64,
    pub trials: usize,
    pub seed: u64,
    #[serde(default)]
    pub out_dir: Option<String>,
    #[serde(default = "default_dense_limit")]
    pub dense_limit: usize,
    /// Per-trial clique search budget in seconds; `null` for none.
    #[serde(default)]
    pub clique_time_budget: Option<f64>,
}

impl MonteCarloConfig {
    pub fn new(n: usize, p: f64, trials: usize, seed: u64) -> Self {
        Self {
            n,
            p,
            eps: default_eps(),
            c0: default_c0(),
            trials,
            seed,
            out_dir: None,
            dense_limit: default_dense_limit(),
            clique_time_budget: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::invalid("trials must be at least 1"));
        }
        if self.n < 2 {
            return Err(Error::invalid("n must be at least 2"));
        }
        if let Some(b) = self.clique_time_budget {
            if !(b >= 0.0 && b.is_finite()) {
                return Err(Error::invalid(
                    "clique_time_budget must be a non-negative number",
                ));
            }
        }
        GnpParams::new(self.n, self.p, self.seed)?;
        self.bound_params().map(|_| ())
    }

    pub fn bound_params(&self) -> Result<BoundParams> {
        BoundParams::new(self.eps, self.p, self.c0)
    }

    fn check_config(&self) -> CheckConfig {
        CheckConfig {
            spectral: SpectralConfig {
                dense_limit: self.dense_limit,
                ..SpectralConfig::default()
            },
            clique_budget: self.clique_time_budget.map(Duration::from_secs_f64),
        }
    }
}

/// Column order of the per-trial CSV.
pub const TRIALS_CSV_HEADER: &str =
    "trial,seed,n,p,e,omega,lambda1,lambda2,lhs,rhs,slack,holds,event_x,event_y,event_z,is_complete,certified";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRow {
    pub trial: u64,
    pub seed: u64,
    pub n: usize,
    pub p: f64,
    pub e: usize,
    pub omega: usize,
    pub lambda1: f64,
    pub lambda2: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    /// False for uncertified trials regardless of the numbers.
    pub holds: bool,
    pub event_x: bool,
    pub event_y: bool,
    pub event_z: bool,
    pub is_complete: bool,
    pub certified: bool,
    /// Whether the events chain into the inequality at this n.
    pub events_imply: bool,
    pub triangle_free: bool,
    /// Wall-clock time for the trial; not part of the CSV.
    pub elapsed_ms: f64,
}

impl TrialRow {
    pub fn counterexample(&self) -> bool {
        self.certified && !self.holds && !self.is_complete
    }

    fn csv_line(&self, out: &mut String) {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.trial,
            self.seed,
            self.n,
            self.p,
            self.e,
            self.omega,
            self.lambda1,
            self.lambda2,
            self.lhs,
            self.rhs,
            self.slack,
            self.holds,
            self.event_x,
            self.event_y,
            self.event_z,
            self.is_complete,
            self.certified,
        );
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloSummary {
    pub config: MonteCarloConfig,
    pub trials: usize,
    pub holds_count: usize,
    pub holds_fraction: f64,
    pub event_x_fraction: f64,
    pub event_y_fraction: f64,
    pub event_z_fraction: f64,
    pub all_events_fraction: f64,
    /// Empirical frequency of `e(G) < (1−ε) p n(n−1)/2`.
    pub not_z_fraction: f64,
    pub min_slack: Option<f64>,
    pub mean_edges: f64,
    pub mean_omega: f64,
    pub mean_lambda1: f64,
    pub mean_lambda2: f64,
    pub complete_draws: usize,
    pub counterexamples: usize,
    pub invalid_trials: usize,
    pub theorem_lower_bound: f64,
    pub hoeffding_tail: f64,
    pub n0: f64,
    pub p_admissible: bool,
    /// The sampled n exceeds the computable threshold n0. The other
    /// thresholds needed for the probability bound are not computable, so
    /// this never certifies that the bound applies.
    pub beyond_n0: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonteCarloReport {
    pub rows: Vec<TrialRow>,
    pub summary: MonteCarloSummary,
}

impl MonteCarloReport {
    /// Counterexample or invalid trial present.
    pub fn alert(&self) -> bool {
        self.summary.counterexamples > 0 || self.summary.invalid_trials > 0
    }

    pub fn trials_csv(&self) -> String {
        let mut out = String::with_capacity(128 * (self.rows.len() + 1));
        out.push_str(TRIALS_CSV_HEADER);
        out.push('\n');
        for row in &self.rows {
            row.csv_line(&mut out);
        }
        out
    }

    pub fn summary_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.summary)?)
    }

    /// Writes `trials.csv` and `summary.json` into `dir`, creating it if needed.
    pub fn write_to(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir)?;
        fs::write(dir.join("trials.csv"), self.trials_csv())?;
        fs::write(dir.join("summary.json"), self.summary_json()? + "\n")?;
        Ok(())
    }
}

fn run_trial(cfg: &MonteCarloConfig, params: &BoundParams, trial: u64) -> Result<TrialRow> {
    let start = Instant::now();
    let seed = derive_trial_seed(cfg.seed, trial);
    let g = sample_gnp(&GnpParams::new(cfg.n, cfg.p, seed)?)?;
    let m = measure(&g, &cfg.check_config())?;
    let check = inequality(&g, &m);
    let ev = events(&g, &m, params)?;
    let certified = m.clique.certified();
    Ok(TrialRow {
        trial,
        seed,
        n: cfg.n,
        p: cfg.p,
        e: check.e,
        omega: check.omega,
        lambda1: check.lambda1,
        lambda2: check.lambda2,
        lhs: check.lhs,
        rhs: check.rhs,
        slack: check.slack,
        holds: certified && check.holds,
        event_x: ev.event_x,
        event_y: ev.event_y,
        event_z: ev.event_z,
        is_complete: check.is_complete,
        certified,
        events_imply: ev.implies_inequality(),
        triangle_free: check.omega <= 2,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

fn summarize(
    cfg: &MonteCarloConfig,
    params: &BoundParams,
    rows: &[TrialRow],
) -> Result<MonteCarloSummary> {
    let trials = rows.len();
    let t = trials as f64;
    let count = |f: &dyn Fn(&TrialRow) -> bool| rows.iter().filter(|r| f(r)).count();
    let frac = |f: &dyn Fn(&TrialRow) -> bool| count(f) as f64 / t;
    let mean = |f: &dyn Fn(&TrialRow) -> f64| rows.iter().map(f).sum::<f64>() / t;
    let thresholds = lemma31_thresholds(params);

    Ok(MonteCarloSummary {
        config: cfg.clone(),
        trials,
        holds_count: count(&|r| r.holds),
        holds_fraction: frac(&|r| r.holds),
        event_x_fraction: frac(&|r| r.event_x),
        event_y_fraction: frac(&|r| r.event_y),
        event_z_fraction: frac(&|r| r.event_z),
        all_events_fraction: frac(&|r| r.event_x && r.event_y && r.event_z),
        not_z_fraction: frac(&|r| !r.event_z),
        min_slack: rows
            .iter()
            .filter(|r| r.certified)
            .map(|r| r.slack)
            .reduce(f64::min),
        mean_edges: mean(&|r| r.e as f64),
        mean_omega: mean(&|r| r.omega as f64),
        mean_lambda1: mean(&|r| r.lambda1),
        mean_lambda2: mean(&|r| r.lambda2),
        complete_draws: count(&|r| r.is_complete),
        counterexamples: count(&|r| r.counterexample()),
        invalid_trials: count(&|r| !r.certified),
        theorem_lower_bound: theorem_lower_bound(cfg.n, cfg.p, cfg.eps)?,
        hoeffding_tail: hoeffding_edge_tail(cfg.n, cfg.p, cfg.eps)?,
        n0: thresholds.n0,
        p_admissible: thresholds.p_admissible,
        beyond_n0: thresholds.p_admissible && cfg.n as f64 > thresholds.n0,
    })
}

/// Runs `cfg.trials` independent trials. Trial `k` samples G(n, p) with seed
/// `derive_trial_seed(cfg.seed, k)`; rows come back in trial order, so the
/// report does not depend on `threads` (`None` uses rayon's default pool).
pub fn run_monte_carlo(cfg: &MonteCarloConfig, threads: Option<usize>) -> Result<MonteCarloReport> {
    cfg.validate()?;
    let params = cfg.bound_params()?;
    let work = || {
        (0..cfg.trials as u64)
            .into_par_iter()
            .map(|k| run_trial(cfg, &params, k))
            .collect::<Result<Vec<_>>>()
    };
    let rows = match threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::invalid(format!("thread pool: {e}")))?
            .install(work)?,
        None => work()?,
    };
    let summary = summarize(cfg, &params, &rows)?;
    Ok(MonteCarloReport { rows, summary })
}
