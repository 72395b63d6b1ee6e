//! Large-n Monte Carlo: replicate Erdős–Rényi graphs, evaluate edge-count
//! functionals from sufficient statistics in `O(n + m)` per replication,
//! stream moments, and measure the empirical Kolmogorov distance to the
//! standard Gaussian.
//!
//! Replication `r` draws from a random stream keyed by
//! `(master_seed, r)`, so results are independent of scheduling and
//! bit-identical across runs of the same configuration.

pub mod ks;
pub mod normal;
pub mod welford;

use std::str::FromStr;
use std::time::Instant;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::formulas;
pub use crate::functional::{evaluate_functional, Functional};
use crate::graph::{replication_rng, Graph};
use ks::empirical_ks;
use welford::Welford;

/// Replications processed per parallel batch; batches are folded in index
/// order so results do not depend on the worker count.
const CHUNK: u64 = 4096;

/// Retained-sample cap for the KS statistic; beyond it a uniform reservoir
/// is kept and the KS value is an approximation over the reservoir.
pub const SAMPLE_RETENTION_CAP: usize = 1 << 20;

/// Arc probability, either a literal or a rate rule `c * n^a`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ProbabilitySpec {
    Literal(f64),
    /// `coefficient * n^exponent`; write the rule as e.g. `0.5*n^-0.5`.
    Rule { coefficient: f64, exponent: f64 },
}

impl ProbabilitySpec {
    pub fn resolve(&self, n: u64) -> f64 {
        match *self {
            ProbabilitySpec::Literal(p) => p,
            ProbabilitySpec::Rule {
                coefficient,
                exponent,
            } => coefficient * (n as f64).powf(exponent),
        }
    }
}

impl FromStr for ProbabilitySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("n^") {
            let exponent: f64 = rest
                .parse()
                .map_err(|_| Error::config(format!("bad exponent in p rule {s:?}")))?;
            return Ok(ProbabilitySpec::Rule {
                coefficient: 1.0,
                exponent,
            });
        }
        if let Some((coeff, power)) = s.split_once("*n^") {
            let coefficient: f64 = coeff
                .trim()
                .parse()
                .map_err(|_| Error::config(format!("bad coefficient in p rule {s:?}")))?;
            let exponent: f64 = power
                .trim()
                .parse()
                .map_err(|_| Error::config(format!("bad exponent in p rule {s:?}")))?;
            return Ok(ProbabilitySpec::Rule {
                coefficient,
                exponent,
            });
        }
        let p: f64 = s
            .parse()
            .map_err(|_| Error::config(format!("bad probability {s:?}")))?;
        Ok(ProbabilitySpec::Literal(p))
    }
}

impl std::fmt::Display for ProbabilitySpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            ProbabilitySpec::Literal(p) => write!(f, "{p}"),
            ProbabilitySpec::Rule {
                coefficient,
                exponent,
            } => write!(f, "{coefficient}*n^{exponent}"),
        }
    }
}

/// How the samples are centered and scaled before the KS comparison.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Standardization {
    /// Closed-form mean, empirical standard deviation (the default: the
    /// exact mean is available but the exact variance is not closed-form
    /// at simulation scale).
    #[default]
    Theoretical,
    /// Sample mean and sample standard deviation.
    Empirical,
}

impl FromStr for Standardization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "theoretical" => Ok(Standardization::Theoretical),
            "empirical" => Ok(Standardization::Empirical),
            other => Err(Error::config(format!(
                "unknown standardization {other:?} (expected theoretical or empirical)"
            ))),
        }
    }
}

impl std::fmt::Display for Standardization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Standardization::Theoretical => "theoretical",
            Standardization::Empirical => "empirical",
        })
    }
}

/// Full description of one Monte Carlo experiment.
#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub n: u64,
    pub p: ProbabilitySpec,
    pub replications: u64,
    pub master_seed: u64,
    pub functional: Functional,
    pub standardization: Standardization,
}

impl ExperimentConfig {
    /// Resolves the probability rule and checks the invariants
    /// `0 < p < 1`, `replications >= 2`.
    pub fn validate(&self) -> Result<f64> {
        if self.n == 0 || self.n > u32::MAX as u64 {
            return Err(Error::config(format!("n={} out of range", self.n)));
        }
        let p = self.p.resolve(self.n);
        if !(0.0 < p && p < 1.0) {
            return Err(Error::config(format!(
                "p resolves to {p} at n={}, needs 0 < p < 1",
                self.n
            )));
        }
        if self.replications < 2 {
            return Err(Error::config("need at least 2 replications"));
        }
        Ok(p)
    }
}

/// Everything one experiment reports. Identical configs produce
/// bit-identical summaries except for `wall_seconds`.
#[derive(Clone, Debug)]
pub struct RunSummary {
    pub config: ExperimentConfig,
    /// Resolved probability actually used.
    pub p: f64,
    pub count: u64,
    pub mean: f64,
    /// Unbiased sample variance.
    pub variance: f64,
    pub min: f64,
    pub max: f64,
    pub ks_statistic: f64,
    /// Number of samples the KS statistic was computed over.
    pub ks_samples: usize,
    pub standardize_mean: f64,
    pub standardize_sd: f64,
    /// Closed-form expectation of the functional at `(n, p)`.
    pub theoretical_mean: f64,
    /// Lower variance reference: the Cauchy-Schwarz bracket for the
    /// polytope count, the positive-correlation bound `256 Var(C(E,2))`
    /// for the triangulation count, the exact value otherwise.
    pub theoretical_var_lo: Option<f64>,
    /// Upper variance reference where one is available.
    pub theoretical_var_hi: Option<f64>,
    pub clt_rate: f64,
    pub wall_seconds: f64,
}

/// Uniform reservoir sampler with its own deterministic stream.
struct Reservoir {
    cap: usize,
    seen: u64,
    samples: Vec<f64>,
    rng: ChaCha8Rng,
}

impl Reservoir {
    fn new(cap: usize, rng: ChaCha8Rng) -> Self {
        Reservoir {
            cap,
            seen: 0,
            samples: Vec::new(),
            rng,
        }
    }

    fn push(&mut self, x: f64) {
        self.seen += 1;
        if self.samples.len() < self.cap {
            self.samples.push(x);
        } else {
            let j = self.rng.random_range(0..self.seen);
            if (j as usize) < self.cap {
                self.samples[j as usize] = x;
            }
        }
    }
}

fn theoretical_mean(functional: Functional, n: u64, p: f64) -> f64 {
    match functional {
        Functional::CosmoEdges => formulas::mean_cosmo_f64(n, p),
        Functional::TriEdges => formulas::mean_tri_f64(n, p),
        Functional::Arcs => formulas::mean_arcs_f64(n, p),
        Functional::Leaves => formulas::mean_leaves_f64(n, p),
    }
}

fn theoretical_var_bounds(functional: Functional, n: u64, p: f64) -> (Option<f64>, Option<f64>) {
    match functional {
        Functional::CosmoEdges => {
            let (lo, hi) = formulas::variance_interval_cosmo_f64(n, p);
            (Some(lo), Some(hi))
        }
        Functional::TriEdges => (Some(256.0 * formulas::var_pairs_of_arcs_f64(n, p)), None),
        Functional::Arcs => {
            let v = formulas::var_arcs_f64(n, p);
            (Some(v), Some(v))
        }
        Functional::Leaves => {
            let v = formulas::var_leaves_f64(n, p);
            (Some(v), Some(v))
        }
    }
}

/// Runs one experiment: `replications` independent graphs, streaming
/// moments, retained samples, and the standardized KS statistic.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<RunSummary> {
    let started = Instant::now();
    let p = cfg.validate()?;
    let n32 = cfg.n as u32;

    let mut moments = Welford::new();
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    // The reservoir stream is keyed off the master seed but distinct from
    // every replication stream.
    let mut reservoir = Reservoir::new(
        SAMPLE_RETENTION_CAP,
        replication_rng(cfg.master_seed ^ 0xA5A5_5A5A_DEAD_BEEF, u64::MAX),
    );

    let mut start = 0u64;
    while start < cfg.replications {
        let end = (start + CHUNK).min(cfg.replications);
        let values: Vec<f64> = (start..end)
            .into_par_iter()
            .map(|rep| -> Result<f64> {
                let mut rng = replication_rng(cfg.master_seed, rep);
                let g = Graph::sample_sparse(n32, p, &mut rng)?;
                Ok(evaluate_functional(&g.stats(), cfg.functional)? as f64)
            })
            .collect::<Result<Vec<f64>>>()?;
        for v in values {
            moments.push(v);
            min = min.min(v);
            max = max.max(v);
            reservoir.push(v);
        }
        start = end;
    }

    let mean = moments.mean();
    let variance = moments.variance();
    let sd = variance.sqrt();
    let theo_mean = theoretical_mean(cfg.functional, cfg.n, p);
    let (var_lo, var_hi) = theoretical_var_bounds(cfg.functional, cfg.n, p);

    let (std_mean, std_sd) = match cfg.standardization {
        Standardization::Theoretical => (theo_mean, sd),
        Standardization::Empirical => (mean, sd),
    };
    let ks_statistic = empirical_ks(&reservoir.samples, std_mean, std_sd)?;

    Ok(RunSummary {
        config: cfg.clone(),
        p,
        count: moments.count(),
        mean,
        variance,
        min,
        max,
        ks_statistic,
        ks_samples: reservoir.samples.len(),
        standardize_mean: std_mean,
        standardize_sd: std_sd,
        theoretical_mean: theo_mean,
        theoretical_var_lo: var_lo,
        theoretical_var_hi: var_hi,
        clt_rate: formulas::clt_rate(n32, p)?,
        wall_seconds: started.elapsed().as_secs_f64(),
    })
}

/// One row of a rate sweep. Errors are recorded per row; the sweep
/// continues past them.
#[derive(Clone, Debug)]
pub struct SweepRow {
    pub n: u64,
    pub p: Option<f64>,
    pub ks: Option<f64>,
    pub clt_rate: Option<f64>,
    /// `ks / clt_rate`.
    pub ratio: Option<f64>,
    pub error: Option<String>,
    pub summary: Option<RunSummary>,
}

/// Runs `base` at each requested node count, in input order.
pub fn rate_sweep(base: &ExperimentConfig, n_values: &[u64]) -> Vec<SweepRow> {
    n_values
        .iter()
        .map(|&n| {
            let cfg = ExperimentConfig {
                n,
                ..base.clone()
            };
            match run_experiment(&cfg) {
                Ok(summary) => SweepRow {
                    n,
                    p: Some(summary.p),
                    ks: Some(summary.ks_statistic),
                    clt_rate: Some(summary.clt_rate),
                    ratio: Some(summary.ks_statistic / summary.clt_rate),
                    error: None,
                    summary: Some(summary),
                },
                Err(e) => SweepRow {
                    n,
                    p: None,
                    ks: None,
                    clt_rate: None,
                    ratio: None,
                    error: Some(e.to_string()),
                    summary: None,
                },
            }
        })
        .collect()
}
