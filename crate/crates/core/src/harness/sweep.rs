use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::bands::{confidence_bands, log_error};
use super::synthetic::{build_synthetic_with_variance, SyntheticKind, SYNTHETIC_VARIANCE};
use crate::algorithms::{run_algorithm, AlgorithmKind, AlgorithmParams};
use crate::bandit::{BanditInstance, Decision};
use crate::error::{Error, Result};
use crate::hardness::json_number;
use crate::rng::RngStream;

pub const DEFAULT_BASE_SEED: u64 = 20_240_601;

/// Sweep configuration as read from TOML.
///
/// ```toml
/// instance = "risky"            # or: instance_file = "path/to/instance.json"
/// a = 0.01                      # synthetic difficulty, optional
/// variance = 0.3                # synthetic noise variance, optional
/// algorithms = ["fcsr", "sr", "us", "etc"]
/// budgets = [10000, 50000, 90000]
/// trials = 2000
/// base_seed = 7                 # optional
///
/// [params]                      # optional
/// f = 0.2
/// g = 0.3
/// explore_fraction = 0.5
/// ```
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instance: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instance_file: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    /// Noise variance of the synthetic Gaussians; defaults to `SYNTHETIC_VARIANCE`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variance: Option<f64>,
    pub algorithms: Vec<String>,
    pub budgets: Vec<u64>,
    pub trials: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_seed: Option<u64>,
    #[serde(default)]
    pub params: AlgorithmParams,
}

/// Where a sweep's instance comes from.
#[derive(Clone, Debug, PartialEq)]
pub enum InstanceSource {
    Synthetic { kind: SyntheticKind, a: f64 },
    File(PathBuf),
}

impl SweepConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        Ok(toml::from_str(text)?)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }

    /// Checks everything that can be checked without running trials.
    pub fn validate(&self) -> Result<Vec<AlgorithmKind>> {
        if self.algorithms.is_empty() {
            return Err(Error::Config("algorithm list is empty".into()));
        }
        let algorithms = self
            .algorithms
            .iter()
            .map(|s| s.parse::<AlgorithmKind>())
            .collect::<Result<Vec<_>>>()?;
        if self.budgets.is_empty() {
            return Err(Error::Config("budget list is empty".into()));
        }
        if self.budgets.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config("budgets must be strictly increasing".into()));
        }
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        match (self.source()?, self.variance) {
            (InstanceSource::File(_), Some(_)) => {
                return Err(Error::Config("`variance` applies only to synthetic instances".into()))
            }
            (_, Some(v)) if !(v >= 0.0 && v.is_finite()) => {
                return Err(Error::Config(format!("variance must be finite and non-negative, got {v}")))
            }
            _ => {}
        }
        Ok(algorithms)
    }

    pub fn source(&self) -> Result<InstanceSource> {
        match (&self.instance, &self.instance_file) {
            (Some(name), None) => {
                let kind: SyntheticKind = name.parse()?;
                Ok(InstanceSource::Synthetic {
                    kind,
                    a: self.a.unwrap_or_else(|| kind.default_a()),
                })
            }
            (None, Some(path)) => Ok(InstanceSource::File(path.clone())),
            (Some(_), Some(_)) => Err(Error::Config("set either `instance` or `instance_file`, not both".into())),
            (None, None) => Err(Error::Config("missing `instance` or `instance_file`".into())),
        }
    }

    /// Loads the instance; relative file paths resolve against `base_dir`.
    pub fn resolve_instance(&self, base_dir: &Path) -> Result<(String, BanditInstance<f64>)> {
        match self.source()? {
            InstanceSource::Synthetic { kind, a } => {
                let variance = self.variance.unwrap_or(SYNTHETIC_VARIANCE);
                Ok((format!("{kind}(a={a})"), build_synthetic_with_variance(kind, a, variance)?))
            }
            InstanceSource::File(p) => {
                let path = if p.is_relative() { base_dir.join(&p) } else { p };
                let inst = BanditInstance::read_json(&path)?;
                Ok((path.display().to_string(), inst))
            }
        }
    }
}

/// Aggregate over the trials of one (algorithm, budget) pair.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepCell {
    pub algorithm: AlgorithmKind,
    pub budget: u64,
    pub trials: u64,
    pub correct: u64,
    pub error_count: u64,
    pub accuracy: f64,
    /// `ln(1 - accuracy)`; `None` when every trial was correct.
    pub log_error: Option<f64>,
    pub delta_band: Option<f64>,
    pub bernoulli_ci: f64,
    /// Mean total pulls per trial.
    pub mean_pulls: f64,
    pub wall_time_secs: f64,
    /// Non-fatal remark, e.g. a budget too small to sample every attribute.
    pub note: Option<String>,
    /// Set when the algorithm could not run on this instance; the cell then has no trials.
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepResult {
    pub instance: String,
    pub best_arm: Decision,
    pub base_seed: u64,
    pub cells: Vec<SweepCell>,
}

/// What to run: every (algorithm, budget) pair, `trials` times each.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepPlan {
    pub algorithms: Vec<AlgorithmKind>,
    pub budgets: Vec<u64>,
    pub trials: u64,
    pub base_seed: u64,
    pub params: AlgorithmParams,
    pub workers: usize,
}

impl SweepPlan {
    pub fn new(algorithms: Vec<AlgorithmKind>, budgets: Vec<u64>, trials: u64) -> Self {
        Self {
            algorithms,
            budgets,
            trials,
            base_seed: DEFAULT_BASE_SEED,
            params: AlgorithmParams::default(),
            workers: 1,
        }
    }
}

/// Runs the plan on `plan.workers` threads. Trial `t` of a cell draws from
/// `RngStream::for_trial(seed, alg, budget, t)`, so the result does not depend on
/// worker count or execution order.
pub fn run_sweep(instance: &BanditInstance<f64>, instance_name: &str, plan: &SweepPlan) -> Result<SweepResult> {
    let SweepPlan {
        ref algorithms,
        ref budgets,
        trials,
        base_seed,
        ref params,
        workers,
    } = *plan;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;
    let best = instance.oracle().best_arm;
    let tau = instance.threshold();
    let min_pulls = (instance.num_arms() * instance.num_attributes()) as u64;

    let mut cells = Vec::with_capacity(algorithms.len() * budgets.len());
    for &algorithm in algorithms.iter() {
        for &budget in budgets.iter() {
            let started = Instant::now();
            let outcome: Result<(u64, u64)> = pool.install(|| {
                (0..trials)
                    .into_par_iter()
                    .map(|t| {
                        let rng = RngStream::for_trial(base_seed, algorithm.id(), budget, t).rng();
                        let trace = run_algorithm(algorithm, instance, budget, tau, params, rng)?;
                        Ok(((trace.decision == best) as u64, trace.pulls_total))
                    })
                    .try_reduce(|| (0, 0), |a, b| Ok((a.0 + b.0, a.1 + b.1)))
            });
            let wall = started.elapsed().as_secs_f64();
            let note = (budget < min_pulls)
                .then(|| format!("budget {budget} is below K*M = {min_pulls}; some attributes are never sampled"));
            let cell = match outcome {
                Ok((correct, pulls)) => {
                    let accuracy = correct as f64 / trials as f64;
                    let bands = confidence_bands(accuracy, trials);
                    SweepCell {
                        algorithm,
                        budget,
                        trials,
                        correct,
                        error_count: trials - correct,
                        accuracy,
                        log_error: log_error(accuracy),
                        delta_band: bands.delta_band,
                        bernoulli_ci: bands.bernoulli_ci,
                        mean_pulls: pulls as f64 / trials as f64,
                        wall_time_secs: wall,
                        note,
                        error: None,
                    }
                }
                Err(e) => {
                    log::warn!("{algorithm} at budget {budget}: {e}");
                    SweepCell {
                        algorithm,
                        budget,
                        trials: 0,
                        correct: 0,
                        error_count: 0,
                        accuracy: f64::NAN,
                        log_error: None,
                        delta_band: None,
                        bernoulli_ci: f64::NAN,
                        mean_pulls: 0.0,
                        wall_time_secs: wall,
                        note,
                        error: Some(e.to_string()),
                    }
                }
            };
            log::info!(
                "{:>4} T={:<7} accuracy {:.4} ({:.1}s)",
                algorithm,
                budget,
                cell.accuracy,
                cell.wall_time_secs
            );
            cells.push(cell);
        }
    }
    Ok(SweepResult {
        instance: instance_name.to_string(),
        best_arm: best,
        base_seed,
        cells,
    })
}

/// Validates `config`, loads its instance and runs the sweep.
pub fn run_sweep_config(config: &SweepConfig, base_dir: &Path, workers: usize) -> Result<SweepResult> {
    let algorithms = config.validate()?;
    let (name, instance) = config.resolve_instance(base_dir)?;
    let plan = SweepPlan {
        algorithms,
        budgets: config.budgets.clone(),
        trials: config.trials,
        base_seed: config.base_seed.unwrap_or(DEFAULT_BASE_SEED),
        params: config.params,
        workers,
    };
    run_sweep(&instance, &name, &plan)
}

pub const TABLE_HEADER: &str = "algorithm,budget,trials,accuracy,log_error,delta_band,bernoulli_ci";

impl SweepResult {
    /// Comma-separated table, one row per cell. `ln(1 - A)` at `A = 1` is written
    /// as `-inf` and its band as `open`; failed cells carry `error` in every value column.
    pub fn to_table(&self) -> String {
        let mut out = String::from(TABLE_HEADER);
        out.push('\n');
        for c in &self.cells {
            if c.error.is_some() {
                let _ = writeln!(out, "{},{},{},error,error,error,error", c.algorithm, c.budget, c.trials);
                continue;
            }
            let log_err = c.log_error.map_or("-inf".to_string(), |v| format!("{v:.6}"));
            let band = c.delta_band.map_or("open".to_string(), |v| format!("{v:.6}"));
            let _ = writeln!(
                out,
                "{},{},{},{:.6},{},{},{:.6}",
                c.algorithm, c.budget, c.trials, c.accuracy, log_err, band, c.bernoulli_ci
            );
        }
        out
    }

    /// Structured form for plotting tools; non-finite values become strings.
    pub fn to_json_value(&self) -> Value {
        json!({
            "instance": self.instance,
            "best_arm": self.best_arm.code(),
            "base_seed": self.base_seed,
            "cells": self.cells.iter().map(|c| json!({
                "algorithm": c.algorithm.id(),
                "budget": c.budget,
                "trials": c.trials,
                "correct": c.correct,
                "error_count": c.error_count,
                "accuracy": json_number(c.accuracy),
                "log_error": c.log_error.map_or(json!("-inf"), json_number),
                "delta_band": c.delta_band.map_or(json!("open"), json_number),
                "bernoulli_ci": json_number(c.bernoulli_ci),
                "mean_pulls": c.mean_pulls,
                "wall_time_secs": c.wall_time_secs,
                "note": c.note,
                "error": c.error,
            })).collect::<Vec<_>>(),
        })
    }

    pub fn cell(&self, algorithm: AlgorithmKind, budget: u64) -> Option<&SweepCell> {
        self.cells.iter().find(|c| c.algorithm == algorithm && c.budget == budget)
    }
}
