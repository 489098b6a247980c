//! FCSR, its sampling phases and schedule, and the baseline strategies.
//!
//! All algorithms run against a [`BanditInstance`] through a [`BudgetedSampler`]
//! and return a [`RunTrace`] whose decision lies in `{0, 1, ..., K}`.

mod baselines;
mod fcsr;
mod sampler;
mod schedule;
mod trace;

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

pub use baselines::{run_explore_then_commit, run_successive_rejects, run_uniform, DEFAULT_EXPLORE_FRACTION};
pub use fcsr::{run_fcsr, FcsrConfig, DEFAULT_APT_FRACTION, DEFAULT_FEASIBILITY_FRACTION};
pub use sampler::{apt_choice, BudgetedSampler};
pub use schedule::{harmonic_normalizer, Schedule};
pub use trace::{Phase, RunTrace};

use crate::bandit::{BanditInstance, Decision, StatsState};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Removes the lowest-scoring arm from `active` and returns it together with the
/// scores of all arms that were active.
pub(crate) fn eliminate_lowest<F: Scalar>(
    stats: &StatsState<F>,
    active: &mut Vec<usize>,
    tau: F,
) -> (usize, Vec<(usize, F)>) {
    let scores: Vec<(usize, F)> = active.iter().map(|&i| (i, stats.score(i, tau))).collect();
    // active is kept in ascending index order, so strict < keeps the lowest index on ties
    let pos = scores
        .iter()
        .enumerate()
        .fold(0, |best, (p, s)| if s.1 < scores[best].1 { p } else { best });
    let eliminated = active.remove(pos);
    (eliminated, scores)
}

pub(crate) fn final_decision<F: Scalar>(stats: &StatsState<F>, survivor: usize, tau: F) -> Decision {
    if stats.is_empirically_feasible(survivor, tau) {
        Decision::arm(survivor)
    } else {
        Decision::INFEASIBLE
    }
}

/// Stable identifiers: "fcsr", "us", "sr", "etc".
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum AlgorithmKind {
    Fcsr,
    Uniform,
    SuccessiveRejects,
    ExploreThenCommit,
}

impl AlgorithmKind {
    pub const ALL: [AlgorithmKind; 4] = [
        AlgorithmKind::Fcsr,
        AlgorithmKind::Uniform,
        AlgorithmKind::SuccessiveRejects,
        AlgorithmKind::ExploreThenCommit,
    ];

    pub fn id(self) -> &'static str {
        match self {
            AlgorithmKind::Fcsr => "fcsr",
            AlgorithmKind::Uniform => "us",
            AlgorithmKind::SuccessiveRejects => "sr",
            AlgorithmKind::ExploreThenCommit => "etc",
        }
    }
}

impl fmt::Display for AlgorithmKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for AlgorithmKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        AlgorithmKind::ALL
            .into_iter()
            .find(|a| a.id() == s)
            .ok_or_else(|| Error::UnknownAlgorithm(s.to_string()))
    }
}

impl TryFrom<String> for AlgorithmKind {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<AlgorithmKind> for String {
    fn from(a: AlgorithmKind) -> String {
        a.id().to_string()
    }
}

/// Tunables shared by the algorithm dispatcher.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AlgorithmParams {
    pub f: f64,
    pub g: f64,
    pub explore_fraction: f64,
}

impl Default for AlgorithmParams {
    fn default() -> Self {
        Self {
            f: DEFAULT_FEASIBILITY_FRACTION,
            g: DEFAULT_APT_FRACTION,
            explore_fraction: DEFAULT_EXPLORE_FRACTION,
        }
    }
}

/// Runs `kind` on `instance` with budget `budget` and threshold `tau`.
pub fn run_algorithm<F: Scalar, R: Rng>(
    kind: AlgorithmKind,
    instance: &BanditInstance<F>,
    budget: u64,
    tau: F,
    params: &AlgorithmParams,
    rng: R,
) -> Result<RunTrace<F>> {
    match kind {
        AlgorithmKind::Fcsr => {
            let config = FcsrConfig {
                f: params.f,
                g: params.g,
                tau,
                budget,
                r_hint: None,
            };
            run_fcsr(instance, &config, rng)
        }
        AlgorithmKind::Uniform => Ok(run_uniform(instance, budget, tau, rng)),
        AlgorithmKind::SuccessiveRejects => run_successive_rejects(instance, budget, tau, rng),
        AlgorithmKind::ExploreThenCommit => {
            run_explore_then_commit(instance, budget, tau, params.explore_fraction, rng)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identifiers_round_trip() {
        for a in AlgorithmKind::ALL {
            assert_eq!(a.id().parse::<AlgorithmKind>().unwrap(), a);
        }
        let err = "ucb".parse::<AlgorithmKind>().unwrap_err().to_string();
        assert!(err.contains("fcsr") && err.contains("etc"), "{err}");
    }

    #[test]
    fn elimination_tie_goes_to_lowest_index() {
        let stats = StatsState::from_parts(3, 1, vec![0.2, 0.2, 0.9], vec![1, 1, 1]).unwrap();
        let mut active = vec![0, 1, 2];
        let (gone, scores) = eliminate_lowest(&stats, &mut active, 0.5f64);
        assert_eq!(gone, 0);
        assert_eq!(active, vec![1, 2]);
        assert_eq!(scores.len(), 3);
    }
}
