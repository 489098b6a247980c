use rand::Rng;
use serde::{Deserialize, Serialize};

use super::sampler::BudgetedSampler;
use super::schedule::Schedule;
use super::trace::{Phase, RunTrace};
use super::{eliminate_lowest, final_decision};
use crate::bandit::BanditInstance;
use crate::error::{Error, Result};
use crate::scalar::{floor_fraction, Scalar};

pub const DEFAULT_FEASIBILITY_FRACTION: f64 = 0.2;
pub const DEFAULT_APT_FRACTION: f64 = 0.3;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "F: Scalar", serialize = "F: Scalar"))]
pub struct FcsrConfig<F> {
    /// Share of the budget reserved for per-arm feasibility sampling.
    pub f: f64,
    /// Share of each round's per-arm budget given to the thresholding phase.
    pub g: f64,
    pub tau: F,
    pub budget: u64,
    /// Sub-Gaussian parameter, only used for reporting bound predictions.
    #[serde(default)]
    pub r_hint: Option<F>,
}

impl<F: Scalar> FcsrConfig<F> {
    pub fn new(tau: F, budget: u64) -> Self {
        Self {
            f: DEFAULT_FEASIBILITY_FRACTION,
            g: DEFAULT_APT_FRACTION,
            tau,
            budget,
            r_hint: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.f > 0.0 && self.f < 1.0) {
            return Err(Error::param("f", format!("must lie in (0, 1), got {}", self.f)));
        }
        if !(self.g > 0.0 && self.g < 1.0) {
            return Err(Error::param("g", format!("must lie in (0, 1), got {}", self.g)));
        }
        if self.tau.is_nan() {
            return Err(Error::param("tau", "is NaN"));
        }
        Ok(())
    }
}

/// Feasibility-constrained successive rejects.
///
/// Each arm gets a feasibility budget `floor(f T / K)`. In each of the `K - 1`
/// rounds every surviving arm, in index order, receives
///
/// 1. a uniform phase of `floor((1 - g) dn_r)` pulls plus its share
///    `floor(pool / |active|)` of the pool of budgets left by eliminated arms,
/// 2. a thresholding phase of `floor(g dn_r)` pulls,
/// 3. sample-until-feasible from its remaining feasibility budget.
///
/// The arm with the lowest score is then eliminated (lowest index on ties) and its
/// unspent feasibility budget joins the pool. The survivor is returned if it is
/// empirically feasible.
pub fn run_fcsr<F: Scalar, R: Rng>(instance: &BanditInstance<F>, config: &FcsrConfig<F>, rng: R) -> Result<RunTrace<F>> {
    config.validate()?;
    let k = instance.num_arms();
    let schedule = Schedule::build(k, config.budget, config.f)?;
    let tau = config.tau;
    let mut sampler = BudgetedSampler::new(instance, rng, config.budget);

    let reserve = floor_fraction(config.f, config.budget) / k as u64;
    let mut feasibility_budget = vec![reserve; k];
    let mut pool: u64 = 0;
    let mut active: Vec<usize> = (0..k).collect();
    let mut elimination_order = Vec::with_capacity(k - 1);
    let mut round_scores = Vec::with_capacity(k - 1);

    for &dn in &schedule.delta_n {
        let share = pool / active.len() as u64;
        // remainder of the division stays in the pool
        pool -= share * active.len() as u64;
        let uniform_budget = floor_fraction(1.0 - config.g, dn) + share;
        let apt_budget = floor_fraction(config.g, dn);

        for &i in &active {
            sampler.uniform(i, uniform_budget, Phase::Uniform);
            sampler.apt(i, apt_budget, tau);
            feasibility_budget[i] = sampler.sample_until_feasible(i, feasibility_budget[i], tau);
        }

        let (eliminated, scores) = eliminate_lowest(sampler.stats(), &mut active, tau);
        pool += std::mem::take(&mut feasibility_budget[eliminated]);
        elimination_order.push(eliminated);
        round_scores.push(scores);
    }

    let decision = final_decision(sampler.stats(), active[0], tau);
    Ok(RunTrace {
        decision,
        budget: config.budget,
        pulls_total: sampler.pulls(),
        pulls_by_phase: sampler.take_phase_counts(),
        elimination_order,
        round_scores,
    })
}
