use std::collections::BTreeMap;

use rand::Rng;

use super::trace::Phase;
use crate::bandit::{BanditInstance, StatsState};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A learner's view of an instance: draws rewards, keeps the global statistics and
/// refuses any pull beyond the budget.
///
/// Every phase routine stops early once the budget is spent, so no algorithm built
/// on this type can exceed `T` pulls.
pub struct BudgetedSampler<'a, F, R> {
    instance: &'a BanditInstance<F>,
    stats: StatsState<F>,
    rng: R,
    budget: u64,
    pulls: u64,
    by_phase: BTreeMap<Phase, u64>,
}

impl<'a, F: Scalar, R: Rng> BudgetedSampler<'a, F, R> {
    pub fn new(instance: &'a BanditInstance<F>, rng: R, budget: u64) -> Self {
        let stats = StatsState::new(instance.num_arms(), instance.num_attributes());
        Self {
            instance,
            stats,
            rng,
            budget,
            pulls: 0,
            by_phase: BTreeMap::new(),
        }
    }

    /// Continues from existing statistics. Pulls already in `stats` do not count
    /// against `budget`.
    pub fn with_stats(instance: &'a BanditInstance<F>, stats: StatsState<F>, rng: R, budget: u64) -> Result<Self> {
        if stats.num_arms() != instance.num_arms() || stats.num_attributes() != instance.num_attributes() {
            return Err(Error::param("stats", "shape does not match the instance"));
        }
        Ok(Self {
            instance,
            stats,
            rng,
            budget,
            pulls: 0,
            by_phase: BTreeMap::new(),
        })
    }

    pub fn stats(&self) -> &StatsState<F> {
        &self.stats
    }

    pub fn into_stats(self) -> StatsState<F> {
        self.stats
    }

    pub fn pulls(&self) -> u64 {
        self.pulls
    }

    pub fn remaining(&self) -> u64 {
        self.budget - self.pulls
    }

    pub fn pulls_by_phase(&self) -> &BTreeMap<Phase, u64> {
        &self.by_phase
    }

    pub(crate) fn take_phase_counts(&mut self) -> BTreeMap<Phase, u64> {
        std::mem::take(&mut self.by_phase)
    }

    /// Draws one reward from (arm, attribute). Returns false, without sampling,
    /// when the budget is exhausted.
    #[inline]
    pub fn pull(&mut self, arm: usize, attribute: usize, phase: Phase) -> bool {
        if self.pulls >= self.budget {
            return false;
        }
        let x = self.instance.attribute(arm, attribute).sample(&mut self.rng);
        self.stats.record(arm, attribute, x);
        self.pulls += 1;
        *self.by_phase.entry(phase).or_insert(0) += 1;
        true
    }

    /// `floor(budget / M)` pulls on each attribute of `arm`, attribute by attribute.
    /// The remainder `budget mod M` is not spent. Returns the pulls made.
    pub fn uniform(&mut self, arm: usize, budget: u64, phase: Phase) -> u64 {
        let m = self.instance.num_attributes();
        let per_attribute = budget / m as u64;
        let start = self.pulls;
        'outer: for j in 0..m {
            for _ in 0..per_attribute {
                if !self.pull(arm, j, phase) {
                    break 'outer;
                }
            }
        }
        self.pulls - start
    }

    /// Thresholding allocation over the attributes of `arm`: each step pulls
    /// `argmin_j sqrt(C_ij) |muhat_ij - tau|`, lowest index on ties. Returns the pulls made.
    pub fn apt(&mut self, arm: usize, budget: u64, tau: F) -> u64 {
        let start = self.pulls;
        for _ in 0..budget {
            let j = apt_choice(self.stats.count_row(arm), self.stats.mean_row(arm), tau);
            if !self.pull(arm, j, Phase::Apt) {
                break;
            }
        }
        self.pulls - start
    }

    /// Repeatedly samples the lowest-index attribute of `arm` whose empirical mean
    /// is at most `tau` until it rises strictly above `tau`, spending one unit of
    /// `feasibility_budget` per pull. Stops when every attribute is empirically
    /// feasible or the budget is spent, and returns the unspent feasibility budget.
    pub fn sample_until_feasible(&mut self, arm: usize, mut feasibility_budget: u64, tau: F) -> u64 {
        while feasibility_budget >= 1 {
            let Some(j) = self.stats.mean_row(arm).iter().position(|&mu| mu <= tau) else {
                break;
            };
            while self.stats.mean(arm, j) <= tau {
                if !self.pull(arm, j, Phase::Feasibility) {
                    return feasibility_budget;
                }
                feasibility_budget -= 1;
                if feasibility_budget == 0 {
                    break;
                }
            }
        }
        feasibility_budget
    }
}

/// Attribute the thresholding rule pulls next.
pub fn apt_choice<F: Scalar>(counts: &[u64], means: &[F], tau: F) -> usize {
    let mut best = 0;
    let mut best_index = F::infinity();
    for (j, (&c, &mu)) in counts.iter().zip(means).enumerate() {
        let b = F::from_u64(c).unwrap().sqrt() * (mu - tau).abs();
        if b < best_index {
            best = j;
            best_index = b;
        }
    }
    best
}
