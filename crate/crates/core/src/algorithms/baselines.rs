//! Reference strategies FCSR is compared against.

use rand::Rng;

use super::sampler::BudgetedSampler;
use super::schedule::Schedule;
use super::trace::{Phase, RunTrace};
use super::{eliminate_lowest, final_decision};
use crate::bandit::{BanditInstance, Decision};
use crate::error::{Error, Result};
use crate::scalar::{floor_fraction, Scalar};

pub const DEFAULT_EXPLORE_FRACTION: f64 = 0.5;

/// Uniform sampling: `floor(T / (K M))` pulls on every attribute, then the
/// empirically feasible arm with the highest empirical mean (0 if none).
pub fn run_uniform<F: Scalar, R: Rng>(instance: &BanditInstance<F>, budget: u64, tau: F, rng: R) -> RunTrace<F> {
    let (k, m) = (instance.num_arms(), instance.num_attributes());
    let mut sampler = BudgetedSampler::new(instance, rng, budget);
    let per_attribute = budget / (k * m) as u64;
    for i in 0..k {
        sampler.uniform(i, per_attribute * m as u64, Phase::Uniform);
    }
    let stats = sampler.stats();
    let mut best: Option<(usize, F)> = None;
    for i in (0..k).filter(|&i| stats.is_empirically_feasible(i, tau)) {
        let mu = stats.arm_mean(i);
        if best.is_none_or(|(_, b)| mu > b) {
            best = Some((i, mu));
        }
    }
    RunTrace {
        decision: best.map_or(Decision::INFEASIBLE, |(i, _)| Decision::arm(i)),
        budget,
        pulls_total: sampler.pulls(),
        pulls_by_phase: sampler.take_phase_counts(),
        elimination_order: Vec::new(),
        round_scores: Vec::new(),
    }
}

/// Successive rejects with the feasibility-aware score: the full budget follows the
/// schedule (no feasibility reserve), each round samples every surviving arm
/// uniformly and drops the lowest score.
pub fn run_successive_rejects<F: Scalar, R: Rng>(
    instance: &BanditInstance<F>,
    budget: u64,
    tau: F,
    rng: R,
) -> Result<RunTrace<F>> {
    let k = instance.num_arms();
    let schedule = Schedule::build(k, budget, 0.0)?;
    let mut sampler = BudgetedSampler::new(instance, rng, budget);
    let mut active: Vec<usize> = (0..k).collect();
    let mut elimination_order = Vec::with_capacity(k - 1);
    let mut round_scores = Vec::with_capacity(k - 1);
    for &dn in &schedule.delta_n {
        for &i in &active {
            sampler.uniform(i, dn, Phase::Uniform);
        }
        let (eliminated, scores) = eliminate_lowest(sampler.stats(), &mut active, tau);
        elimination_order.push(eliminated);
        round_scores.push(scores);
    }
    Ok(RunTrace {
        decision: final_decision(sampler.stats(), active[0], tau),
        budget,
        pulls_total: sampler.pulls(),
        pulls_by_phase: sampler.take_phase_counts(),
        elimination_order,
        round_scores,
    })
}

/// Two-stage explore-then-commit.
///
/// Stage 1 spends `floor(explore_fraction T)` uniformly over all `K M` attributes;
/// the `min(M, K)` best-scoring arms become candidates. Stage 2 spreads whatever
/// budget is left uniformly over the candidates' attributes. The best-scoring
/// candidate is returned if it is empirically feasible, else 0.
pub fn run_explore_then_commit<F: Scalar, R: Rng>(
    instance: &BanditInstance<F>,
    budget: u64,
    tau: F,
    explore_fraction: f64,
    rng: R,
) -> Result<RunTrace<F>> {
    if !(explore_fraction > 0.0 && explore_fraction < 1.0) {
        return Err(Error::param(
            "explore_fraction",
            format!("must lie in (0, 1), got {explore_fraction}"),
        ));
    }
    let (k, m) = (instance.num_arms(), instance.num_attributes());
    let mut sampler = BudgetedSampler::new(instance, rng, budget);

    let explore = floor_fraction(explore_fraction, budget);
    let per_attribute = explore / (k * m) as u64;
    for i in 0..k {
        sampler.uniform(i, per_attribute * m as u64, Phase::Explore);
    }

    let ranked = rank_by_score(sampler.stats(), 0..k, tau);
    let first_scores = ranked.clone();
    let candidates: Vec<usize> = ranked.iter().take(m.min(k)).map(|&(i, _)| i).collect();

    let per_attribute = sampler.remaining() / (candidates.len() * m) as u64;
    for &i in &candidates {
        sampler.uniform(i, per_attribute * m as u64, Phase::Commit);
    }

    let final_ranking = rank_by_score(sampler.stats(), candidates.iter().copied(), tau);
    let winner = final_ranking[0].0;
    let mut eliminated: Vec<usize> = (0..k).filter(|i| !candidates.contains(i)).collect();
    eliminated.extend(final_ranking[1..].iter().rev().map(|&(i, _)| i));
    Ok(RunTrace {
        decision: final_decision(sampler.stats(), winner, tau),
        budget,
        pulls_total: sampler.pulls(),
        pulls_by_phase: sampler.take_phase_counts(),
        elimination_order: eliminated,
        round_scores: vec![first_scores, final_ranking],
    })
}

/// Arms sorted by descending score, lowest index first among equal scores.
fn rank_by_score<F: Scalar>(
    stats: &crate::bandit::StatsState<F>,
    arms: impl Iterator<Item = usize>,
    tau: F,
) -> Vec<(usize, F)> {
    let mut scored: Vec<(usize, F)> = arms.map(|i| (i, stats.score(i, tau))).collect();
    scored.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap_or(std::cmp::Ordering::Equal).then(a.0.cmp(&b.0)));
    scored
}
