use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bandit::Decision;
use crate::scalar::Scalar;

/// Which sampling routine spent a pull.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    Uniform,
    Apt,
    Feasibility,
    Explore,
    Commit,
}

/// Everything an algorithm did in one run.
///
/// Arm indices in `elimination_order` and `round_scores` are zero-based; the
/// decision uses the one-based code with 0 for "no feasible arm".
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound(serialize = "F: Scalar"))]
pub struct RunTrace<F> {
    pub decision: Decision,
    pub budget: u64,
    pub pulls_total: u64,
    pub pulls_by_phase: BTreeMap<Phase, u64>,
    pub elimination_order: Vec<usize>,
    /// Per round, `(arm, score)` for every arm active when scores were taken.
    pub round_scores: Vec<Vec<(usize, F)>>,
}
