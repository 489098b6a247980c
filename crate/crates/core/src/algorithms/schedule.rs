use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::floor_fraction;

/// Successive-rejects budget schedule.
///
/// With `B = floor((1 - f) T)` and `nbar = 1/2 + sum_{k=2}^{K} 1/k`,
/// `n_r = ceil(B / (nbar (K + 1 - r)))` for `r = 1..K-1` and `delta_n[r] = n_r - n_{r-1}`
/// (`n_0 = 0`). Every surviving arm receives `delta_n[r]` pulls in round `r`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Schedule {
    pub num_arms: usize,
    pub budget: u64,
    pub feasibility_fraction: f64,
    /// `floor((1 - f) T)`, the part of the budget the schedule distributes.
    pub sr_budget: u64,
    pub nbar: f64,
    pub n: Vec<u64>,
    pub delta_n: Vec<u64>,
}

pub fn harmonic_normalizer(k: usize) -> f64 {
    0.5 + (2..=k).map(|i| 1.0 / i as f64).sum::<f64>()
}

impl Schedule {
    pub fn build(k: usize, budget: u64, f: f64) -> Result<Self> {
        if k < 2 {
            return Err(Error::param("K", format!("schedule needs at least 2 arms, got {k}")));
        }
        if !(0.0..1.0).contains(&f) {
            return Err(Error::param("f", format!("must lie in [0, 1), got {f}")));
        }
        let sr_budget = floor_fraction(1.0 - f, budget);
        let nbar = harmonic_normalizer(k);
        let n: Vec<u64> = (1..k)
            .map(|r| (sr_budget as f64 / (nbar * (k + 1 - r) as f64)).ceil() as u64)
            .collect();
        let delta_n = n
            .iter()
            .scan(0u64, |prev, &nr| {
                let d = nr - *prev;
                *prev = nr;
                Some(d)
            })
            .collect();
        Ok(Self {
            num_arms: k,
            budget,
            feasibility_fraction: f,
            sr_budget,
            nbar,
            n,
            delta_n,
        })
    }

    pub fn rounds(&self) -> usize {
        self.delta_n.len()
    }

    /// `sum_r (K + 1 - r) delta_n[r]`: pulls the schedule hands out when every
    /// surviving arm takes its full per-round share.
    pub fn scheduled_pulls(&self) -> u64 {
        self.delta_n
            .iter()
            .enumerate()
            .map(|(r, &d)| (self.num_arms - r) as u64 * d)
            .sum()
    }
}
