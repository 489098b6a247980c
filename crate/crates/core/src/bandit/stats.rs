use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Running reward sums, pull counts and empirical means for every (arm, attribute).
///
/// `muhat[i][j] = S[i][j] / max(C[i][j], 1)` holds after every update, so an
/// attribute that was never pulled reads as 0.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "F: Scalar", serialize = "F: Scalar"))]
pub struct StatsState<F> {
    arms: usize,
    attributes: usize,
    sums: Vec<F>,
    counts: Vec<u64>,
    means: Vec<F>,
    total: u64,
}

impl<F: Scalar> StatsState<F> {
    pub fn new(arms: usize, attributes: usize) -> Self {
        let n = arms * attributes;
        Self {
            arms,
            attributes,
            sums: vec![F::zero(); n],
            counts: vec![0; n],
            means: vec![F::zero(); n],
            total: 0,
        }
    }

    /// State seeded with given per-cell sums and counts (row-major K×M).
    pub fn from_parts(arms: usize, attributes: usize, sums: Vec<F>, counts: Vec<u64>) -> Result<Self> {
        let n = arms * attributes;
        if sums.len() != n || counts.len() != n {
            return Err(Error::param("stats", format!("expected {n} cells")));
        }
        let means = sums
            .iter()
            .zip(&counts)
            .map(|(&s, &c)| s / F::from_u64(c.max(1)).unwrap())
            .collect();
        let total = counts.iter().sum();
        Ok(Self {
            arms,
            attributes,
            sums,
            counts,
            means,
            total,
        })
    }

    pub fn num_arms(&self) -> usize {
        self.arms
    }

    pub fn num_attributes(&self) -> usize {
        self.attributes
    }

    #[inline]
    fn cell(&self, i: usize, j: usize) -> usize {
        i * self.attributes + j
    }

    /// Adds one observed reward to cell (i, j); no other cell is touched.
    pub fn update(&mut self, i: usize, j: usize, x: F) -> Result<()> {
        if i >= self.arms || j >= self.attributes {
            return Err(Error::IndexOutOfRange {
                arm: i,
                attribute: j,
                arms: self.arms,
                attributes: self.attributes,
            });
        }
        self.record(i, j, x);
        Ok(())
    }

    #[inline]
    pub(crate) fn record(&mut self, i: usize, j: usize, x: F) {
        let c = self.cell(i, j);
        self.sums[c] = self.sums[c] + x;
        self.counts[c] += 1;
        // counts[c] >= 1 here, so the max(C, 1) guard is implicit
        self.means[c] = self.sums[c] / F::from_u64(self.counts[c]).unwrap();
        self.total += 1;
    }

    #[inline]
    pub fn sum(&self, i: usize, j: usize) -> F {
        self.sums[self.cell(i, j)]
    }

    #[inline]
    pub fn count(&self, i: usize, j: usize) -> u64 {
        self.counts[self.cell(i, j)]
    }

    #[inline]
    pub fn mean(&self, i: usize, j: usize) -> F {
        self.means[self.cell(i, j)]
    }

    pub fn mean_row(&self, i: usize) -> &[F] {
        let start = i * self.attributes;
        &self.means[start..start + self.attributes]
    }

    pub fn count_row(&self, i: usize) -> &[u64] {
        let start = i * self.attributes;
        &self.counts[start..start + self.attributes]
    }

    /// Total number of samples recorded so far.
    pub fn total_pulls(&self) -> u64 {
        self.total
    }

    /// Arm-level empirical mean: average of the attribute empirical means.
    pub fn arm_mean(&self, i: usize) -> F {
        arm_mean_of(self.mean_row(i))
    }

    pub fn min_attribute_mean(&self, i: usize) -> F {
        min_of(self.mean_row(i))
    }

    pub fn is_empirically_feasible(&self, i: usize, tau: F) -> bool {
        self.min_attribute_mean(i) > tau
    }

    /// Elimination score of arm `i`.
    pub fn score(&self, i: usize, tau: F) -> F {
        score_row(self.mean_row(i), tau)
    }
}

fn arm_mean_of<F: Scalar>(row: &[F]) -> F {
    row.iter().fold(F::zero(), |acc, &m| acc + m) / F::from_usize(row.len()).unwrap()
}

fn min_of<F: Scalar>(row: &[F]) -> F {
    row.iter().copied().fold(F::infinity(), F::min)
}

/// Score of a row of attribute empirical means: the arm mean when every attribute
/// is strictly above `tau`, otherwise the smallest attribute mean.
pub fn score_row<F: Scalar>(row: &[F], tau: F) -> F {
    let min = min_of(row);
    if min > tau {
        arm_mean_of(row)
    } else {
        min
    }
}
