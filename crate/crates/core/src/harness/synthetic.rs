use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bandit::{AttributeDistribution, BanditInstance};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const SYNTHETIC_ARMS: usize = 10;
pub const SYNTHETIC_ATTRIBUTES: usize = 5;
/// Reward variance of every synthetic attribute (standard deviation ≈ 0.548).
pub const SYNTHETIC_VARIANCE: f64 = 0.3;

/// The four stress-test instances (10 arms × 5 Gaussian attributes).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SyntheticKind {
    /// Arm 10 is the only feasible arm; arms 1-9 have a higher mean but one
    /// attribute just below τ.
    Risky,
    /// Arm 10 is best but has one attribute just above τ; arms 1-9 are safely
    /// feasible and clearly worse.
    Feasibility,
    /// Everything feasible; arm means in arithmetic progression with step `a`.
    Mean,
    /// Five risky arms, four close competitors, and a barely-feasible best arm.
    Combined,
}

impl SyntheticKind {
    pub const ALL: [SyntheticKind; 4] = [
        SyntheticKind::Risky,
        SyntheticKind::Feasibility,
        SyntheticKind::Mean,
        SyntheticKind::Combined,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SyntheticKind::Risky => "risky",
            SyntheticKind::Feasibility => "feasibility",
            SyntheticKind::Mean => "mean",
            SyntheticKind::Combined => "combined",
        }
    }

    pub fn default_a(self) -> f64 {
        match self {
            SyntheticKind::Mean => 0.003,
            _ => 0.01,
        }
    }

    pub fn threshold(self) -> f64 {
        match self {
            SyntheticKind::Mean => 0.3,
            _ => 0.5,
        }
    }

    /// Attribute means, 10 rows of 5.
    pub fn means(self, a: f64) -> Vec<Vec<f64>> {
        let (k, m) = (SYNTHETIC_ARMS, SYNTHETIC_ATTRIBUTES);
        (1..=k)
            .map(|arm| {
                (1..=m)
                    .map(|attr| match self {
                        SyntheticKind::Risky => match (arm, attr) {
                            (10, _) => 0.7,
                            (_, 5) => 0.5 - a,
                            _ => 0.8 + a / 4.0,
                        },
                        SyntheticKind::Feasibility => match (arm, attr) {
                            (10, 5) => 0.5 + a,
                            (10, _) => 0.8,
                            _ => 0.6,
                        },
                        SyntheticKind::Mean => 0.7 - (arm - 1) as f64 * a,
                        SyntheticKind::Combined => match (arm, attr) {
                            (10, 5) => 0.5 + a,
                            (10, _) => 0.75,
                            (1..=5, 5) => 0.5 - a,
                            (1..=5, _) => 0.9 + a / 4.0,
                            _ => 0.7 - (arm - 5) as f64 * a,
                        },
                    })
                    .collect()
            })
            .collect()
    }
}

impl fmt::Display for SyntheticKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SyntheticKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SyntheticKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::UnknownInstance(s.to_string()))
    }
}

/// Builds a synthetic instance with Gaussian attributes of variance 0.3.
///
/// `a` must lie in the open interval (0.001, 0.1).
pub fn build_synthetic<F: Scalar>(kind: SyntheticKind, a: f64) -> Result<BanditInstance<F>> {
    build_synthetic_with_variance(kind, a, SYNTHETIC_VARIANCE)
}

pub fn build_synthetic_with_variance<F: Scalar>(kind: SyntheticKind, a: f64, variance: f64) -> Result<BanditInstance<F>> {
    if !(a > 0.001 && a < 0.1) {
        return Err(Error::param("a", format!("must lie in (0.001, 0.1), got {a}")));
    }
    let arms = kind
        .means(a)
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|mu| AttributeDistribution::gaussian(F::lit(mu), F::lit(variance)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    BanditInstance::new(arms, F::lit(kind.threshold()))?
        .with_arm_labels((1..=SYNTHETIC_ARMS).map(|i| format!("arm {i}")).collect())
}
