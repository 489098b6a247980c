use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Parameters of one attribute's reward distribution, as written in instance documents.
///
/// Gaussian attributes are parameterised by their **variance**, not their standard
/// deviation: `N(0.7, 0.3)` has standard deviation `sqrt(0.3) ≈ 0.548`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
#[serde(bound(deserialize = "F: Scalar"))]
pub enum DistributionKind<F> {
    Gaussian { mean: F, variance: F },
    Bernoulli { p: F },
    /// Uniform-with-replacement resampling of recorded values in [0, 1].
    Empirical { values: Vec<F> },
}

/// A validated attribute reward distribution.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DistributionKind<F>", into = "DistributionKind<F>")]
#[serde(bound(deserialize = "F: Scalar", serialize = "F: Scalar"))]
pub struct AttributeDistribution<F> {
    kind: DistributionKind<F>,
    mean: F,
    std_dev: F,
}

impl<F: Scalar> AttributeDistribution<F> {
    pub fn gaussian(mean: F, variance: F) -> Result<Self> {
        Self::try_from(DistributionKind::Gaussian { mean, variance })
    }

    pub fn bernoulli(p: F) -> Result<Self> {
        Self::try_from(DistributionKind::Bernoulli { p })
    }

    pub fn empirical(values: Vec<F>) -> Result<Self> {
        Self::try_from(DistributionKind::Empirical { values })
    }

    pub fn kind(&self) -> &DistributionKind<F> {
        &self.kind
    }

    /// Exact mean for Gaussian/Bernoulli, arithmetic average for Empirical.
    pub fn mean(&self) -> F {
        self.mean
    }

    #[inline]
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> F {
        match &self.kind {
            DistributionKind::Gaussian { .. } => {
                if self.std_dev == F::zero() {
                    self.mean
                } else {
                    self.mean + self.std_dev * F::standard_normal(rng)
                }
            }
            DistributionKind::Bernoulli { p } => {
                if F::unit_uniform(rng) < *p {
                    F::one()
                } else {
                    F::zero()
                }
            }
            DistributionKind::Empirical { values } => values[rng.random_range(0..values.len())],
        }
    }
}

impl<F: Scalar> TryFrom<DistributionKind<F>> for AttributeDistribution<F> {
    type Error = Error;

    fn try_from(kind: DistributionKind<F>) -> Result<Self> {
        let (mean, std_dev) = match &kind {
            DistributionKind::Gaussian { mean, variance } => {
                if !mean.is_finite() {
                    return Err(Error::InvalidDistribution(format!("gaussian mean {mean} is not finite")));
                }
                if !variance.is_finite() || *variance < F::zero() {
                    return Err(Error::InvalidDistribution(format!(
                        "gaussian variance must be finite and >= 0, got {variance}"
                    )));
                }
                (*mean, variance.sqrt())
            }
            DistributionKind::Bernoulli { p } => {
                if !(*p >= F::zero() && *p <= F::one()) {
                    return Err(Error::InvalidDistribution(format!("bernoulli p must lie in [0, 1], got {p}")));
                }
                (*p, F::zero())
            }
            DistributionKind::Empirical { values } => {
                if values.is_empty() {
                    return Err(Error::InvalidDistribution("empirical distribution has no values".into()));
                }
                if let Some(v) = values.iter().find(|v| !(**v >= F::zero() && **v <= F::one())) {
                    return Err(Error::InvalidDistribution(format!(
                        "empirical values must lie in [0, 1], found {v}"
                    )));
                }
                let sum = values.iter().fold(F::zero(), |acc, &v| acc + v);
                (sum / F::from_usize(values.len()).unwrap(), F::zero())
            }
        };
        Ok(Self { kind, mean, std_dev })
    }
}

impl<F> From<AttributeDistribution<F>> for DistributionKind<F> {
    fn from(d: AttributeDistribution<F>) -> Self {
        d.kind
    }
}
