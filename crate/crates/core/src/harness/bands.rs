use serde::Serialize;

use crate::scalar::Scalar;

/// z-value of a two-sided 95% normal interval.
pub const Z_95: f64 = 1.96;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(bound(serialize = "F: Scalar"))]
pub struct ConfidenceBands<F> {
    /// Delta-method half-width `sqrt(A / (N (1 - A)))` for `ln(1 - A)`;
    /// `None` (open band) at `A = 1`.
    pub delta_band: Option<F>,
    /// Normal-approximation half-width `1.96 sqrt(A (1 - A) / N)` for `A`.
    pub bernoulli_ci: F,
}

pub fn confidence_bands<F: Scalar>(accuracy: F, trials: u64) -> ConfidenceBands<F> {
    let n = F::from_u64(trials.max(1)).unwrap();
    let one = F::one();
    let delta_band = if accuracy >= one {
        None
    } else {
        Some((accuracy / (n * (one - accuracy))).sqrt())
    };
    let bernoulli_ci = F::lit(Z_95) * (accuracy * (one - accuracy) / n).max(F::zero()).sqrt();
    ConfidenceBands { delta_band, bernoulli_ci }
}

/// `ln(1 - A)`, or `None` when `A = 1`.
pub fn log_error<F: Scalar>(accuracy: F) -> Option<F> {
    let err = F::one() - accuracy;
    (err > F::zero()).then(|| err.ln())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_accuracy() {
        let b = confidence_bands(0.5f64, 2000);
        assert!((b.bernoulli_ci - 1.96 * (0.25f64 / 2000.0).sqrt()).abs() < 1e-15);
        assert!((b.bernoulli_ci - 0.02191).abs() < 1e-5);
        assert!((b.delta_band.unwrap() - (0.5f64 / 1000.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn boundaries() {
        let z = confidence_bands(0.0f64, 100);
        assert_eq!(z.delta_band, Some(0.0));
        assert_eq!(z.bernoulli_ci, 0.0);
        let one = confidence_bands(1.0f64, 100);
        assert_eq!(one.delta_band, None);
        assert_eq!(one.bernoulli_ci, 0.0);
        assert_eq!(log_error(1.0f64), None);
        assert_eq!(log_error(0.0f64), Some(0.0));
    }

    #[test]
    fn thousand_trial_band() {
        let b = confidence_bands(0.916f64, 1000);
        assert!((b.bernoulli_ci - 0.0172).abs() < 1e-4);
    }
}
