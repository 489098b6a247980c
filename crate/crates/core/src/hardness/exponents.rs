use serde::Serialize;

use super::report::HardnessReport;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Exponent constant of the minimax lower bound over the combined class.
pub const LOWER_BOUND_CONSTANT: f64 = 1200.0;
/// Per-class lower-bound constants (feasibility class, risky class). Kept separate
/// from [`LOWER_BOUND_CONSTANT`]; they are not reconciled with it.
pub const FEASIBILITY_CLASS_CONSTANT: f64 = 120.0;
pub const RISKY_CLASS_CONSTANT: f64 = 600.0;
pub const LOWER_BOUND_PREFACTOR: f64 = 1.0 / 6.0;

/// Predicted error exponents `c * T / (ln K * H_FC)` for a given budget.
///
/// These are qualitative predictions for comparing instances, not tight numerics.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound(serialize = "F: Scalar"))]
pub struct ExponentPrediction<F> {
    pub budget: u64,
    pub sub_gaussian_r: F,
    /// `1200 T / (ln K H_FC)`; error is at least `1/6 exp(-this)` on some instance.
    pub lower_bound_exponent: F,
    /// `T / (32 R^2 ln K H_FC)`; FCSR's error is at most `3K^2 exp(-this)`.
    pub upper_bound_exponent: F,
    pub feasibility_class_exponent: F,
    pub risky_class_exponent: F,
    pub lower_bound_prefactor: F,
    pub upper_bound_prefactor: F,
    /// `min(1, prefactor * exp(-exponent))`.
    pub lower_bound_probability: F,
    pub upper_bound_probability: F,
}

pub fn predict_exponents<F: Scalar>(report: &HardnessReport<F>, budget: u64, r: F) -> Result<ExponentPrediction<F>> {
    if !r.is_finite() || r <= F::zero() {
        return Err(Error::param("R", format!("sub-Gaussian parameter must be positive, got {r}")));
    }
    if report.hfc.is_nan() || report.hfc <= F::zero() {
        return Err(Error::VacuousPrediction(format!(
            "H_FC = {} so the bounds carry no information",
            report.hfc
        )));
    }
    let k = F::from_usize(report.num_arms).unwrap();
    let t = F::from_u64(budget).unwrap();
    // budget / (ln K * H_FC); an infinite H_FC gives 0
    let base = t / (k.ln() * report.hfc);
    let lower = F::lit(LOWER_BOUND_CONSTANT) * base;
    let upper = base / (F::lit(32.0) * r * r);
    let lower_pref = F::lit(LOWER_BOUND_PREFACTOR);
    let upper_pref = F::lit(3.0) * k * k;
    Ok(ExponentPrediction {
        budget,
        sub_gaussian_r: r,
        lower_bound_exponent: lower,
        upper_bound_exponent: upper,
        feasibility_class_exponent: F::lit(FEASIBILITY_CLASS_CONSTANT) * base,
        risky_class_exponent: F::lit(RISKY_CLASS_CONSTANT) * base,
        lower_bound_prefactor: lower_pref,
        upper_bound_prefactor: upper_pref,
        lower_bound_probability: (lower_pref * (-lower).exp()).min(F::one()),
        upper_bound_probability: (upper_pref * (-upper).exp()).min(F::one()),
    })
}
