use serde::Serialize;
use serde_json::{json, Value};

use crate::bandit::{BanditInstance, Decision};
use crate::error::{Error, Result};
use crate::scalar::{inverse_square, Scalar};

/// Gap quantities and hardness indices of an instance.
///
/// Infinite gaps (no feasible arm exists) are stored as `F::infinity()`; they
/// contribute 0 to every inverse-square term.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound(serialize = "F: Scalar"))]
pub struct HardnessReport<F> {
    pub num_arms: usize,
    pub num_attributes: usize,
    pub threshold: F,
    pub best_arm: Decision,
    /// `|mu_ij - tau|`, K×M.
    pub threshold_gaps: Vec<Vec<F>>,
    /// `|mu_best - mu_i|` per arm; all infinite when no feasible arm exists.
    pub suboptimality_gaps: Vec<F>,
    /// Zero-based indices of infeasible arms with mean at least the best feasible mean.
    pub risky_set: Vec<usize>,
    /// Arm indices sorted by descending true mean (ties by index).
    pub order: Vec<usize>,
    pub h2r: F,
    pub hf: F,
    pub htbp: F,
    pub hfc: F,
}

/// Evaluates the mean, feasibility and risky hardness indices.
///
/// Uses the natural logarithm for `log K`, so `K < 2` is rejected.
pub fn compute_hardness<F: Scalar>(instance: &BanditInstance<F>) -> Result<HardnessReport<F>> {
    let k = instance.num_arms();
    let m = instance.num_attributes();
    if k < 2 {
        return Err(Error::Hardness(format!("log K must be positive, got K = {k}")));
    }
    let tau = instance.threshold();
    let oracle = instance.oracle();
    let means = &oracle.arm_means;
    let feasible: Vec<bool> = (0..k).map(|i| instance.is_feasible(i)).collect();

    let threshold_gaps: Vec<Vec<F>> = (0..k)
        .map(|i| (0..m).map(|j| (instance.attribute_mean(i, j) - tau).abs()).collect())
        .collect();

    let best = oracle.best_arm.arm_index();
    let suboptimality_gaps: Vec<F> = match best {
        Some(b) => means.iter().map(|&mu| (means[b] - mu).abs()).collect(),
        None => vec![F::infinity(); k],
    };

    let risky_set: Vec<usize> = (0..k)
        .filter(|&i| !feasible[i] && best.is_none_or(|b| means[i] >= means[b]))
        .collect();

    let mut order: Vec<usize> = (0..k).collect();
    // stable sort keeps index order among equal means
    order.sort_by(|&a, &b| means[b].partial_cmp(&means[a]).unwrap_or(std::cmp::Ordering::Equal));

    // max over one-based positions p in [|R|+2, K] of p * gap^-2; empty range gives 0
    let h2r = order
        .iter()
        .enumerate()
        .map(|(pos, &arm)| (pos + 1, arm))
        .filter(|&(p, _)| p >= risky_set.len() + 2)
        .map(|(p, arm)| F::from_usize(p).unwrap() * inverse_square(suboptimality_gaps[arm]))
        .fold(F::zero(), F::max);

    let kf = F::from_usize(k).unwrap();
    let hf = match best {
        Some(b) => {
            let worst = threshold_gaps[b].iter().map(|&g| inverse_square(g)).fold(F::zero(), F::max);
            kf / kf.ln() * worst
        }
        None => F::zero(),
    };

    let htbp = kf
        * (0..k)
            .filter(|&i| !feasible[i])
            .map(|i| threshold_gaps[i].iter().fold(F::zero(), |acc, &g| acc + inverse_square(g)))
            .fold(F::zero(), F::max);

    let hfc = h2r.max(htbp).max(hf);

    Ok(HardnessReport {
        num_arms: k,
        num_attributes: m,
        threshold: tau,
        best_arm: oracle.best_arm,
        threshold_gaps,
        suboptimality_gaps,
        risky_set,
        order,
        h2r,
        hf,
        htbp,
        hfc,
    })
}

impl<F: Scalar> HardnessReport<F> {
    /// JSON view with non-finite values written as the strings "inf"/"-inf"/"nan".
    pub fn to_json_value(&self) -> Value {
        json!({
            "num_arms": self.num_arms,
            "num_attributes": self.num_attributes,
            "threshold": json_number(self.threshold),
            "best_arm": self.best_arm.code(),
            "threshold_gaps": self.threshold_gaps.iter()
                .map(|row| row.iter().map(|&g| json_number(g)).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "suboptimality_gaps": self.suboptimality_gaps.iter().map(|&g| json_number(g)).collect::<Vec<_>>(),
            "risky_set": self.risky_set,
            "order": self.order,
            "h2r": json_number(self.h2r),
            "hf": json_number(self.hf),
            "htbp": json_number(self.htbp),
            "hfc": json_number(self.hfc),
        })
    }
}

/// A finite value as a JSON number, otherwise the strings "inf", "-inf" or "nan".
pub fn json_number<F: Scalar>(x: F) -> Value {
    let v = x.to_f64_lossy();
    if v.is_finite() {
        json!(v)
    } else if v.is_nan() {
        json!("nan")
    } else if v > 0.0 {
        json!("inf")
    } else {
        json!("-inf")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bandit::AttributeDistribution;

    fn gauss(rows: &[Vec<f64>], tau: f64) -> BanditInstance<f64> {
        let arms = rows
            .iter()
            .map(|r| r.iter().map(|&m| AttributeDistribution::gaussian(m, 0.3).unwrap()).collect())
            .collect();
        BanditInstance::new(arms, tau).unwrap()
    }

    #[test]
    fn single_arm_is_an_error() {
        let inst = gauss(&[vec![0.7, 0.8]], 0.5);
        assert!(matches!(compute_hardness(&inst), Err(Error::Hardness(_))));
    }

    #[test]
    fn infeasible_instance_uses_infinite_gaps() {
        let inst = gauss(&[vec![0.4, 0.6], vec![0.3, 0.2]], 0.5);
        let r = compute_hardness(&inst).unwrap();
        assert_eq!(r.best_arm, Decision::INFEASIBLE);
        assert!(r.suboptimality_gaps.iter().all(|g| g.is_infinite()));
        assert_eq!(r.risky_set, vec![0, 1]);
        assert_eq!(r.h2r, 0.0);
        assert_eq!(r.hf, 0.0);
        let expect = 2.0 * (0.1f64.powi(-2) + 0.1f64.powi(-2)).max(0.2f64.powi(-2) + 0.3f64.powi(-2));
        assert!((r.htbp - expect).abs() / expect < 1e-12);
        assert!(r.hfc.is_finite() && !r.hfc.is_nan());
    }

    #[test]
    fn no_infeasible_arms_means_zero_htbp() {
        let inst = gauss(&[vec![0.9, 0.8], vec![0.7, 0.6]], 0.5);
        let r = compute_hardness(&inst).unwrap();
        assert_eq!(r.htbp, 0.0);
        assert!(r.risky_set.is_empty());
        assert_eq!(r.hfc, r.h2r.max(r.hf));
    }

    #[test]
    fn json_view_marks_infinity() {
        let inst = gauss(&[vec![0.4], vec![0.3]], 0.5);
        let v = compute_hardness(&inst).unwrap().to_json_value();
        assert_eq!(v["suboptimality_gaps"][0], "inf");
        assert_eq!(v["best_arm"], 0);
    }
}
