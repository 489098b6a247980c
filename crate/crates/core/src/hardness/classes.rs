//! Adversarial instance families used in the lower-bound constructions.

use crate::bandit::{AttributeDistribution, BanditInstance};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

fn bern<F: Scalar>(p: F) -> Result<AttributeDistribution<F>> {
    AttributeDistribution::bernoulli(p)
}

/// Feasibility class: `K + 1` Bernoulli instances with `K = M` and τ = 1/2.
///
/// Member 0 has every attribute at `1/2 - d` (no feasible arm); member `k >= 1`
/// lifts arm `k` (one-based) to `1/2 + d` on every attribute, making it the unique
/// feasible and best arm.
pub fn feasibility_class<F: Scalar>(d: F, k: usize) -> Result<Vec<BanditInstance<F>>> {
    let quarter = F::lit(0.25);
    if !(d > F::zero() && d <= quarter) {
        return Err(Error::param("d", format!("must lie in (0, 1/4], got {d}")));
    }
    if k < 2 {
        return Err(Error::param("k", format!("class needs K = M >= 2, got {k}")));
    }
    let half = F::lit(0.5);
    let low = bern(half - d)?;
    let high = bern(half + d)?;
    (0..=k)
        .map(|member| {
            let arms = (0..k)
                .map(|i| {
                    let dist = if member == i + 1 { &high } else { &low };
                    vec![dist.clone(); k]
                })
                .collect();
            BanditInstance::new(arms, half)?.with_arm_labels(
                (1..=k)
                    .map(|i| if member == i { format!("arm {i} (lifted)") } else { format!("arm {i}") })
                    .collect(),
            )
        })
        .collect()
}

/// Gap of arm `i` (one-based, `2 <= i <= K`) in the risky class.
pub fn risky_class_gap<F: Scalar>(beta: F, i: usize, k: usize, m: usize) -> F {
    let kf = F::from_usize(k).unwrap();
    let mf = F::from_usize(m).unwrap();
    beta * F::from_usize(i).unwrap() / (F::lit(16.0) * kf) * ((kf - F::one()) / (mf * kf)).sqrt()
}

/// Risky class: `K + M` Bernoulli instances with τ = 3/8.
///
/// * member 1 (base): arm 1 at `1/2` on every attribute, arm `i >= 2` at `1/2 - d_i`;
/// * members 2..=K: as the base, with arm `j` lifted to `1/2 + d_j`;
/// * members K+1..=K+M: as the base, with attribute `j - K` of arm 1 dropped to `1/4`,
///   making arm 1 infeasible and arm 2 best.
///
/// Returned in member order, so index 0 is the base instance.
pub fn risky_class<F: Scalar>(beta: F, k: usize, m: usize) -> Result<Vec<BanditInstance<F>>> {
    if !(beta > F::zero() && beta < F::one()) {
        return Err(Error::param("beta", format!("must lie in (0, 1), got {beta}")));
    }
    if k < 2 {
        return Err(Error::param("k", format!("must be >= 2, got {k}")));
    }
    if m < 2 {
        return Err(Error::param("m", format!("must be >= 2, got {m}")));
    }
    let tau = F::lit(3.0 / 8.0);
    let d_r = F::lit(1.0 / 8.0);
    let half = F::lit(0.5);

    let base: Vec<Vec<AttributeDistribution<F>>> = (1..=k)
        .map(|i| {
            let p = if i == 1 { tau + d_r } else { half - risky_class_gap(beta, i, k, m) };
            bern(p).map(|d| vec![d; m])
        })
        .collect::<Result<_>>()?;

    let mut members = Vec::with_capacity(k + m);
    members.push(BanditInstance::new(base.clone(), tau)?);
    for j in 2..=k {
        let mut arms = base.clone();
        arms[j - 1] = vec![bern(half + risky_class_gap(beta, j, k, m))?; m];
        members.push(BanditInstance::new(arms, tau)?);
    }
    for attr in 0..m {
        let mut arms = base.clone();
        arms[0][attr] = bern(tau - d_r)?;
        members.push(BanditInstance::new(arms, tau)?);
    }
    Ok(members)
}
