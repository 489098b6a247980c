#![allow(dead_code, clippy::needless_range_loop)]

//! Test-only oracles shared by the integration suites.

use fcsr_core::{AttributeDistribution, Instance};

/// Hardness quantities re-derived with plain loops from a mean matrix.
pub struct Brute {
    pub best: Option<usize>,
    pub risky: Vec<usize>,
    pub h2r: f64,
    pub hf: f64,
    pub htbp: f64,
    pub hfc: f64,
}

pub fn inv_sq(x: f64) -> f64 {
    if x == f64::INFINITY {
        0.0
    } else {
        1.0 / (x * x)
    }
}

pub fn brute(means: &[Vec<f64>], tau: f64) -> Brute {
    let k = means.len();
    let m = means[0].len();
    let mut mu = vec![0.0; k];
    for i in 0..k {
        let mut s = 0.0;
        for j in 0..m {
            s += means[i][j];
        }
        mu[i] = s / m as f64;
    }
    let mut feasible = vec![true; k];
    for i in 0..k {
        for j in 0..m {
            if means[i][j] <= tau {
                feasible[i] = false;
            }
        }
    }
    let mut best: Option<usize> = None;
    for i in 0..k {
        if feasible[i] && best.is_none_or(|b| mu[i] > mu[b]) {
            best = Some(i);
        }
    }
    let mut risky = Vec::new();
    for i in 0..k {
        if !feasible[i] && best.is_none_or(|b| mu[i] >= mu[b]) {
            risky.push(i);
        }
    }
    // rank of arm i in descending-mean order, ties by index, one-based
    let rank = |i: usize| 1 + (0..k).filter(|&l| mu[l] > mu[i] || (mu[l] == mu[i] && l < i)).count();
    let mut h2r: f64 = 0.0;
    for i in 0..k {
        let p = rank(i);
        if p >= risky.len() + 2 {
            let gap = match best {
                Some(b) => (mu[b] - mu[i]).abs(),
                None => f64::INFINITY,
            };
            h2r = h2r.max(p as f64 * inv_sq(gap));
        }
    }
    let mut hf: f64 = 0.0;
    if let Some(b) = best {
        for j in 0..m {
            hf = hf.max(k as f64 / (k as f64).ln() * inv_sq((means[b][j] - tau).abs()));
        }
    }
    let mut htbp: f64 = 0.0;
    for i in 0..k {
        if !feasible[i] {
            let mut s = 0.0;
            for j in 0..m {
                s += inv_sq((means[i][j] - tau).abs());
            }
            htbp = htbp.max(k as f64 * s);
        }
    }
    Brute {
        best,
        risky,
        h2r,
        hf,
        htbp,
        hfc: h2r.max(hf).max(htbp),
    }
}

pub fn gaussian_instance(means: &[Vec<f64>], tau: f64) -> Instance {
    let arms = means
        .iter()
        .map(|row| row.iter().map(|&mu| AttributeDistribution::gaussian(mu, 0.1).unwrap()).collect())
        .collect();
    Instance::new(arms, tau).unwrap()
}

pub fn close(a: f64, b: f64) -> bool {
    if a.is_infinite() || b.is_infinite() {
        return a == b;
    }
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1e-300)
}

