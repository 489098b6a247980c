use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::distribution::AttributeDistribution;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// An algorithm's output: 0 flags "no feasible arm", `i >= 1` names arm `i`.
///
/// Everywhere else arms are addressed by zero-based index; the decision code is
/// the only one-based arm number, so `Decision::arm(0)` has code 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Decision(usize);

impl Decision {
    pub const INFEASIBLE: Decision = Decision(0);

    pub fn arm(index: usize) -> Self {
        Decision(index + 1)
    }

    pub fn from_code(code: usize) -> Self {
        Decision(code)
    }

    pub fn code(self) -> usize {
        self.0
    }

    pub fn arm_index(self) -> Option<usize> {
        self.0.checked_sub(1)
    }

    pub fn is_infeasible(self) -> bool {
        self.0 == 0
    }
}

impl std::fmt::Display for Decision {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Ground truth of an instance, computed from the exact distribution means.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Oracle<F> {
    /// Zero-based indices of arms whose every attribute mean is strictly above τ.
    pub feasible_set: Vec<usize>,
    pub best_arm: Decision,
    pub arm_means: Vec<F>,
    /// All feasible maximisers when there is more than one (lowest index wins).
    pub tied_best: Vec<usize>,
}

/// K arms × M attributes of reward distributions plus the feasibility threshold τ.
#[derive(Clone, Debug, PartialEq)]
pub struct BanditInstance<F> {
    arms: Vec<Vec<AttributeDistribution<F>>>,
    threshold: F,
    arm_labels: Option<Vec<String>>,
    attribute_labels: Option<Vec<String>>,
}

impl<F: Scalar> BanditInstance<F> {
    pub fn new(arms: Vec<Vec<AttributeDistribution<F>>>, threshold: F) -> Result<Self> {
        if arms.is_empty() {
            return Err(Error::InvalidInstance("instance needs at least one arm".into()));
        }
        let m = arms[0].len();
        if m == 0 {
            return Err(Error::InvalidInstance("arms need at least one attribute".into()));
        }
        if let Some((i, row)) = arms.iter().enumerate().find(|(_, row)| row.len() != m) {
            return Err(Error::InvalidInstance(format!(
                "arm {i} has {} attributes, expected {m}",
                row.len()
            )));
        }
        if threshold.is_nan() {
            return Err(Error::InvalidInstance("threshold is NaN".into()));
        }
        Ok(Self {
            arms,
            threshold,
            arm_labels: None,
            attribute_labels: None,
        })
    }

    pub fn with_arm_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.num_arms() {
            return Err(Error::InvalidInstance(format!(
                "{} arm labels for {} arms",
                labels.len(),
                self.num_arms()
            )));
        }
        self.arm_labels = Some(labels);
        Ok(self)
    }

    pub fn with_attribute_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.num_attributes() {
            return Err(Error::InvalidInstance(format!(
                "{} attribute labels for {} attributes",
                labels.len(),
                self.num_attributes()
            )));
        }
        self.attribute_labels = Some(labels);
        Ok(self)
    }

    pub fn num_arms(&self) -> usize {
        self.arms.len()
    }

    pub fn num_attributes(&self) -> usize {
        self.arms[0].len()
    }

    pub fn threshold(&self) -> F {
        self.threshold
    }

    pub fn arm(&self, i: usize) -> &[AttributeDistribution<F>] {
        &self.arms[i]
    }

    pub fn arms(&self) -> &[Vec<AttributeDistribution<F>>] {
        &self.arms
    }

    #[inline]
    pub fn attribute(&self, i: usize, j: usize) -> &AttributeDistribution<F> {
        &self.arms[i][j]
    }

    pub fn arm_labels(&self) -> Option<&[String]> {
        self.arm_labels.as_deref()
    }

    pub fn attribute_labels(&self) -> Option<&[String]> {
        self.attribute_labels.as_deref()
    }

    pub fn attribute_mean(&self, i: usize, j: usize) -> F {
        self.arms[i][j].mean()
    }

    /// Simple average of the arm's attribute means.
    pub fn true_arm_mean(&self, i: usize) -> F {
        let row = &self.arms[i];
        let sum = row.iter().fold(F::zero(), |acc, d| acc + d.mean());
        sum / F::from_usize(row.len()).unwrap()
    }

    pub fn is_feasible(&self, i: usize) -> bool {
        self.arms[i].iter().all(|d| d.mean() > self.threshold)
    }

    pub fn oracle(&self) -> Oracle<F> {
        let arm_means: Vec<F> = (0..self.num_arms()).map(|i| self.true_arm_mean(i)).collect();
        let feasible_set: Vec<usize> = (0..self.num_arms()).filter(|&i| self.is_feasible(i)).collect();
        let best_mean = feasible_set
            .iter()
            .map(|&i| arm_means[i])
            .fold(None, |acc: Option<F>, m| Some(acc.map_or(m, |a| a.max(m))));
        let (best_arm, tied_best) = match best_mean {
            None => (Decision::INFEASIBLE, Vec::new()),
            Some(best) => {
                let maximisers: Vec<usize> =
                    feasible_set.iter().copied().filter(|&i| arm_means[i] == best).collect();
                let best_arm = Decision::arm(maximisers[0]);
                let tied = if maximisers.len() > 1 { maximisers } else { Vec::new() };
                (best_arm, tied)
            }
        };
        Oracle {
            feasible_set,
            best_arm,
            arm_means,
            tied_best,
        }
    }

    /// Same instance with each arm's attributes reordered by `perm` (perm[new] = old).
    pub fn permute_attributes(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.num_attributes())?;
        let arms = self
            .arms
            .iter()
            .map(|row| perm.iter().map(|&j| row[j].clone()).collect())
            .collect();
        let mut out = Self::new(arms, self.threshold)?;
        out.arm_labels = self.arm_labels.clone();
        out.attribute_labels = self
            .attribute_labels
            .as_ref()
            .map(|l| perm.iter().map(|&j| l[j].clone()).collect());
        Ok(out)
    }

    /// Same instance with arms reordered by `perm` (perm[new] = old).
    pub fn permute_arms(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.num_arms())?;
        let arms = perm.iter().map(|&i| self.arms[i].clone()).collect();
        let mut out = Self::new(arms, self.threshold)?;
        out.attribute_labels = self.attribute_labels.clone();
        out.arm_labels = self
            .arm_labels
            .as_ref()
            .map(|l| perm.iter().map(|&i| l[i].clone()).collect());
        Ok(out)
    }

    pub fn to_document(&self) -> InstanceDocument<F> {
        InstanceDocument {
            threshold: self.threshold,
            k: self.num_arms(),
            m: self.num_attributes(),
            attribute_labels: self.attribute_labels.clone(),
            arms: self
                .arms
                .iter()
                .enumerate()
                .map(|(i, row)| ArmDocument {
                    label: self.arm_labels.as_ref().map(|l| l[i].clone()),
                    attributes: row.clone(),
                })
                .collect(),
        }
    }

    pub fn from_document(doc: InstanceDocument<F>) -> Result<Self> {
        if doc.arms.len() != doc.k {
            return Err(Error::InvalidInstance(format!("k = {} but {} arms listed", doc.k, doc.arms.len())));
        }
        if let Some((i, _)) = doc.arms.iter().enumerate().find(|(_, a)| a.attributes.len() != doc.m) {
            return Err(Error::InvalidInstance(format!("m = {} but arm {i} lists a different count", doc.m)));
        }
        let any_label = doc.arms.iter().any(|a| a.label.is_some());
        let labels: Vec<String> = doc
            .arms
            .iter()
            .enumerate()
            .map(|(i, a)| a.label.clone().unwrap_or_else(|| format!("arm {}", i + 1)))
            .collect();
        let mut inst = Self::new(doc.arms.into_iter().map(|a| a.attributes).collect(), doc.threshold)?;
        if any_label {
            inst = inst.with_arm_labels(labels)?;
        }
        if let Some(l) = doc.attribute_labels {
            inst = inst.with_attribute_labels(l)?;
        }
        Ok(inst)
    }

    pub fn to_json(&self, pretty: bool) -> Result<String> {
        let doc = self.to_document();
        Ok(if pretty {
            serde_json::to_string_pretty(&doc)?
        } else {
            serde_json::to_string(&doc)?
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_document(serde_json::from_str(text)?)
    }

    pub fn read_json(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }

    pub fn write_json(&self, path: impl AsRef<Path>, pretty: bool) -> Result<()> {
        let mut text = self.to_json(pretty)?;
        text.push('\n');
        fs::write(path, text)?;
        Ok(())
    }
}

fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if perm.len() != n {
        return Err(Error::param("perm", format!("length {} != {n}", perm.len())));
    }
    for &p in perm {
        if p >= n || seen[p] {
            return Err(Error::param("perm", "not a permutation"));
        }
        seen[p] = true;
    }
    Ok(())
}

/// On-disk instance document (JSON).
///
/// ```json
/// {"threshold": 0.5, "k": 2, "m": 1,
///  "arms": [{"label": "a", "attributes": [{"kind": "bernoulli", "p": 1.0}]},
///           {"attributes": [{"kind": "gaussian", "mean": 0.2, "variance": 0.3}]}]}
/// ```
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "F: Scalar", serialize = "F: Scalar"))]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument<F> {
    pub threshold: F,
    pub k: usize,
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub attribute_labels: Option<Vec<String>>,
    pub arms: Vec<ArmDocument<F>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "F: Scalar", serialize = "F: Scalar"))]
#[serde(deny_unknown_fields)]
pub struct ArmDocument<F> {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub attributes: Vec<AttributeDistribution<F>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bern_instance(rows: &[&[f64]], tau: f64) -> BanditInstance<f64> {
        let arms = rows
            .iter()
            .map(|r| r.iter().map(|&p| AttributeDistribution::bernoulli(p).unwrap()).collect())
            .collect();
        BanditInstance::new(arms, tau).unwrap()
    }

    #[test]
    fn oracle_basic() {
        let inst = bern_instance(&[&[0.8, 0.6], &[0.9, 0.4], &[0.55, 0.65]], 0.5);
        let o = inst.oracle();
        assert_eq!(o.feasible_set, vec![0, 2]);
        assert_eq!(o.best_arm, Decision::arm(0));
        assert_eq!(o.best_arm.code(), 1);
        assert!(o.tied_best.is_empty());
    }

    #[test]
    fn oracle_strict_threshold_and_sentinel() {
        let inst = bern_instance(&[&[0.5, 0.9], &[0.2, 0.3]], 0.5);
        let o = inst.oracle();
        assert!(o.feasible_set.is_empty());
        assert_eq!(o.best_arm, Decision::INFEASIBLE);
        assert!(o.best_arm.arm_index().is_none());
    }

    #[test]
    fn oracle_flags_ties_and_picks_lowest() {
        let inst = bern_instance(&[&[0.2, 0.2], &[0.7, 0.7], &[0.6, 0.8]], 0.5);
        let o = inst.oracle();
        assert_eq!(o.best_arm, Decision::arm(1));
        assert_eq!(o.tied_best, vec![1, 2]);
    }

    #[test]
    fn rejects_ragged_arms() {
        let arms = vec![
            vec![AttributeDistribution::bernoulli(0.5f64).unwrap()],
            vec![],
        ];
        assert!(BanditInstance::new(arms, 0.5).is_err());
        assert!(BanditInstance::<f64>::new(vec![], 0.5).is_err());
    }

    #[test]
    fn document_round_trip() {
        let inst = bern_instance(&[&[0.8, 0.6], &[0.1, 0.45]], 0.73)
            .with_attribute_labels(vec!["Comedy".into(), "Drama".into()])
            .unwrap()
            .with_arm_labels(vec!["p0".into(), "p1".into()])
            .unwrap();
        let text = inst.to_json(true).unwrap();
        let back = BanditInstance::<f64>::from_json(&text).unwrap();
        assert_eq!(back, inst);
        assert_eq!(back.to_json(true).unwrap(), text);
    }

    #[test]
    fn document_count_mismatch_is_rejected() {
        let text = r#"{"threshold":0.5,"k":2,"m":1,"arms":[{"attributes":[{"kind":"bernoulli","p":1.0}]}]}"#;
        assert!(BanditInstance::<f64>::from_json(text).is_err());
    }
}
