//! Adversarial estimators and the data-processing bound.
//!
//! An estimator is a total lookup table from an observation alphabet to real
//! state estimates, which keeps every computation an exact finite
//! enumeration. Whatever estimators an adversary applies to the transmitted
//! sum and to the raw quantized measurement, the mutual information between
//! the two estimates never exceeds `I[V; Y^Q]`.

use crate::error::{Error, Result};
use crate::info_theory::JointPmf;
use crate::pmf::Pmf;

/// A deterministic, total map from a finite observation alphabet to
/// estimate values.
#[derive(Debug, Clone, PartialEq)]
pub struct Estimator {
    inputs: Vec<f64>,
    outputs: Vec<f64>,
}

impl Estimator {
    /// `inputs` must be strictly increasing (an alphabet); `outputs[i]` is
    /// the estimate produced on observing `inputs[i]`.
    pub fn from_table(inputs: Vec<f64>, outputs: Vec<f64>) -> Result<Self> {
        if inputs.len() != outputs.len() {
            return Err(Error::InvalidArgument(format!(
                "estimator table has {} inputs but {} outputs",
                inputs.len(),
                outputs.len()
            )));
        }
        if inputs.is_empty() {
            return Err(Error::InvalidArgument("estimator alphabet is empty".into()));
        }
        if inputs.iter().chain(&outputs).any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(
                "estimator values must be finite".into(),
            ));
        }
        if inputs.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(
                "estimator alphabet must be strictly increasing".into(),
            ));
        }
        Ok(Self { inputs, outputs })
    }

    /// The identity map on an alphabet.
    pub fn identity(alphabet: &[f64]) -> Result<Self> {
        Self::from_table(alphabet.to_vec(), alphabet.to_vec())
    }

    /// The constant map on an alphabet.
    pub fn constant(alphabet: &[f64], value: f64) -> Result<Self> {
        Self::from_table(alphabet.to_vec(), vec![value; alphabet.len()])
    }

    pub fn inputs(&self) -> &[f64] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[f64] {
        &self.outputs
    }

    /// Estimate for an observation; the observation must be one of the
    /// alphabet values exactly.
    pub fn apply(&self, x: f64) -> Result<f64> {
        self.inputs
            .binary_search_by(|v| v.total_cmp(&x))
            .map(|i| self.outputs[i])
            .map_err(|_| Error::PartialEstimator(x))
    }
}

/// Maps each value to the index of its group among the sorted distinct
/// values (grouping by exact equality).
fn group_by_value(values: &[f64]) -> (Vec<f64>, Vec<usize>) {
    let mut distinct = values.to_vec();
    distinct.sort_by(f64::total_cmp);
    distinct.dedup_by(|a, b| a.to_bits() == b.to_bits());
    let index = values
        .iter()
        .map(|v| {
            distinct
                .binary_search_by(|d| d.total_cmp(v))
                .expect("value came from the same list")
        })
        .collect();
    (distinct, index)
}

/// Both sides of the data-processing bound, by exact enumeration of the
/// joint of `(Y^Q, Z)`: returns `(lhs, rhs)` where
/// `lhs = I[h_v(V); h_y(Y^Q)]` and `rhs = I[V; Y^Q]`, so `lhs <= rhs` up to
/// rounding for every pair of estimators.
pub fn dpi_gap(p_y: &Pmf, p_z: &Pmf, h_v: &Estimator, h_y: &Estimator) -> Result<(f64, f64)> {
    let joint = JointPmf::of_sum(p_y, p_z)?;
    let rhs = joint.mutual_information();

    let v_estimates: Vec<f64> = joint
        .row_support()
        .iter()
        .map(|&v| h_v.apply(v))
        .collect::<Result<_>>()?;
    let y_estimates: Vec<f64> = joint
        .col_support()
        .iter()
        .map(|&y| h_y.apply(y))
        .collect::<Result<_>>()?;
    let (v_groups, v_index) = group_by_value(&v_estimates);
    let (y_groups, y_index) = group_by_value(&y_estimates);

    let rows = joint.row_support().len();
    let cols = joint.col_support().len();
    let mut grouped = vec![0.0; v_groups.len() * y_groups.len()];
    for m in 0..rows {
        for j in 0..cols {
            grouped[v_index[m] * y_groups.len() + y_index[j]] += joint.prob(m, j);
        }
    }
    let lhs = JointPmf::new(v_groups, y_groups, grouped)?.mutual_information();
    Ok((lhs, rhs))
}

/// The Bayes conditional-mean estimator of the quantized measurement from
/// the transmitted sum: maps each sum value `v` to `E[Y^Q | V = v]`. Sum
/// values of probability zero fall back to the prior mean (they are never
/// reached by enumeration).
pub fn mean_estimator(p_y: &Pmf, p_z: &Pmf) -> Result<Estimator> {
    let joint = JointPmf::of_sum(p_y, p_z)?;
    let p_v = joint.row_marginal();
    let prior = p_y.mean();
    let outputs: Vec<f64> = p_v
        .iter()
        .enumerate()
        .map(|(m, &mass)| {
            if mass > 0.0 {
                let weighted: f64 = joint
                    .col_support()
                    .iter()
                    .enumerate()
                    .map(|(j, &y)| joint.prob(m, j) * y)
                    .sum();
                weighted / mass
            } else {
                prior
            }
        })
        .collect();
    Estimator::from_table(joint.row_support().to_vec(), outputs)
}
