//! Discrete probability mass functions on an ordered real support.
//!
//! A [`Pmf`] is the currency of the crate: quantized measurements, injected
//! noise, and their sum are all PMFs whose supports are tied to the
//! quantization levels. Entries with probability exactly zero stay in the
//! vector so that indexing against the level set remains stable.

use crate::error::{Error, Result};

/// Tolerance on `sum(probs) - 1` accepted at construction.
pub const PROB_SUM_TOL: f64 = 1e-12;

/// A probability mass function over a strictly increasing real support.
#[derive(Debug, Clone, PartialEq)]
pub struct Pmf {
    support: Vec<f64>,
    probs: Vec<f64>,
}

impl Pmf {
    /// Builds a PMF after validating the simplex invariants: the support is
    /// finite and strictly increasing, probabilities are nonnegative, and
    /// they sum to one within [`PROB_SUM_TOL`].
    pub fn new(support: Vec<f64>, probs: Vec<f64>) -> Result<Self> {
        if support.is_empty() {
            return Err(Error::InvalidPmf("support is empty".into()));
        }
        if support.len() != probs.len() {
            return Err(Error::InvalidPmf(format!(
                "support has {} values but probs has {}",
                support.len(),
                probs.len()
            )));
        }
        for &s in &support {
            if !s.is_finite() {
                return Err(Error::InvalidPmf(format!(
                    "support value {s} is not finite"
                )));
            }
        }
        for w in support.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::InvalidPmf(format!(
                    "support must be strictly increasing, got {} then {}",
                    w[0], w[1]
                )));
            }
        }
        let mut total = 0.0;
        for &p in &probs {
            if !p.is_finite() || p < 0.0 {
                return Err(Error::InvalidPmf(format!(
                    "probability {p} is not in [0, 1]"
                )));
            }
            total += p;
        }
        if (total - 1.0).abs() > PROB_SUM_TOL {
            return Err(Error::InvalidPmf(format!(
                "probabilities sum to {total}, expected 1 within {PROB_SUM_TOL:e}"
            )));
        }
        Ok(Self { support, probs })
    }

    /// PMF with all mass on `support[index]`.
    pub fn point_mass(support: Vec<f64>, index: usize) -> Result<Self> {
        if index >= support.len() {
            return Err(Error::InvalidPmf(format!(
                "point-mass index {index} out of range for support of length {}",
                support.len()
            )));
        }
        let mut probs = vec![0.0; support.len()];
        probs[index] = 1.0;
        Self::new(support, probs)
    }

    /// Uniform PMF over the given support.
    pub fn uniform(support: Vec<f64>) -> Result<Self> {
        let n = support.len();
        Self::new(support, vec![1.0 / n as f64; n])
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn support(&self) -> &[f64] {
        &self.support
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// True when both PMFs live on the same support values (bitwise equal,
    /// which holds whenever both were built from the same quantizer levels).
    pub fn same_support(&self, other: &Pmf) -> bool {
        self.support.len() == other.support.len()
            && self
                .support
                .iter()
                .zip(&other.support)
                .all(|(a, b)| a.to_bits() == b.to_bits())
    }

    /// Mean of the support under this PMF.
    pub fn mean(&self) -> f64 {
        self.support
            .iter()
            .zip(&self.probs)
            .map(|(s, p)| s * p)
            .sum()
    }

    /// Second moment `E[X^2]`; with the noise PMF this is the distortion.
    pub fn second_moment(&self) -> f64 {
        self.support
            .iter()
            .zip(&self.probs)
            .map(|(s, p)| s * s * p)
            .sum()
    }

    /// Total variation distance to another PMF on the same support.
    pub fn total_variation(&self, other: &Pmf) -> Result<f64> {
        if !self.same_support(other) {
            return Err(Error::SupportMismatch);
        }
        let sum: f64 = self
            .probs
            .iter()
            .zip(&other.probs)
            .map(|(a, b)| (a - b).abs())
            .sum();
        Ok(0.5 * sum)
    }
}
