//! Continuous sensor models: a deterministic mean plus zero-mean noise.
//!
//! Only the two noise laws used by the measurement model are built in
//! (Gaussian and symmetric uniform); everything downstream consumes the
//! model through its CDF and sampler, so further laws are additive.

use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::pmf::Pmf;
use crate::quantizer::QuantizerSpec;

/// Zero-mean noise law of a sensor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NoiseLaw {
    /// Gaussian with the given variance.
    Gaussian { variance: f64 },
    /// Uniform on `(-half_width, half_width)`.
    Uniform { half_width: f64 },
}

/// A sensor measurement `Y = mean + W` with `W` drawn from a zero-mean law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SensorModel {
    mean: f64,
    noise: NoiseLaw,
}

impl SensorModel {
    pub fn new(mean: f64, noise: NoiseLaw) -> Result<Self> {
        if !mean.is_finite() {
            return Err(Error::InvalidModel(format!(
                "mean must be finite, got {mean}"
            )));
        }
        match noise {
            NoiseLaw::Gaussian { variance } => {
                if !variance.is_finite() || variance <= 0.0 {
                    return Err(Error::InvalidModel(format!(
                        "gaussian variance must be > 0, got {variance}"
                    )));
                }
            }
            NoiseLaw::Uniform { half_width } => {
                if !half_width.is_finite() || half_width <= 0.0 {
                    return Err(Error::InvalidModel(format!(
                        "uniform half-width must be > 0, got {half_width}"
                    )));
                }
            }
        }
        Ok(Self { mean, noise })
    }

    pub fn gaussian(mean: f64, variance: f64) -> Result<Self> {
        Self::new(mean, NoiseLaw::Gaussian { variance })
    }

    pub fn uniform(mean: f64, half_width: f64) -> Result<Self> {
        Self::new(mean, NoiseLaw::Uniform { half_width })
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn noise(&self) -> NoiseLaw {
        self.noise
    }

    /// `Pr[Y <= x]`.
    pub fn cdf(&self, x: f64) -> f64 {
        match self.noise {
            NoiseLaw::Gaussian { variance } => {
                let z = (x - self.mean) / variance.sqrt();
                // Phi(z) = erfc(-z / sqrt(2)) / 2
                0.5 * libm::erfc(-z / std::f64::consts::SQRT_2)
            }
            NoiseLaw::Uniform { half_width } => {
                let t = (x - (self.mean - half_width)) / (2.0 * half_width);
                t.clamp(0.0, 1.0)
            }
        }
    }

    /// One draw of `Y`. Deterministic for a fixed generator state.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self.noise {
            NoiseLaw::Gaussian { variance } => {
                let normal =
                    Normal::new(self.mean, variance.sqrt()).expect("validated at construction");
                normal.sample(rng)
            }
            NoiseLaw::Uniform { half_width } => {
                let u: f64 = rng.gen();
                self.mean - half_width + 2.0 * half_width * u
            }
        }
    }
}

/// Normalized histogram of quantized samples over the quantizer's levels.
pub fn empirical_pmf(samples: &[f64], spec: &QuantizerSpec) -> Result<Pmf> {
    if samples.is_empty() {
        return Err(Error::EmptySamples);
    }
    let mut counts = vec![0u64; spec.num_levels()];
    for &y in samples {
        counts[spec.quantize_index(y)?] += 1;
    }
    let total = samples.len() as f64;
    let probs = counts.iter().map(|&c| c as f64 / total).collect();
    Pmf::new(spec.levels(), probs)
}
