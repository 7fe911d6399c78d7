//! Stacked multiple-observation model: M i.i.d. measurement rounds with
//! i.i.d. per-round noise collapse to M copies of the one-shot problem, so
//! the stacked mutual information is exactly M times the per-step value and
//! the per-step optimal noise remains optimal for the stack. The stacked
//! problem is therefore never materialized; enumeration at small M lives in
//! the tests.

use rand::Rng;

use crate::distributions::SensorModel;
use crate::error::{Error, Result};
use crate::info_theory::mi_objective;
use crate::pmf::Pmf;
use crate::quantizer::QuantizerSpec;
use crate::solver::NoiseDesign;

/// M consecutive i.i.d. observations of one sensor, with the per-step
/// measurement PMF and noise PMF on a shared level support.
#[derive(Debug, Clone)]
pub struct StackedModel {
    base_p_y: Pmf,
    base_p_z: Pmf,
    horizon: usize,
}

impl StackedModel {
    pub fn new(base_p_y: Pmf, base_p_z: Pmf, horizon: usize) -> Result<Self> {
        if horizon < 1 {
            return Err(Error::InvalidArgument("horizon must be >= 1".into()));
        }
        if !base_p_y.same_support(&base_p_z) {
            return Err(Error::SupportMismatch);
        }
        Ok(Self {
            base_p_y,
            base_p_z,
            horizon,
        })
    }

    pub fn base_p_y(&self) -> &Pmf {
        &self.base_p_y
    }

    pub fn base_p_z(&self) -> &Pmf {
        &self.base_p_z
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }
}

/// Mutual information between the stacked transmission and the stacked
/// quantized measurements: M times the per-step value.
pub fn stacked_mi(model: &StackedModel) -> Result<f64> {
    Ok(model.horizon as f64 * mi_objective(&model.base_p_y, &model.base_p_z)?)
}

/// Streams `steps` rounds of measure -> quantize -> add sampled noise and
/// returns the plug-in mutual information of the empirical joint histogram
/// of `(V, Y^Q)`, in bits. Each round consumes one measurement draw and
/// then one noise draw from the generator, so a fixed seed fixes the
/// estimate exactly.
pub fn simulate_stream<R: Rng + ?Sized>(
    model: &SensorModel,
    spec: &QuantizerSpec,
    design: &NoiseDesign,
    steps: usize,
    rng: &mut R,
) -> Result<f64> {
    if steps < 1 {
        return Err(Error::InvalidArgument("steps must be >= 1".into()));
    }
    let levels = spec.levels();
    if design.p_z.support().len() != levels.len()
        || design
            .p_z
            .support()
            .iter()
            .zip(&levels)
            .any(|(a, b)| a.to_bits() != b.to_bits())
    {
        return Err(Error::SupportMismatch);
    }
    let n = levels.len();
    let cumulative: Vec<f64> = design
        .p_z
        .probs()
        .iter()
        .scan(0.0, |acc, &q| {
            *acc += q;
            Some(*acc)
        })
        .collect();

    let mut counts = vec![0u64; (2 * n - 1) * n];
    for _ in 0..steps {
        let y_idx = spec.quantize_index(model.sample(rng))?;
        let u: f64 = rng.gen();
        let z_idx = cumulative.partition_point(|&c| c <= u).min(n - 1);
        counts[(y_idx + z_idx) * n + y_idx] += 1;
    }

    let total = steps as f64;
    let mut row = vec![0.0; 2 * n - 1];
    let mut col = vec![0.0; n];
    for m in 0..2 * n - 1 {
        for j in 0..n {
            let q = counts[m * n + j] as f64 / total;
            row[m] += q;
            col[j] += q;
        }
    }
    let mut mi = 0.0;
    for m in 0..2 * n - 1 {
        for j in 0..n {
            let q = counts[m * n + j] as f64 / total;
            if q > 0.0 {
                mi += q * (q / (row[m] * col[j])).log2();
            }
        }
    }
    Ok(mi)
}
