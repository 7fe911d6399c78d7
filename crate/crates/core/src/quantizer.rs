//! Uniform finite-range quantizer and the exact PMF of the quantized
//! measurement.
//!
//! The quantizer maps a real measurement onto one of `N` equally spaced
//! levels. Cells are left-open and right-closed: a value at a cell boundary
//! `level + step/2` belongs to the lower cell, and the first and last cells
//! extend to -inf and +inf respectively, so out-of-range mass saturates onto
//! the edge levels.

use crate::distributions::SensorModel;
use crate::error::{Error, Result};
use crate::pmf::Pmf;

/// Parameters of a uniform quantizer: first level, step between levels,
/// and number of levels.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantizerSpec {
    first_level: f64,
    step: f64,
    num_levels: usize,
}

impl QuantizerSpec {
    pub fn new(first_level: f64, step: f64, num_levels: usize) -> Result<Self> {
        if !first_level.is_finite() {
            return Err(Error::InvalidQuantizer(format!(
                "first_level must be finite, got {first_level}"
            )));
        }
        if !step.is_finite() || step <= 0.0 {
            return Err(Error::InvalidQuantizer(format!(
                "step must be > 0, got {step}"
            )));
        }
        if num_levels < 1 {
            return Err(Error::InvalidQuantizer("num_levels must be >= 1".into()));
        }
        let last = first_level + (num_levels as f64 - 1.0) * step;
        if !last.is_finite() {
            return Err(Error::InvalidQuantizer(format!(
                "levels overflow: last level would be {last}"
            )));
        }
        Ok(Self {
            first_level,
            step,
            num_levels,
        })
    }

    pub fn first_level(&self) -> f64 {
        self.first_level
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn num_levels(&self) -> usize {
        self.num_levels
    }

    /// The j-th quantization level (0-based): `first_level + j * step`.
    pub fn level(&self, j: usize) -> f64 {
        debug_assert!(j < self.num_levels);
        self.first_level + j as f64 * self.step
    }

    /// All `N` levels, strictly increasing.
    pub fn levels(&self) -> Vec<f64> {
        (0..self.num_levels).map(|j| self.level(j)).collect()
    }

    /// Index of the cell containing `y`. Cell `j` is
    /// `(level(j-1) + step/2, level(j) + step/2]`, with the first and last
    /// cells unbounded; boundary points go to the lower cell.
    pub fn quantize_index(&self, y: f64) -> Result<usize> {
        if !y.is_finite() {
            return Err(Error::NonFinite(y));
        }
        // cell j <=> j-1 < (y - first)/step - 1/2 <= j, so j = ceil(t)
        let t = (y - self.first_level) / self.step - 0.5;
        let j = t.ceil();
        if j <= 0.0 {
            Ok(0)
        } else if j >= (self.num_levels - 1) as f64 {
            Ok(self.num_levels - 1)
        } else {
            Ok(j as usize)
        }
    }

    /// Quantizes `y` to the level of its cell.
    pub fn quantize(&self, y: f64) -> Result<f64> {
        Ok(self.level(self.quantize_index(y)?))
    }

    /// Exact PMF of the quantized measurement: per-cell masses obtained as
    /// CDF differences at the cell edges, on the level set as support.
    pub fn quantized_pmf(&self, model: &SensorModel) -> Result<Pmf> {
        let n = self.num_levels;
        // CDF at the n-1 interior edges level(j) + step/2; outer edges are
        // -inf and +inf, contributing 0 and 1, so the masses telescope to 1.
        let mut edge_cdf = Vec::with_capacity(n + 1);
        edge_cdf.push(0.0);
        for j in 0..n - 1 {
            let f = model.cdf(self.level(j) + 0.5 * self.step);
            if !(0.0..=1.0).contains(&f) {
                return Err(Error::InvalidModel(format!(
                    "CDF returned {f} outside [0, 1]"
                )));
            }
            edge_cdf.push(f);
        }
        edge_cdf.push(1.0);
        let probs: Vec<f64> = edge_cdf
            .windows(2)
            .map(|w| (w[1] - w[0]).max(0.0))
            .collect();
        Pmf::new(self.levels(), probs)
            .map_err(|e| Error::InvalidModel(format!("improper CDF: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn spec(y1: f64, step: f64, n: usize) -> QuantizerSpec {
        QuantizerSpec::new(y1, step, n).unwrap()
    }

    #[test]
    fn levels_are_an_arithmetic_progression() {
        assert_eq!(spec(0.0, 1.0, 3).levels(), vec![0.0, 1.0, 2.0]);
    }

    #[test]
    fn levels_sensor_one_grid() {
        // y1 = pi^2 - 3*sqrt(pi), step = 6*sqrt(pi)/11
        let s = spec(PI * PI - 3.0 * PI.sqrt(), 6.0 * PI.sqrt() / 11.0, 11);
        let lv = s.levels();
        assert_eq!(lv.len(), 11);
        assert!((lv[0] - 4.552).abs() < 1e-3);
        assert!((lv[10] - 14.220).abs() < 1e-3);
        for w in lv.windows(2) {
            assert!((w[1] - w[0] - s.step()).abs() < 1e-12);
        }
    }

    #[test]
    fn single_level_quantizer() {
        let s = spec(-5.0, 2.0, 1);
        assert_eq!(s.levels(), vec![-5.0]);
        assert_eq!(s.quantize(1e9).unwrap(), -5.0);
        assert_eq!(s.quantize(-1e9).unwrap(), -5.0);
    }

    #[test]
    fn quantize_first_cell_and_boundary() {
        let s = spec(0.0, 1.0, 3);
        // first cell covers (-inf, 0.5]; the boundary point belongs to it
        assert_eq!(s.quantize(0.49).unwrap(), 0.0);
        assert_eq!(s.quantize(0.5).unwrap(), 0.0);
        assert_eq!(s.quantize(0.500001).unwrap(), 1.0);
        assert_eq!(s.quantize(1.5).unwrap(), 1.0);
        assert_eq!(s.quantize(-100.0).unwrap(), 0.0);
    }

    #[test]
    fn quantize_saturates_at_top_level() {
        let s = spec(0.0, 1.0, 3);
        assert_eq!(s.quantize(100.0).unwrap(), 2.0);
        assert_eq!(s.quantize(1.5000001).unwrap(), 2.0);
    }

    #[test]
    fn quantize_rejects_non_finite() {
        let s = spec(0.0, 1.0, 3);
        assert!(matches!(s.quantize(f64::NAN), Err(Error::NonFinite(_))));
        assert!(matches!(
            s.quantize(f64::INFINITY),
            Err(Error::NonFinite(_))
        ));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(QuantizerSpec::new(0.0, 0.0, 3).is_err());
        assert!(QuantizerSpec::new(0.0, -1.0, 3).is_err());
        assert!(QuantizerSpec::new(f64::NAN, 1.0, 3).is_err());
        assert!(QuantizerSpec::new(0.0, 1.0, 0).is_err());
    }

    #[test]
    fn pmf_of_distribution_inside_first_cell() {
        let model = SensorModel::uniform(0.0, 0.1).unwrap();
        let p = spec(0.0, 1.0, 3).quantized_pmf(&model).unwrap();
        assert_eq!(p.probs(), &[1.0, 0.0, 0.0]);
    }

    #[test]
    fn pmf_gaussian_on_mean_symmetric_grid() {
        // Levels spanning mean +- 3 sigma are symmetric about the mean, so
        // the PMF is symmetric and the center bin carries the largest mass.
        // Reference masses computed independently with scipy.stats.norm.
        let sd = PI.sqrt();
        let s = spec(PI * PI - 3.0 * sd, 6.0 * sd / 10.0, 11);
        let p = s
            .quantized_pmf(&SensorModel::gaussian(PI * PI, PI).unwrap())
            .unwrap();
        let probs = p.probs();
        for j in 0..11 {
            assert!(
                (probs[j] - probs[10 - j]).abs() < 1e-12,
                "bin {j} vs {}: {} vs {}",
                10 - j,
                probs[j],
                probs[10 - j]
            );
        }
        let center = probs[5];
        assert!(probs.iter().all(|&q| q <= center));
        assert!((center - 0.235822844377905).abs() < 1e-12);
        assert!((probs[0] - 0.003466973803041).abs() < 1e-12);
        assert!((probs[4] - 0.198028452464288).abs() < 1e-12);
    }

    #[test]
    fn pmf_gaussian_on_printed_sensor_one_grid() {
        // With step 6*sigma/11 the grid is shifted off the mean: interior
        // edges sit at mean + 6*sigma*(j-6)/11, so bins 6 and 7 tie for the
        // maximum and the top bin absorbs the remainder. Reference values
        // from scipy.stats.norm CDF differences.
        let sd = PI.sqrt();
        let s = spec(PI * PI - 3.0 * sd, 6.0 * sd / 11.0, 11);
        let p = s
            .quantized_pmf(&SensorModel::gaussian(PI * PI, PI).unwrap())
            .unwrap();
        let probs = p.probs();
        assert!((probs[5] - 0.2072795327).abs() < 1e-9);
        assert!((probs[6] - 0.2072795327).abs() < 1e-9);
        assert!(probs.iter().all(|&q| q <= probs[5] + 1e-15));
        // cells 3..=10 pair up symmetrically; the top cell absorbs the
        // mass of the two lowest mirrored cells
        for j in 2..=9 {
            assert!((probs[j] - probs[11 - j]).abs() < 1e-12);
        }
        assert!((probs[10] - (probs[0] + probs[1])).abs() < 1e-9);
        assert!((probs[0] - 0.0031930116).abs() < 1e-9);
    }

    #[test]
    fn pmf_uniform_sensor_two_grid_absorbs_tails() {
        // Levels 9.09a .. 10.908a on a uniform measurement over (9a, 11a):
        // interior bins carry exactly step/(2a) = 1/11, edge bins absorb
        // the out-of-range tails.
        let a = PI * PI / 40.0;
        let s = spec(9.09 * a, 2.0 * a / 11.0, 11);
        let model = SensorModel::uniform(PI * PI / 4.0, a).unwrap();
        let p = s.quantized_pmf(&model).unwrap();
        let probs = p.probs();
        for &q in &probs[1..10] {
            assert!((q - 1.0 / 11.0).abs() < 1e-12);
        }
        assert!((probs[0] - 0.090454545454545).abs() < 1e-12);
        assert!((probs[10] - 0.091363636363637).abs() < 1e-12);
        assert!(probs[10] > probs[0]);
    }

    #[test]
    fn pmf_sums_to_one_and_is_nonnegative() {
        let model = SensorModel::gaussian(1.3, 0.7).unwrap();
        for n in [1, 2, 5, 17] {
            let p = spec(-2.0, 0.61, n).quantized_pmf(&model).unwrap();
            let total: f64 = p.probs().iter().sum();
            assert!((total - 1.0).abs() < 1e-12);
            assert!(p.probs().iter().all(|&q| q >= 0.0));
        }
    }
}
