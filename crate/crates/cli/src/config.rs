//! Scenario configuration: one file describes the sensors, their
//! quantizers, optional distortion budgets, and solver options.
//!
//! Numeric fields are plain decimals; nothing is evaluated.

use privnoise::{DesignProblem, QuantizerSpec, SensorModel, SolverOptions};
use serde::Deserialize;
use std::path::Path;

use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    /// Seed reserved for sampling-based validation paths; the four
    /// commands are exact computations and do not consume it.
    #[serde(default)]
    pub seed: u64,
    pub out_dir: Option<String>,
    #[serde(default)]
    pub solver: SolverConfig,
    #[serde(default)]
    pub sensor: Vec<SensorConfig>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverConfig {
    pub max_outer_iterations: Option<usize>,
    pub max_inner_iterations: Option<usize>,
    pub objective_tolerance: Option<f64>,
    pub kkt_tolerance: Option<f64>,
    pub probability_floor: Option<f64>,
}

impl SolverConfig {
    pub fn to_options(&self) -> SolverOptions {
        let mut opts = SolverOptions::default();
        if let Some(v) = self.max_outer_iterations {
            opts.max_outer_iterations = v;
        }
        if let Some(v) = self.max_inner_iterations {
            opts.max_inner_iterations = v;
        }
        if let Some(v) = self.objective_tolerance {
            opts.objective_tolerance = v;
        }
        if let Some(v) = self.kkt_tolerance {
            opts.kkt_tolerance = v;
        }
        if let Some(v) = self.probability_floor {
            opts.probability_floor = v;
        }
        opts
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SensorConfig {
    pub name: Option<String>,
    pub mean: f64,
    pub noise: NoiseConfig,
    pub quantizer: QuantizerConfig,
    pub epsilon: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "law", rename_all = "lowercase", deny_unknown_fields)]
pub enum NoiseConfig {
    Gaussian { variance: f64 },
    Uniform { half_width: f64 },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuantizerConfig {
    pub first_level: f64,
    pub step: f64,
    pub num_levels: usize,
}

/// A fully validated sensor: quantizer, problem, and output name.
pub struct Sensor {
    pub name: String,
    pub spec: QuantizerSpec,
    pub problem: DesignProblem,
}

impl ScenarioConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text)
            .map_err(|e| CliError::Config(format!("invalid config {}: {e}", path.display())))
    }

    /// Validates every sensor block and builds the per-sensor problems.
    pub fn sensors(&self) -> Result<Vec<Sensor>, CliError> {
        if self.sensor.is_empty() {
            return Err(CliError::Config(
                "config field `sensor` must contain at least one sensor block".into(),
            ));
        }
        let mut out = Vec::with_capacity(self.sensor.len());
        for (i, sc) in self.sensor.iter().enumerate() {
            let name = sc
                .name
                .clone()
                .unwrap_or_else(|| format!("sensor{}", i + 1));
            let field = |f: &str| format!("sensor[{i}] ({name}).{f}");
            let model = match sc.noise {
                NoiseConfig::Gaussian { variance } => SensorModel::gaussian(sc.mean, variance)
                    .map_err(|e| CliError::Config(format!("{}: {e}", field("noise.variance"))))?,
                NoiseConfig::Uniform { half_width } => SensorModel::uniform(sc.mean, half_width)
                    .map_err(|e| CliError::Config(format!("{}: {e}", field("noise.half_width"))))?,
            };
            let spec = QuantizerSpec::new(
                sc.quantizer.first_level,
                sc.quantizer.step,
                sc.quantizer.num_levels,
            )
            .map_err(|e| CliError::Config(format!("{}: {e}", field("quantizer"))))?;
            if let Some(eps) = sc.epsilon {
                if eps.is_nan() || eps < 0.0 {
                    return Err(CliError::Config(format!(
                        "{}: must be nonnegative, got {eps}",
                        field("epsilon")
                    )));
                }
            }
            let p_y = spec
                .quantized_pmf(&model)
                .map_err(|e| CliError::Config(format!("{}: {e}", field("quantizer"))))?;
            let problem = DesignProblem::new(p_y, spec.clone(), sc.epsilon)
                .map_err(|e| CliError::Config(format!("{}: {e}", field("epsilon"))))?;
            out.push(Sensor {
                name,
                spec,
                problem,
            });
        }
        let mut names: Vec<&str> = out.iter().map(|s| s.name.as_str()).collect();
        names.sort_unstable();
        if names.windows(2).any(|w| w[0] == w[1]) {
            return Err(CliError::Config("sensor names must be unique".into()));
        }
        Ok(out)
    }
}
