//! The built-in two-sensor reference scenario and its pinned results.
//!
//! Sensor 1 is a Gaussian measurement (mean pi^2, variance pi) quantized
//! onto 11 levels spanning mean +- 3 sigma; sensor 2 is a uniform
//! measurement (mean pi^2/4, half-width a = pi^2/40) quantized onto 11
//! levels from 9.09a with step 2a/11. Each sensor is solved unconstrained
//! and at two active budgets, and the two unconstrained distortions are
//! checked against their pinned reference values within 2%.

use privnoise::{solve, QuantizerSpec, SensorModel, SolverOptions};
use std::f64::consts::PI;

use crate::commands::RunContext;
use crate::output;
use crate::CliError;

pub const SENSOR1_EXPECTED_DISTORTION: f64 = 105.03;
pub const SENSOR2_EXPECTED_DISTORTION: f64 = 6.10;
pub const DISTORTION_RTOL: f64 = 0.02;

pub struct ReferenceSensor {
    pub name: &'static str,
    pub model: SensorModel,
    pub spec: QuantizerSpec,
    pub budgets: [f64; 2],
    pub expected_distortion: f64,
}

/// The two reference sensors with their constrained budgets.
pub fn reference_sensors() -> Vec<ReferenceSensor> {
    let sd1 = PI.sqrt();
    let a = PI * PI / 40.0;
    vec![
        ReferenceSensor {
            name: "sensor1",
            model: SensorModel::gaussian(PI * PI, PI).expect("valid"),
            spec: QuantizerSpec::new(PI * PI - 3.0 * sd1, 6.0 * sd1 / 10.0, 11).expect("valid"),
            budgets: [60.0, 40.0],
            expected_distortion: SENSOR1_EXPECTED_DISTORTION,
        },
        ReferenceSensor {
            name: "sensor2",
            model: SensorModel::uniform(PI * PI / 4.0, a).expect("valid"),
            spec: QuantizerSpec::new(9.09 * a, 2.0 * a / 11.0, 11).expect("valid"),
            budgets: [5.6, 5.1],
            expected_distortion: SENSOR2_EXPECTED_DISTORTION,
        },
    ]
}

fn budget_tag(eps: Option<f64>) -> String {
    match eps {
        None => "unconstrained".into(),
        Some(e) => format!("eps{e}").replace('.', "p"),
    }
}

pub fn run(ctx: &RunContext) -> Result<(), CliError> {
    let opts = SolverOptions::default();
    let mut summary = String::new();
    let mut mismatches = Vec::new();

    for sensor in reference_sensors() {
        let p_y = sensor
            .spec
            .quantized_pmf(&sensor.model)
            .map_err(|e| CliError::Solver(format!("{}: {e}", sensor.name)))?;
        let mut unconstrained_distortion = f64::NAN;
        for eps in [None, Some(sensor.budgets[0]), Some(sensor.budgets[1])] {
            let problem = privnoise::DesignProblem::new(p_y.clone(), sensor.spec.clone(), eps)
                .map_err(|e| CliError::Solver(format!("{}: {e}", sensor.name)))?;
            let design = solve(&problem, &opts)
                .map_err(|e| CliError::Solver(format!("{}: {e}", sensor.name)))?;
            let tag = format!("{}_{}", sensor.name, budget_tag(eps));
            output::write_distributions_csv(
                &ctx.out_dir.join(format!("{tag}_distributions.csv")),
                &p_y,
                &design.p_z,
            )?;
            output::write_sum_csv(
                &ctx.out_dir.join(format!("{tag}_sum.csv")),
                &p_y,
                &design.p_z,
            )?;
            summary.push_str(&format!("{tag}_mi_bits={}\n", output::sig(design.mi_bits)));
            summary.push_str(&format!(
                "{tag}_distortion={}\n",
                output::sig(design.distortion)
            ));
            summary.push_str(&format!("{tag}_lambda={}\n", output::sig(design.lambda)));
            summary.push_str(&format!(
                "{tag}_kkt_residual={}\n",
                output::sig(design.kkt_residual)
            ));
            summary.push_str(&format!("{tag}_converged={}\n", design.converged));
            if let Some(e) = eps {
                let active = (e - design.distortion).abs() <= 1e-4 * e;
                summary.push_str(&format!("{tag}_constraint_active={active}\n"));
            } else {
                unconstrained_distortion = design.distortion;
            }
        }
        let expected = sensor.expected_distortion;
        let within = (unconstrained_distortion - expected).abs() <= DISTORTION_RTOL * expected;
        summary.push_str(&format!(
            "{}_expected_distortion={}\n",
            sensor.name,
            output::sig(expected)
        ));
        summary.push_str(&format!("{}_within_tolerance={within}\n", sensor.name));
        if !within {
            mismatches.push(format!(
                "{}: achieved unconstrained distortion {} vs expected {} (tolerance {}%)",
                sensor.name,
                output::sig(unconstrained_distortion),
                output::sig(expected),
                DISTORTION_RTOL * 100.0
            ));
        }
        println!(
            "{}: unconstrained distortion {} (expected {}, within {}%: {})",
            sensor.name,
            output::sig(unconstrained_distortion),
            output::sig(expected),
            DISTORTION_RTOL * 100.0,
            within
        );
    }
    summary.push_str(&format!("seed={}\n", ctx.seed));
    output::write_text(&ctx.out_dir.join("repro_summary.txt"), &summary)?;

    if mismatches.is_empty() {
        Ok(())
    } else {
        Err(CliError::ReproMismatch(mismatches.join("; ")))
    }
}
