//! The `design`, `sweep`, and `baselines` commands.

use privnoise::{mi_objective, solve, Error, NoiseDesign, Pmf, SolverOptions};
use std::path::{Path, PathBuf};

use crate::config::{ScenarioConfig, Sensor};
use crate::output::{self, BaselineRow, SweepRow};
use crate::CliError;

pub struct RunContext {
    pub out_dir: PathBuf,
    pub seed: u64,
}

fn solve_sensor(sensor: &Sensor, opts: &SolverOptions) -> Result<NoiseDesign, CliError> {
    solve(&sensor.problem, opts).map_err(|e| match e {
        Error::InfeasibleDistortion {
            epsilon,
            min_distortion,
        } => CliError::Infeasible(format!(
            "sensor {}: distortion budget {epsilon} is below the feasibility bound \
             min_j level(j)^2 = {min_distortion}",
            sensor.name
        )),
        other => CliError::Solver(format!("sensor {}: {other}", sensor.name)),
    })
}

/// Solve every sensor and write its distributions, sum PMF, and report.
pub fn design(config: &ScenarioConfig, ctx: &RunContext) -> Result<(), CliError> {
    let sensors = config.sensors()?;
    let opts = config.solver.to_options();
    for sensor in &sensors {
        let design = solve_sensor(sensor, &opts)?;
        write_solution_files(&ctx.out_dir, &sensor.name, sensor.problem.p_y(), &design)?;
        let report = ctx.out_dir.join(format!("{}_report.txt", sensor.name));
        output::write_report(&report, &sensor.name, sensor.problem.epsilon(), &design)?;
        append_seed(&report, ctx.seed)?;
        println!(
            "{}: mi_bits={} distortion={} lambda={}",
            sensor.name,
            output::sig(design.mi_bits),
            output::sig(design.distortion),
            output::sig(design.lambda)
        );
    }
    Ok(())
}

fn write_solution_files(
    out_dir: &Path,
    tag: &str,
    p_y: &Pmf,
    design: &NoiseDesign,
) -> Result<(), CliError> {
    output::write_distributions_csv(
        &out_dir.join(format!("{tag}_distributions.csv")),
        p_y,
        &design.p_z,
    )?;
    output::write_sum_csv(&out_dir.join(format!("{tag}_sum.csv")), p_y, &design.p_z)
}

fn append_seed(path: &Path, seed: u64) -> Result<(), CliError> {
    let mut text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot reread {}: {e}", path.display())))?;
    text.push_str(&format!("seed={seed}\n"));
    output::write_text(path, &text)
}

/// Solve each sensor across the requested budgets; infeasible budgets are
/// recorded in the status column instead of aborting the sweep.
pub fn sweep(config: &ScenarioConfig, epsilons: &[f64], ctx: &RunContext) -> Result<(), CliError> {
    for &e in epsilons {
        if e.is_nan() || e < 0.0 {
            return Err(CliError::Config(format!(
                "--epsilon values must be nonnegative, got {e}"
            )));
        }
    }
    let mut epsilons = epsilons.to_vec();
    epsilons.sort_by(f64::total_cmp);

    let sensors = config.sensors()?;
    let opts = config.solver.to_options();
    for sensor in &sensors {
        let mut rows = Vec::with_capacity(epsilons.len());
        for &eps in &epsilons {
            let result = sensor
                .problem
                .with_epsilon(Some(eps))
                .and_then(|p| solve(&p, &opts));
            let row = match result {
                Ok(d) => SweepRow {
                    epsilon: eps,
                    mi_bits: Some(d.mi_bits),
                    distortion: Some(d.distortion),
                    status: "ok",
                },
                Err(Error::InfeasibleDistortion { .. }) => SweepRow {
                    epsilon: eps,
                    mi_bits: None,
                    distortion: None,
                    status: "infeasible",
                },
                Err(Error::NotConverged { best }) => SweepRow {
                    epsilon: eps,
                    mi_bits: Some(best.mi_bits),
                    distortion: Some(best.distortion),
                    status: "not_converged",
                },
                Err(other) => {
                    return Err(CliError::Solver(format!("sensor {}: {other}", sensor.name)))
                }
            };
            rows.push(row);
        }
        output::write_sweep_csv(
            &ctx.out_dir.join(format!("{}_sweep.csv", sensor.name)),
            &rows,
        )?;
        println!("{}: {} sweep rows", sensor.name, rows.len());
    }
    Ok(())
}

/// Compare the solved design against fixed-shape noise PMFs at a glance:
/// uniform over the levels, a two-sided geometric (discrete Laplace) matched
/// to the optimal distortion, and the cheapest point mass.
pub fn baselines(config: &ScenarioConfig, ctx: &RunContext) -> Result<(), CliError> {
    let sensors = config.sensors()?;
    let opts = config.solver.to_options();
    for sensor in &sensors {
        let optimal = solve_sensor(sensor, &opts)?;
        let p_y = sensor.problem.p_y();
        let levels = sensor.spec.levels();
        let cost: Vec<f64> = levels.iter().map(|l| l * l).collect();
        let eps = sensor.problem.epsilon();
        let feasible = |d: f64| eps.is_none_or(|e| d <= e + 1e-9);

        let mut rows = vec![BaselineRow {
            baseline: "optimal",
            mi_bits: optimal.mi_bits,
            distortion: optimal.distortion,
            feasible: true,
        }];
        for (name, probs) in [
            ("uniform", vec![1.0 / levels.len() as f64; levels.len()]),
            ("geometric", geometric_matched(&cost, optimal.distortion)),
            ("point_mass", point_mass_at_cheapest(&cost)),
        ] {
            let p_z =
                Pmf::new(levels.clone(), probs).map_err(|e| CliError::Solver(e.to_string()))?;
            let mi = mi_objective(p_y, &p_z).map_err(|e| CliError::Solver(e.to_string()))?;
            let d: f64 = cost.iter().zip(p_z.probs()).map(|(c, q)| c * q).sum();
            rows.push(BaselineRow {
                baseline: name,
                mi_bits: mi,
                distortion: d,
                feasible: feasible(d),
            });
        }
        output::write_baselines_csv(
            &ctx.out_dir.join(format!("{}_baselines.csv", sensor.name)),
            &rows,
        )?;
        println!(
            "{}: optimal mi_bits={} vs uniform {} geometric {} point_mass {}",
            sensor.name,
            output::sig(rows[0].mi_bits),
            output::sig(rows[1].mi_bits),
            output::sig(rows[2].mi_bits),
            output::sig(rows[3].mi_bits)
        );
    }
    Ok(())
}

fn point_mass_at_cheapest(cost: &[f64]) -> Vec<f64> {
    let mut best = 0;
    for (k, &c) in cost.iter().enumerate() {
        if c < cost[best] {
            best = k;
        }
    }
    let mut p = vec![0.0; cost.len()];
    p[best] = 1.0;
    p
}

fn geometric_probs(n: usize, ratio: f64) -> Vec<f64> {
    let median = (n - 1) / 2;
    let mut p: Vec<f64> = (0..n)
        .map(|k| ratio.powi(k.abs_diff(median) as i32))
        .collect();
    let total: f64 = p.iter().sum();
    for q in &mut p {
        *q /= total;
    }
    p
}

/// Ratio of the two-sided geometric chosen by bisection so its distortion
/// matches `target`; clamped to the nearest achievable end when the target
/// lies outside the family's range.
fn geometric_matched(cost: &[f64], target: f64) -> Vec<f64> {
    let n = cost.len();
    let dist = |r: f64| -> f64 {
        geometric_probs(n, r)
            .iter()
            .zip(cost)
            .map(|(q, c)| q * c)
            .sum()
    };
    let mut lo = 1e-9;
    let mut hi = 1.0;
    let (d_lo, d_hi) = (dist(lo), dist(hi));
    let increasing = d_hi >= d_lo;
    let (d_min, d_max) = if increasing {
        (d_lo, d_hi)
    } else {
        (d_hi, d_lo)
    };
    if target <= d_min {
        return geometric_probs(n, if increasing { lo } else { hi });
    }
    if target >= d_max {
        return geometric_probs(n, if increasing { hi } else { lo });
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (dist(mid) < target) == increasing {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    geometric_probs(n, 0.5 * (lo + hi))
}
