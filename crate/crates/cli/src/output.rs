//! Plot-ready CSV and flat key=value report writers.
//!
//! All numeric cells carry 12 significant digits so that any written PMF
//! column still sums to 1 within 1e-9 after parsing, and repeated runs are
//! byte-identical.

use privnoise::{sum_pmf, NoiseDesign, Pmf};
use std::fs;
use std::io::Write;
use std::path::Path;

use crate::CliError;

/// 12 significant digits, scientific; `inf` for an unbounded budget.
pub fn sig(x: f64) -> String {
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    format!("{x:.11e}")
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)
            .map_err(|e| CliError::Io(format!("cannot create {}: {e}", dir.display())))?;
    }
    let mut f = fs::File::create(path)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", path.display())))?;
    f.write_all(contents.as_bytes())
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

/// `level,p_y,p_z` rows over the quantization levels.
pub fn write_distributions_csv(path: &Path, p_y: &Pmf, p_z: &Pmf) -> Result<(), CliError> {
    let mut s = String::from("level,p_y,p_z\n");
    for ((&level, &py), &pz) in p_y.support().iter().zip(p_y.probs()).zip(p_z.probs()) {
        s.push_str(&format!("{},{},{}\n", sig(level), sig(py), sig(pz)));
    }
    write_file(path, &s)
}

/// `v,p_v` rows over the 2N-1 sum values.
pub fn write_sum_csv(path: &Path, p_y: &Pmf, p_z: &Pmf) -> Result<(), CliError> {
    let p_v = sum_pmf(p_y, p_z).map_err(|e| CliError::Io(e.to_string()))?;
    let mut s = String::from("v,p_v\n");
    for (&v, &pv) in p_v.support().iter().zip(p_v.probs()) {
        s.push_str(&format!("{},{}\n", sig(v), sig(pv)));
    }
    write_file(path, &s)
}

/// Flat key=value report for one solved sensor.
pub fn write_report(
    path: &Path,
    sensor: &str,
    epsilon: Option<f64>,
    design: &NoiseDesign,
) -> Result<(), CliError> {
    let mut s = String::new();
    s.push_str(&format!("sensor={sensor}\n"));
    s.push_str(&format!(
        "epsilon={}\n",
        sig(epsilon.unwrap_or(f64::INFINITY))
    ));
    s.push_str(&format!("mi_bits={}\n", sig(design.mi_bits)));
    s.push_str(&format!("distortion={}\n", sig(design.distortion)));
    s.push_str(&format!("lambda={}\n", sig(design.lambda)));
    s.push_str(&format!("kkt_residual={}\n", sig(design.kkt_residual)));
    s.push_str(&format!("iterations={}\n", design.iterations));
    s.push_str(&format!("converged={}\n", design.converged));
    write_file(path, &s)
}

/// One sweep row; `None` cells are left empty.
pub struct SweepRow {
    pub epsilon: f64,
    pub mi_bits: Option<f64>,
    pub distortion: Option<f64>,
    pub status: &'static str,
}

pub fn write_sweep_csv(path: &Path, rows: &[SweepRow]) -> Result<(), CliError> {
    let mut s = String::from("epsilon,mi_bits,distortion,status\n");
    for row in rows {
        s.push_str(&format!(
            "{},{},{},{}\n",
            sig(row.epsilon),
            row.mi_bits.map(sig).unwrap_or_default(),
            row.distortion.map(sig).unwrap_or_default(),
            row.status
        ));
    }
    write_file(path, &s)
}

pub struct BaselineRow {
    pub baseline: &'static str,
    pub mi_bits: f64,
    pub distortion: f64,
    pub feasible: bool,
}

pub fn write_baselines_csv(path: &Path, rows: &[BaselineRow]) -> Result<(), CliError> {
    let mut s = String::from("baseline,mi_bits,distortion,feasible\n");
    for row in rows {
        s.push_str(&format!(
            "{},{},{},{}\n",
            row.baseline,
            sig(row.mi_bits),
            sig(row.distortion),
            row.feasible
        ));
    }
    write_file(path, &s)
}

pub fn write_text(path: &Path, contents: &str) -> Result<(), CliError> {
    write_file(path, contents)
}
