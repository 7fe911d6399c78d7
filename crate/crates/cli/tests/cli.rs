//! End-to-end checks of the binary: exit codes, file schemas, and
//! byte-level determinism of every artifact.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_privnoise"))
}

fn write_config(dir: &Path, body: &str) -> std::path::PathBuf {
    let path = dir.join("scenario.toml");
    fs::write(&path, body).unwrap();
    path
}

const TWO_SENSOR_CONFIG: &str = r#"
seed = 7

[[sensor]]
name = "gauss"
mean = 9.8696044010893586
noise = { law = "gaussian", variance = 3.141592653589793 }
quantizer = { first_level = 4.55224284837281, step = 1.0634723105433096, num_levels = 11 }
epsilon = 60.0

[[sensor]]
name = "unif"
mean = 2.4674011002723395
noise = { law = "uniform", half_width = 0.2467401100272339 }
quantizer = { first_level = 2.2428676001475565, step = 0.04486183818676981, num_levels = 11 }
"#;

fn parse_csv(path: &Path) -> (String, Vec<Vec<String>>) {
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap().to_string();
    let rows = lines
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect();
    (header, rows)
}

fn column_sum(rows: &[Vec<String>], col: usize) -> f64 {
    rows.iter()
        .filter(|r| !r[col].is_empty())
        .map(|r| r[col].parse::<f64>().unwrap())
        .sum()
}

#[test]
fn design_writes_expected_files_and_normalized_columns() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), TWO_SENSOR_CONFIG);
    let out = dir.path().join("results");
    let status = bin()
        .arg("design")
        .arg(&config)
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());

    for name in ["gauss", "unif"] {
        let (header, rows) = parse_csv(&out.join(format!("{name}_distributions.csv")));
        assert_eq!(header, "level,p_y,p_z");
        assert_eq!(rows.len(), 11);
        assert!((column_sum(&rows, 1) - 1.0).abs() < 1e-9);
        assert!((column_sum(&rows, 2) - 1.0).abs() < 1e-9);

        let (header, rows) = parse_csv(&out.join(format!("{name}_sum.csv")));
        assert_eq!(header, "v,p_v");
        assert_eq!(rows.len(), 21);
        assert!((column_sum(&rows, 1) - 1.0).abs() < 1e-9);

        let report = fs::read_to_string(out.join(format!("{name}_report.txt"))).unwrap();
        for key in [
            "mi_bits=",
            "distortion=",
            "lambda=",
            "kkt_residual=",
            "iterations=",
            "converged=true",
        ] {
            assert!(report.contains(key), "{name} report missing {key}");
        }
    }
    // the constrained sensor reports an active budget
    let report = fs::read_to_string(out.join("gauss_report.txt")).unwrap();
    let dist: f64 = report
        .lines()
        .find_map(|l| l.strip_prefix("distortion="))
        .unwrap()
        .parse()
        .unwrap();
    assert!((dist - 60.0).abs() <= 60.0 * 1e-4);
}

#[test]
fn design_unconstrained_gaussian_sensor_reports_reference_distortion() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        r#"
[[sensor]]
name = "gauss"
mean = 9.8696044010893586
noise = { law = "gaussian", variance = 3.141592653589793 }
quantizer = { first_level = 4.55224284837281, step = 1.0634723105433096, num_levels = 11 }
"#,
    );
    let out = dir.path().join("results");
    assert!(bin()
        .arg("design")
        .arg(&config)
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap()
        .success());
    let report = fs::read_to_string(out.join("gauss_report.txt")).unwrap();
    let dist: f64 = report
        .lines()
        .find_map(|l| l.strip_prefix("distortion="))
        .unwrap()
        .parse()
        .unwrap();
    assert!((dist - 105.03).abs() <= 0.02 * 105.03, "distortion {dist}");
    assert!(report.contains("lambda=0.00000000000e0"));
}

#[test]
fn design_outputs_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), TWO_SENSOR_CONFIG);
    let out_a = dir.path().join("a");
    let out_b = dir.path().join("b");
    for out in [&out_a, &out_b] {
        assert!(bin()
            .arg("design")
            .arg(&config)
            .arg("--out")
            .arg(out)
            .status()
            .unwrap()
            .success());
    }
    for name in ["gauss", "unif"] {
        for suffix in ["distributions.csv", "sum.csv", "report.txt"] {
            let a = fs::read(out_a.join(format!("{name}_{suffix}"))).unwrap();
            let b = fs::read(out_b.join(format!("{name}_{suffix}"))).unwrap();
            assert_eq!(a, b, "{name}_{suffix} differs between runs");
        }
    }
}

#[test]
fn invalid_configs_exit_2_and_name_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("", "sensor"),
        (
            r#"
[[sensor]]
mean = 1.0
noise = { law = "gaussian", variance = -1.0 }
quantizer = { first_level = 0.0, step = 1.0, num_levels = 3 }
"#,
            "variance",
        ),
        (
            r#"
[[sensor]]
mean = 1.0
noise = { law = "gaussian", variance = 1.0 }
quantizer = { first_level = 0.0, step = -2.0, num_levels = 3 }
"#,
            "quantizer",
        ),
        (
            r#"
[[sensor]]
mean = 1.0
noise = { law = "gaussian", variance = 1.0 }
quantizer = { first_level = 0.0, step = 1.0, num_levels = 3 }
unknown_field = 4
"#,
            "unknown_field",
        ),
    ];
    for (body, needle) in cases {
        let config = write_config(dir.path(), body);
        let Output { status, stderr, .. } = bin()
            .arg("design")
            .arg(&config)
            .arg("--out")
            .arg(dir.path().join("out"))
            .output()
            .unwrap();
        assert_eq!(status.code(), Some(2), "config: {body}");
        let stderr = String::from_utf8_lossy(&stderr);
        assert!(
            stderr.contains(needle),
            "stderr {stderr} does not name {needle}"
        );
    }
}

#[test]
fn infeasible_budget_exits_3_with_the_bound() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        r#"
[[sensor]]
name = "gauss"
mean = 9.8696044010893586
noise = { law = "gaussian", variance = 3.141592653589793 }
quantizer = { first_level = 4.55224284837281, step = 1.0634723105433096, num_levels = 11 }
epsilon = 1.0
"#,
    );
    let Output { status, stderr, .. } = bin()
        .arg("design")
        .arg(&config)
        .arg("--out")
        .arg(dir.path().join("out"))
        .output()
        .unwrap();
    assert_eq!(status.code(), Some(3));
    let stderr = String::from_utf8_lossy(&stderr);
    // feasibility bound is the squared first level, about 20.72
    assert!(stderr.contains("20.72"), "stderr: {stderr}");
    assert!(stderr.contains("gauss"));
}

#[test]
fn sweep_rows_are_sorted_deduplicated_rows_identical_and_monotone() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), TWO_SENSOR_CONFIG);
    let out = dir.path().join("sweep");
    let status = bin()
        .arg("sweep")
        .arg(&config)
        .args([
            "--epsilon",
            "60",
            "--epsilon",
            "40",
            "--epsilon",
            "inf",
            "--epsilon",
            "40",
        ])
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let (header, rows) = parse_csv(&out.join("gauss_sweep.csv"));
    assert_eq!(header, "epsilon,mi_bits,distortion,status");
    assert_eq!(rows.len(), 4);
    let eps: Vec<f64> = rows.iter().map(|r| r[0].parse().unwrap()).collect();
    assert!(eps.windows(2).all(|w| w[0] <= w[1]));
    assert_eq!(
        rows[0], rows[1],
        "duplicate budgets must give identical rows"
    );
    let mi: Vec<f64> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
    assert!(
        mi.windows(2).all(|w| w[1] <= w[0] + 1e-9),
        "mi column not nonincreasing: {mi:?}"
    );
    assert!(rows.iter().all(|r| r[3] == "ok"));
}

#[test]
fn sweep_records_infeasible_budgets_without_aborting() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), TWO_SENSOR_CONFIG);
    let out = dir.path().join("sweep");
    let status = bin()
        .arg("sweep")
        .arg(&config)
        .args(["--epsilon", "0.5", "--epsilon", "60"])
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let (_, rows) = parse_csv(&out.join("gauss_sweep.csv"));
    assert_eq!(rows[0][3], "infeasible");
    assert!(rows[0][1].is_empty() && rows[0][2].is_empty());
    assert_eq!(rows[1][3], "ok");
}

#[test]
fn baselines_never_beat_the_optimal_design_when_feasible() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), TWO_SENSOR_CONFIG);
    let out = dir.path().join("bl");
    let status = bin()
        .arg("baselines")
        .arg(&config)
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    for name in ["gauss", "unif"] {
        let (header, rows) = parse_csv(&out.join(format!("{name}_baselines.csv")));
        assert_eq!(header, "baseline,mi_bits,distortion,feasible");
        assert_eq!(rows.len(), 4);
        assert_eq!(rows[0][0], "optimal");
        let optimal_mi: f64 = rows[0][1].parse().unwrap();
        for row in &rows[1..] {
            if row[3] == "true" {
                let mi: f64 = row[1].parse().unwrap();
                assert!(
                    optimal_mi <= mi + 1e-9,
                    "{name}: baseline {} beat the optimum ({mi} < {optimal_mi})",
                    row[0]
                );
            }
        }
    }
    // point-mass noise reveals the full measurement entropy: H[Y^Q] bits
    // at distortion equal to the smallest squared level
    let (_, rows) = parse_csv(&out.join("unif_baselines.csv"));
    let pm: Vec<&Vec<String>> = rows.iter().filter(|r| r[0] == "point_mass").collect();
    let dist: f64 = pm[0][2].parse().unwrap();
    assert!((dist - 2.2428676001475565_f64.powi(2)).abs() < 1e-9);
    let model = privnoise::SensorModel::uniform(2.4674011002723395, 0.2467401100272339).unwrap();
    let spec = privnoise::QuantizerSpec::new(2.2428676001475565, 0.04486183818676981, 11).unwrap();
    let h_y = privnoise::entropy(&spec.quantized_pmf(&model).unwrap());
    let pm_mi: f64 = pm[0][1].parse().unwrap();
    assert!(
        (pm_mi - h_y).abs() < 1e-9,
        "point-mass mi {pm_mi} vs H[Y^Q] {h_y}"
    );
    // sensor 2's geometric baseline at matched distortion stays strictly
    // above the optimum
    let geo_mi: f64 = rows.iter().find(|r| r[0] == "geometric").unwrap()[1]
        .parse()
        .unwrap();
    let opt_mi: f64 = rows[0][1].parse().unwrap();
    let geo_dist: f64 = rows.iter().find(|r| r[0] == "geometric").unwrap()[2]
        .parse()
        .unwrap();
    let opt_dist: f64 = rows[0][2].parse().unwrap();
    assert!((geo_dist - opt_dist).abs() < 1e-6 * opt_dist);
    assert!(geo_mi > opt_mi + 1e-4);
}

#[test]
fn repro_is_deterministic_and_reports_active_constraints() {
    let dir = tempfile::tempdir().unwrap();
    let out_a = dir.path().join("a");
    let out_b = dir.path().join("b");
    for out in [&out_a, &out_b] {
        assert!(bin()
            .arg("repro")
            .arg("--out")
            .arg(out)
            .status()
            .unwrap()
            .success());
    }
    let summary_a = fs::read(out_a.join("repro_summary.txt")).unwrap();
    let summary_b = fs::read(out_b.join("repro_summary.txt")).unwrap();
    assert_eq!(summary_a, summary_b);
    let text = String::from_utf8(summary_a).unwrap();
    for key in [
        "sensor1_within_tolerance=true",
        "sensor2_within_tolerance=true",
        "sensor1_eps60_constraint_active=true",
        "sensor1_eps40_constraint_active=true",
        "sensor2_eps5p6_constraint_active=true",
        "sensor2_eps5p1_constraint_active=true",
    ] {
        assert!(text.contains(key), "summary missing {key}");
    }
    for csv in [
        "sensor1_unconstrained_distributions.csv",
        "sensor1_eps60_sum.csv",
        "sensor2_eps5p1_distributions.csv",
    ] {
        let a = fs::read(out_a.join(csv)).unwrap();
        let b = fs::read(out_b.join(csv)).unwrap();
        assert_eq!(a, b, "{csv} differs between runs");
    }
}

#[test]
fn missing_config_file_exits_2() {
    let Output { status, stderr, .. } = bin()
        .args(["design", "/nonexistent/path.toml"])
        .output()
        .unwrap();
    assert_eq!(status.code(), Some(2));
    assert!(String::from_utf8_lossy(&stderr).contains("cannot read config"));
}
