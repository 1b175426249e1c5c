use std::f64::consts::{FRAC_PI_4, SQRT_2};
use std::fs;
use std::process::{Command, Output};

use amphase_core::numerics::Interval;
use amphase_core::parametrix::{verify_recipe, ParametrixParams, RECIPE_TAGS};

fn amphase(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_amphase")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn csv_rows(out: &Output) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_reader(out.stdout.as_slice());
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r.records().map(|rec| rec.unwrap().iter().map(String::from).collect()).collect();
    (header, rows)
}

#[test]
fn verify_example_passes_and_matches_library() {
    let out = amphase(&["verify", "--kappa", "1", "--sigma", "1", "--T", "1", "--t-max", "20", "--n", "50", "--spacing", "log"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let (header, rows) = csv_rows(&out);
    assert_eq!(header, ["equation", "max_abs", "rms"]);
    assert_eq!(rows.len(), 7);

    let p = ParametrixParams::new(1.0, 1.0, 1.0, 0.0).unwrap();
    let grid = Interval::new(1.0, 20.0).unwrap().logspace(50).unwrap();
    let reports = verify_recipe(&p, &grid).unwrap();
    for ((row, tag), report) in rows.iter().zip(RECIPE_TAGS).zip(&reports) {
        assert_eq!(row[0], tag);
        let max_abs: f64 = row[1].parse().unwrap();
        assert!(max_abs < 1e-6);
        assert_eq!(max_abs, report.max_abs);
    }
}

#[test]
fn parametrix_example_hits_closed_form_values() {
    let out = amphase(&["parametrix", "--kappa", "1", "--sigma", "1", "--T", "1", "--t-min", "1", "--t-max", "2.71828182845905", "--n", "2"]);
    assert_eq!(code(&out), 0);
    let (header, rows) = csv_rows(&out);
    assert_eq!(header, ["t", "alpha", "phi", "beta1", "beta2", "psi0"]);
    assert_eq!(rows.len(), 2);
    let last: Vec<f64> = rows[1].iter().map(|v| v.parse().unwrap()).collect();
    assert!((last[1] - SQRT_2).abs() < 5e-8);
    assert!((last[2] - FRAC_PI_4).abs() < 5e-8);
}

#[test]
fn kasner_outside_range_is_rejected() {
    let out = amphase(&["kasner", "--p1", "2"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("discriminant"));
    assert!(out.stdout.is_empty());
}

#[test]
fn kasner_rows_satisfy_constraints() {
    let out = amphase(&["kasner", "--p1", "-0.25"]);
    assert_eq!(code(&out), 0);
    let (header, rows) = csv_rows(&out);
    assert_eq!(header, ["p1", "p2", "p3", "sum_residual", "sphere_residual"]);
    assert_eq!(rows.len(), 2);
    for row in rows {
        let p: Vec<f64> = row.iter().map(|v| v.parse().unwrap()).collect();
        assert!((p[0] + p[1] + p[2] - 1.0).abs() < 1e-12);
        assert!((p[0] * p[0] + p[1] * p[1] + p[2] * p[2] - 1.0).abs() < 1e-12);
    }
}

#[test]
fn negative_controls_fail_with_status_one() {
    for control in ["psi", "alpha"] {
        let out = amphase(&["verify", "--control", control]);
        assert_eq!(code(&out), 1, "control {control}");
        let (_, rows) = csv_rows(&out);
        assert_eq!(rows.len(), 7);
    }
}

#[test]
fn tolerance_flag_controls_status() {
    assert_eq!(code(&amphase(&["verify", "--tol", "1e-15"])), 1);
    assert_eq!(code(&amphase(&["verify", "--tol", "1e-3"])), 0);
    assert_eq!(code(&amphase(&["verify", "--tol", "-1"])), 2);
}

#[test]
fn invalid_inputs_exit_two() {
    for args in [
        vec!["parametrix", "--n", "1"],
        vec!["parametrix", "--sigma", "-1"],
        vec!["parametrix", "--kappa", "0"],
        vec!["parametrix", "--T", "0"],
        vec!["verify", "--t-min", "5", "--t-max", "2"],
        vec!["canonical", "--q", "1 +"],
        vec!["canonical", "--q", "1", "--p", "sgn(x)"],
        vec!["ermakov", "--u0", "0"],
        vec!["ermakov", "--spacing", "log"],
        vec!["verify", "--control", "bogus"],
        vec!["nonsense"],
    ] {
        let out = amphase(&args);
        assert_eq!(code(&out), 2, "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn unwritable_output_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("out.csv");
    let out = amphase(&["kasner", "--p1", "0", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let cases: Vec<Vec<&str>> = vec![
        vec!["verify", "--kappa", "2", "--sigma", "0.5", "--T", "0.5"],
        vec!["parametrix", "--kappa", "1", "--sigma", "4", "--phi-T", "0.3"],
        vec!["ermakov", "--tau", "1.5", "--u0", "0.8", "--du0", "-0.2"],
        vec!["canonical", "--p", "2/x", "--q", "1", "--x-min", "1", "--x-max", "10"],
        vec!["kasner", "--p1", "0.4"],
    ];
    for (i, args) in cases.iter().enumerate() {
        for format in ["csv", "json"] {
            let mut files = Vec::new();
            let path = dir.path().join(format!("{i}.{format}"));
            for _ in 0..2 {
                let mut full = args.clone();
                full.extend(["--format", format, "--out", path.to_str().unwrap()]);
                let out = amphase(&full);
                assert_eq!(code(&out), 0, "{full:?}: {}", String::from_utf8_lossy(&out.stderr));
                assert!(out.stdout.is_empty());
                files.push(fs::read(&path).unwrap());
            }
            assert!(!files[0].is_empty());
            assert!(files[0] == files[1], "{args:?} {format} differs between runs");
        }
    }
}

#[test]
fn json_carries_config_columns_rows() {
    let out = amphase(&["parametrix", "--format", "json", "--n", "5"]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["config"]["subcommand"], "parametrix");
    assert_eq!(doc["config"]["grid"]["n_points"], 5);
    assert_eq!(doc["config"]["grid"]["spacing"], "log");
    assert_eq!(doc["config"]["tol"].as_f64(), Some(1e-6));
    let columns: Vec<&str> = doc["columns"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
    assert_eq!(columns, ["t", "alpha", "phi", "beta1", "beta2", "psi0"]);
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|r| r.as_array().unwrap().len() == 6));
}

#[test]
fn numbers_round_trip_through_text() {
    let out = amphase(&["parametrix", "--kappa", "1.7", "--sigma", "0.3", "--n", "20"]);
    let (_, rows) = csv_rows(&out);
    for cell in rows.iter().flatten() {
        let v: f64 = cell.parse().unwrap();
        assert_eq!(&format!("{v:.16e}"), cell);
    }
}

#[test]
fn ermakov_and_canonical_headers() {
    let out = amphase(&["ermakov"]);
    assert_eq!(code(&out), 0);
    let (header, rows) = csv_rows(&out);
    assert_eq!(header, ["t", "u_closed", "u_numeric", "residual_2nd_order"]);
    assert_eq!(rows.len(), 21);

    let out = amphase(&["canonical", "--q", "1+x^2"]);
    assert_eq!(code(&out), 0);
    let (header, rows) = csv_rows(&out);
    assert_eq!(header, ["x", "J", "factor"]);
    for row in rows {
        let x: f64 = row[0].parse().unwrap();
        let j: f64 = row[1].parse().unwrap();
        assert!((j - (1.0 + x * x)).abs() < 1e-12);
        assert_eq!(row[2], "1.0000000000000000e0");
    }
}
