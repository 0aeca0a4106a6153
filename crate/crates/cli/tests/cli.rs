use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use dispersive::output::format_float;
use proptest::prelude::*;
use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_dispersive"))
}

fn run(args: &[&str], dir: &Path) -> Output {
    bin().args(args).current_dir(dir).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn lorentz_file(dir: &Path) -> PathBuf {
    let p = dir.join("lorentz.toml");
    fs::write(&p, "kind = \"lorentz\"\nomega_p = 0.5\nomega_0 = 1.0\ngamma = 0.1\n").unwrap();
    p
}

fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .map(|l| l.split(',').map(|v| v.parse::<f64>().unwrap()).collect())
        .collect();
    (header, rows)
}

#[test]
fn vacuum_spectrum_is_the_free_space_density() {
    let dir = TempDir::new().unwrap();
    let o = run(&["spectrum", "--omega-min", "0.1", "--omega-max", "10", "--points", "25"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let (header, rows) = csv_rows(&stdout(&o));
    assert_eq!(header, ["omega", "eps_r", "eps_i", "n_r", "n_i", "vg_over_c", "rho"]);
    assert_eq!(rows.len(), 25);
    for r in rows {
        let w = r[0];
        assert_eq!(&r[1..6], &[1.0, 0.0, 1.0, 0.0, 1.0]);
        let expected = w.powi(3) / (2.0 * PI * PI);
        assert!((r[6] - expected).abs() <= 1e-14 * expected, "{w}: {} vs {expected}", r[6]);
    }
}

#[test]
fn verify_passes_for_damped_lorentz() {
    let dir = TempDir::new().unwrap();
    let model = lorentz_file(dir.path());
    let o = run(
        &["verify", "--model", model.to_str().unwrap(), "--omega-min", "0.1", "--omega-max", "3"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let records: Vec<Value> = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(records.len() >= 8);
    for r in &records {
        assert_eq!(r["pass"], Value::Bool(true), "{r}");
        assert!(r["max_error"].as_f64().unwrap() <= r["tolerance"].as_f64().unwrap());
        assert!(r["config_hash"].as_str().unwrap().len() == 64);
    }
}

#[test]
fn malformed_material_names_the_missing_field() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("bad.json");
    fs::write(&p, r#"{"kind": "lorentz", "omega_p": 0.5, "gamma": 0.1}"#).unwrap();
    let o = run(&["spectrum", "--model", p.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("omega_0"), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
}

#[test]
fn invalid_parameters_exit_one() {
    let dir = TempDir::new().unwrap();
    let o = run(&["spectrum", "--omega-min", "2", "--omega-max", "1"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["spectrum", "--temp=-1"], dir.path());
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn corrupted_table_is_reported_non_causal() {
    let dir = TempDir::new().unwrap();
    let samples: Vec<[f64; 3]> = (0..1400)
        .map(|i| {
            let w = 1e-3 * 1.01f64.powi(i);
            let (re, im) = (1.0 - w * w, -0.1 * w);
            let d = re * re + im * im;
            // 1 + 0.25/(re + i im), with the sign of the loss flipped.
            [w, 1.0 + 0.25 * re / d, 0.25 * im / d]
        })
        .collect();
    let p = dir.path().join("table.json");
    fs::write(&p, serde_json::json!({"kind": "tabulated", "samples": samples}).to_string()).unwrap();
    let o = run(&["kk-check", "--model", p.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
    let records: Vec<Value> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(records[0]["non_causal"], Value::Bool(true));

    let model = lorentz_file(dir.path());
    let o = run(&["kk-check", "--model", model.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn file_output_is_reproducible_with_sidecar() {
    let dir = TempDir::new().unwrap();
    let model = lorentz_file(dir.path());
    let out = dir.path().join("energy.csv");
    let args = [
        "energy",
        "--model",
        model.to_str().unwrap(),
        "--temp",
        "0.5",
        "--out",
        out.to_str().unwrap(),
    ];
    assert!(run(&args, dir.path()).status.success());
    let first = fs::read(&out).unwrap();
    let meta_path = dir.path().join("energy.csv.meta.json");
    let meta: Value = serde_json::from_slice(&fs::read(&meta_path).unwrap()).unwrap();
    assert!(run(&args, dir.path()).status.success());
    assert_eq!(first, fs::read(&out).unwrap());
    assert_eq!(meta, serde_json::from_slice::<Value>(&fs::read(&meta_path).unwrap()).unwrap());

    assert_eq!(meta["command"], "energy");
    assert_eq!(meta["config"]["temperature"], 0.5);
    assert_eq!(meta["config_hash"].as_str().unwrap().len(), 64);
    let (header, rows) = csv_rows(&String::from_utf8(first).unwrap());
    assert_eq!(header[..3], ["omega", "w_form_a", "w_form_b"]);
    for r in rows {
        assert!(r[3] < 1e-9, "forms differ by {} at {}", r[3], r[0]);
    }
}

#[test]
fn flags_override_the_config_file() {
    let dir = TempDir::new().unwrap();
    lorentz_file(dir.path());
    let config = dir.path().join("run.toml");
    fs::write(
        &config,
        "material = \"lorentz.toml\"\n\n[band]\nomega_min = 0.2\nomega_max = 2.0\nn_points = 7\nspacing = \"linear\"\n",
    )
    .unwrap();
    let o = run(&["spectrum", "--config", config.to_str().unwrap()], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let (_, rows) = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 7);
    assert_eq!((rows[0][0], rows[6][0]), (0.2, 2.0));
    assert!((rows[1][0] - 0.5).abs() < 1e-15);
    assert!(rows[0][1] > 1.0, "material from the config file is used");

    let o = run(&["spectrum", "--config", config.to_str().unwrap(), "--points", "3"], dir.path());
    let (_, rows) = csv_rows(&stdout(&o));
    assert_eq!(rows.iter().map(|r| r[0]).collect::<Vec<_>>(), [0.2, 1.1, 2.0]);

    fs::write(&config, "[band]\nwidth = 3\n").unwrap();
    let o = run(&["spectrum", "--config", config.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("width"), "{}", stderr(&o));
}

#[test]
fn ledger_balances_power_in_steady_state() {
    let dir = TempDir::new().unwrap();
    let model = lorentz_file(dir.path());
    let o = run(
        &["ledger", "--model", model.to_str().unwrap(), "--drive-omega", "1.0", "--t-end", "300"],
        dir.path(),
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let (header, rows) = csv_rows(&stdout(&o));
    assert_eq!(header, ["t", "kinetic", "potential", "field", "dissipated_rate", "drive_power"]);
    assert_eq!(rows[0][0], 0.0);
    // Average the last ten drive periods, 128 steps each.
    let tail = &rows[rows.len() - 1280..];
    let mean = |c: usize| tail.iter().map(|r| r[c]).sum::<f64>() / tail.len() as f64;
    let (loss, gain) = (mean(4), mean(5));
    assert!(gain > 0.0);
    assert!((loss - gain).abs() < 1e-3 * gain, "{loss} vs {gain}");
}

#[test]
fn simulate_reports_estimates_against_targets() {
    let dir = TempDir::new().unwrap();
    let model = lorentz_file(dir.path());
    let o = run(
        &["simulate", "--model", model.to_str().unwrap(), "--traj", "16", "--seed", "7"],
        dir.path(),
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let records: Vec<Value> = serde_json::from_str(&stdout(&o)).unwrap();
    let energy = records.iter().find(|r| r["estimator"] == "energy").unwrap();
    assert_eq!(energy["n"], 16);
    assert!(energy["std_error"].as_f64().unwrap() > 0.0);
    assert!(energy["sigmas"].as_f64().unwrap() < 5.0, "{energy}");
    let again = run(
        &["simulate", "--model", model.to_str().unwrap(), "--traj", "16", "--seed", "7"],
        dir.path(),
    );
    assert_eq!(o.stdout, again.stdout);
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    let o = run(&["transmogrify"], Path::new("."));
    assert!(!o.status.success());
    assert!(o.stdout.is_empty());
}

proptest! {
    #[test]
    fn floats_round_trip_through_text(x in prop::num::f64::NORMAL | prop::num::f64::SUBNORMAL | prop::num::f64::ZERO) {
        prop_assert_eq!(format_float(x).parse::<f64>().unwrap(), x);
    }
}
