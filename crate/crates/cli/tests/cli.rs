use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use ptnls_core::critical_data;

fn ptnls(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ptnls")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn branch_args<'a>(out: &'a str, lo: &'a str, hi: &'a str) -> Vec<&'a str> {
    vec![
        "branch", "--sigma", "1", "--tau", "2", "--alpha", "1", "--omega-min", lo, "--omega-max", hi,
        "--omega-step", "0.05", "--out", out,
    ]
}

fn read_json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn branch_table_respects_thresholds() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = ptnls(&branch_args(out, "0.05", "1"));
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let mut rdr = csv::Reader::from_path(dir.path().join("branch.csv")).unwrap();
    assert_eq!(
        rdr.headers().unwrap(),
        vec!["branch", "omega", "t_minus", "t_plus", "x_minus", "x_plus", "mass", "energy", "jump_res", "flux_res"]
    );
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    let omega = |r: &csv::StringRecord| r[1].parse::<f64>().unwrap();
    let l: Vec<_> = rows.iter().filter(|r| &r[0] == "L").collect();
    let r: Vec<_> = rows.iter().filter(|r| &r[0] == "R").collect();
    assert_eq!(l.len(), 20);
    assert_eq!(r.len(), 18);
    assert!(r.iter().all(|row| omega(row) > 1.0 / 9.0));
    assert!(rows.windows(2).all(|w| omega(&w[0]) <= omega(&w[1])));
    for row in &rows {
        assert!(row[8].parse::<f64>().unwrap().abs() < 1e-9);
        assert!(row[9].parse::<f64>().unwrap().abs() < 1e-9);
    }
}

#[test]
fn critical_dipole_branches_have_constant_mass() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = ptnls(&[
        "branch", "--sigma", "2", "--tau", "2", "--alpha", "0", "--omega-min", "0.1", "--omega-max", "3",
        "--omega-step", "0.1", "--out", out,
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let c = critical_data(2.0).unwrap();
    let mut rdr = csv::Reader::from_path(dir.path().join("branch.csv")).unwrap();
    for row in rdr.records().map(Result::unwrap) {
        let m: f64 = row[6].parse().unwrap();
        let want = if &row[0] == "L" { c.mu_star } else { c.mu_tilde };
        assert!((m - want).abs() < 1e-10, "{m} vs {want}");
    }
}

#[test]
fn empty_range_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    assert_eq!(code(&ptnls(&branch_args(out, "1", "0.5"))), 2);
    assert_eq!(code(&ptnls(&["branch", "--sigma", "1", "--tau", "2", "--alpha", "1"])), 2);
    assert_eq!(code(&ptnls(&["branch", "--sigma", "3", "--tau", "2", "--alpha", "1"])), 2);
}

#[test]
fn critical_constants() {
    let o = ptnls(&["critical", "--tau", "1"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let get = |k: &str| v[k].as_f64().unwrap();
    assert!((get("mu_star") - 2.720699).abs() < 1e-6);
    assert!((get("mu_tilde") - 2.720699).abs() < 1e-6);
    assert!((get("k_tau") - 0.405285).abs() < 1e-6);
    assert_eq!(code(&ptnls(&["critical", "--tau", "0.5"])), 2);
}

#[test]
fn subcritical_ground_state() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = ptnls(&["ground-state", "--sigma", "1", "--tau", "2", "--alpha", "1", "--mu", "1", "--out", out, "--verify"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v = read_json(&dir.path().join("ground_state.json"));
    assert_eq!(v["branch"], "L");
    assert!((v["mass"].as_f64().unwrap() - 1.0).abs() < 1e-10);
    assert!(v["profile_error_l2"].as_f64().unwrap() < 1e-3);
    assert!((v["thresholds"]["omega_lin"].as_f64().unwrap() - 0.04).abs() < 1e-15);
    let text = fs::read_to_string(dir.path().join("ground_state.csv")).unwrap();
    assert!(text.starts_with("x,u\n"));
}

#[test]
fn critical_ground_state_absent() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = ptnls(&["ground-state", "--sigma", "2", "--tau", "2", "--alpha", "1", "--mu", "3", "--out", out]);
    assert_eq!(code(&o), 4);
    assert!(stderr(&o).contains("infimum is -inf"), "{}", stderr(&o));
    assert!(!dir.path().join("ground_state.json").exists());
}

#[test]
fn dipole_ground_state_at_critical_mass() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let mu = critical_data(2.0).unwrap().mu_star.to_string();
    let o = ptnls(&["ground-state", "--sigma", "2", "--tau", "2", "--alpha", "0", "--mu", &mu, "--out", out]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v = read_json(&dir.path().join("ground_state.json"));
    assert_eq!(v["branch"], "L");
    assert!(v["energy"].as_f64().unwrap().abs() < 1e-8);
    assert_eq!(v["regime"]["infimum"], "zero");
}

#[test]
fn reruns_are_byte_identical() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [&a, &b] {
        let out = d.path().to_str().unwrap();
        let mut args = branch_args(out, "0.05", "2");
        args.extend(["--format", "csv,json,svg"]);
        assert_eq!(code(&ptnls(&args)), 0);
        let gs = ["ground-state", "--sigma", "1.5", "--tau", "3", "--alpha", "0.5", "--mu", "2", "--out", out];
        assert_eq!(code(&ptnls(&gs)), 0);
    }
    for f in ["branch.csv", "branch.json", "branch.svg", "ground_state.json", "ground_state.csv"] {
        assert_eq!(fs::read(a.path().join(f)).unwrap(), fs::read(b.path().join(f)).unwrap(), "{f}");
    }
}

#[test]
fn flags_override_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    let out = dir.path().join("out");
    fs::write(
        &cfg,
        format!(
            r#"{{"sigma": 1, "tau": 2, "alpha": 1, "mu": 5, "format": "json", "out": {:?}}}"#,
            out.to_str().unwrap()
        ),
    )
    .unwrap();
    let cfg = cfg.to_str().unwrap();
    assert_eq!(code(&ptnls(&["ground-state", "--config", cfg])), 0);
    assert!((read_json(&out.join("ground_state.json"))["mass"].as_f64().unwrap() - 5.0).abs() < 1e-9);
    assert_eq!(code(&ptnls(&["ground-state", "--config", cfg, "--mu", "0.5"])), 0);
    assert!((read_json(&out.join("ground_state.json"))["mass"].as_f64().unwrap() - 0.5).abs() < 1e-9);
    assert!(!out.join("ground_state.csv").exists());

    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"sigma": 1, "typo": 2}"#).unwrap();
    assert_eq!(code(&ptnls(&["critical", "--config", bad.to_str().unwrap()])), 2);
    let missing = dir.path().join("missing.json");
    assert_eq!(code(&ptnls(&["critical", "--config", missing.to_str().unwrap()])), 3);
}

#[test]
fn unwritable_output_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "x").unwrap();
    let out = blocker.join("sub");
    assert_eq!(code(&ptnls(&branch_args(out.to_str().unwrap(), "0.05", "1"))), 3);
}

#[test]
fn minimize_and_plot() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = ptnls(&["minimize", "--sigma", "1", "--tau", "2", "--alpha", "1", "--mu", "1", "--out", out]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v = read_json(&dir.path().join("minimize.json"));
    assert_eq!(v["converged"], true);
    assert!(v["profile_error_l2"].as_f64().unwrap() < 1e-3);
    let o = ptnls(&["minimize", "--sigma", "2", "--tau", "2", "--alpha", "1", "--mu", "3", "--out", out]);
    assert_eq!(code(&o), 4);

    let o = ptnls(&["plot", "--sigma", "1", "--tau", "2", "--alpha", "1", "--omega", "0.5", "--out", out]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let svg = fs::read_to_string(dir.path().join("profiles.svg")).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("branch R"));
    let o = ptnls(&["plot", "--sigma", "1", "--tau", "2", "--alpha", "1", "--omega", "0.01", "--out", out]);
    assert_eq!(code(&o), 4);
}

#[test]
fn verify_passes() {
    let o = ptnls(&["verify"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let table = String::from_utf8_lossy(&o.stdout);
    assert!(table.contains("14 checks, 0 failed"));
    let o = ptnls(&["verify", "--checks", "1,2"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("2 checks, 0 failed"));
    assert_eq!(code(&ptnls(&["verify", "--checks", "99"])), 2);
}
