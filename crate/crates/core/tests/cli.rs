use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bnspec<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    Command::new(env!("CARGO_BIN_EXE_bnspec"))
        .args(args)
        .env_remove("BNSPEC_OUT_DIR")
        .output()
        .expect("failed to launch bnspec")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

#[test]
fn thresholds_subcommand() {
    let out = bnspec(["thresholds", "--eps", "0.5", "--p", "0.1", "--c0", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!((v["m0"].as_f64().unwrap() - 216.0).abs() < 1e-9);
    assert_eq!(v["p_admissible"], true);
    assert_eq!(v["p_max"], 0.125);
}

#[test]
fn check_path_is_tight() {
    let out = bnspec(["check", "--graph", &data("p3.col")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["holds"], true);
    assert!(v["slack"].as_f64().unwrap().abs() < 1e-12);
    assert_eq!(v["omega"], 2);
}

#[test]
fn sample_then_check_complete_graph() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("k5.col");
    let out = bnspec([
        "sample",
        "--n",
        "5",
        "--p",
        "1",
        "--seed",
        "1",
        "--out",
        file.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["edges"], 10);
    assert_eq!(json(&out)["outside_model"], true);

    let first = bnspec(["check", "--graph", file.to_str().unwrap()]);
    let second = bnspec(["check", "--graph", file.to_str().unwrap()]);
    assert_eq!(first.stdout, second.stdout);
    let v = json(&first);
    assert_eq!(v["holds"], false);
    assert_eq!(v["is_complete"], true);
}

#[test]
fn sample_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.col");
    let b = dir.path().join("b.col");
    for f in [&a, &b] {
        let out = bnspec([
            "sample",
            "--n",
            "30",
            "--p",
            "0.3",
            "--seed",
            "8",
            "--out",
            f.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
}

#[test]
fn bounds_and_events_subcommands() {
    let out = bnspec([
        "bounds", "--n", "400", "--p", "0.5", "--eps", "0.5", "--c0", "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["juhasz_lambda1"], 200.0);
    assert!((v["clique_asymptote"].as_f64().unwrap() - 17.287_712_379_549_45).abs() < 1e-9);
    assert!(v["thresholds"]["n0"].is_number());

    let out = bnspec([
        "events",
        "--graph",
        &data("petersen.col"),
        "--eps",
        "0.5",
        "--p",
        "0.5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["z_rhs"], 15.0);
    assert_eq!(v["y_rhs"], 0.5);
}

#[test]
fn usage_and_runtime_errors() {
    let out = bnspec(["thresholds", "--eps", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    assert_eq!(
        bnspec(["check", "--graph", "x", "--nope"]).status.code(),
        Some(2)
    );
    assert_eq!(
        bnspec(["bounds", "--n", "10", "--p", "2", "--eps", "0.5"])
            .status
            .code(),
        Some(2)
    );

    let out = bnspec(["check", "--graph", "/definitely/not/here.col"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert_eq!(err.trim_end().lines().count(), 1, "{err}");

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("loop.col");
    std::fs::write(&bad, "p edge 3 1\ne 2 2\n").unwrap();
    let out = bnspec(["check", "--graph", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn help_everywhere() {
    for sub in [
        "check",
        "sample",
        "montecarlo",
        "thresholds",
        "bounds",
        "events",
    ] {
        assert_eq!(bnspec([sub, "--help"]).status.code(), Some(0), "{sub}");
    }
}

#[test]
fn montecarlo_alert_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(
        &cfg,
        r#"{"n": 300, "p": 0.9, "trials": 1, "seed": 1, "clique_time_budget": 0}"#,
    )
    .unwrap();
    let out_dir = dir.path().join("out");
    let out = bnspec([
        "montecarlo",
        "--config",
        cfg.to_str().unwrap(),
        "--out-dir",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["invalid_trials"], 1);
    assert!(out_dir.join("trials.csv").exists());
}

#[test]
fn montecarlo_uses_env_out_dir() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"n": 8, "p": 0.5, "trials": 3, "seed": 4}"#).unwrap();
    let target = dir.path().join("from-env");
    let out = Command::new(env!("CARGO_BIN_EXE_bnspec"))
        .args(["montecarlo", "--config", cfg.to_str().unwrap()])
        .env("BNSPEC_OUT_DIR", &target)
        .output()
        .unwrap();
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(target.join("summary.json").exists());
}
