use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn agewatch(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_agewatch"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("spawn agewatch")
}

fn ok(dir: &Path, args: &[&str]) {
    let out = agewatch(dir, args);
    assert!(
        out.status.success(),
        "agewatch {} failed:\n{}",
        args.join(" "),
        String::from_utf8_lossy(&out.stderr)
    );
}

fn read(dir: &Path, name: &str) -> String {
    fs::read_to_string(dir.join(name)).unwrap()
}

const PROFILE: &str = r#"{"length": 200, "base": 400.0, "trend_slope": 2.0, "season_amplitude": 10.0,
    "season_period": 24, "noise_sigma": 1.0, "reset_period": 50, "seed": 3}"#;

fn generated(dir: &Path) {
    fs::write(dir.join("profile.json"), PROFILE).unwrap();
    ok(dir, &["generate", "--profile", "profile.json", "--seed", "7", "--out", "a.csv"]);
}

#[test]
fn generate_is_deterministic_and_seed_sensitive() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    generated(d);
    let first = read(d, "a.csv");
    ok(d, &["generate", "--profile", "profile.json", "--seed", "7", "--out", "a.csv"]);
    assert_eq!(first, read(d, "a.csv"));
    ok(d, &["generate", "--profile", "profile.json", "--seed", "8", "--out", "b.csv"]);
    assert_ne!(first, read(d, "b.csv"));

    let mut lines = first.lines();
    assert_eq!(lines.next(), Some("timestamp,value"));
    assert_eq!(lines.count(), 200);
    assert!(first.lines().nth(2).unwrap().starts_with("60,"));
}

#[test]
fn generate_flags_override_profile() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(
        d,
        &[
            "generate", "--length", "4", "--base", "10", "--trend-slope", "1", "--noise-sigma", "0",
            "--season-amplitude", "0", "--interval", "5", "--start-time", "100", "--out", "r.csv",
        ],
    );
    assert_eq!(read(d, "r.csv"), "timestamp,value\n100,10\n105,11\n110,12\n115,13\n");
}

#[test]
fn evaluate_perfect_forecast_reports_zero() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("obs.csv"), "timestamp,value\n0,5\n60,6\n120,7\n180,8\n").unwrap();
    fs::write(d.join("pred.csv"), "timestamp,value\n120,7\n180,8\n").unwrap();
    ok(d, &["evaluate", "--observed", "obs.csv", "--predicted", "pred.csv", "--indicator", "mem", "--out", "r.csv"]);
    assert_eq!(read(d, "r.csv"), "indicator,rmse,mape_percent,n_samples\nmem,0,0,2\n");
}

#[test]
fn evaluate_rejects_misaligned_and_zero_originals() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("obs.csv"), "timestamp,value\n0,0\n60,6\n").unwrap();
    fs::write(d.join("late.csv"), "timestamp,value\n600,7\n").unwrap();
    fs::write(d.join("zero.csv"), "timestamp,value\n0,1\n").unwrap();
    for pred in ["late.csv", "zero.csv"] {
        let out = agewatch(d, &["evaluate", "--observed", "obs.csv", "--predicted", pred, "--out", "r.csv"]);
        assert_eq!(out.status.code(), Some(1), "{pred}");
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    }
    assert!(!d.join("r.csv").exists());
}

#[test]
fn train_forecast_plotdata_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    generated(d);
    for kind in ["rbf", "mlp"] {
        let model = format!("m.{kind}");
        ok(
            d,
            &["train", "--kind", kind, "--input", "a.csv", "--model", &model, "--epochs", "20", "--report", "rep.csv"],
        );
        assert!(read(d, &model).starts_with(&format!("agewatch-{kind} v1\n")));
        let meta: serde_json::Value = serde_json::from_str(&read(d, &format!("{model}.meta.json"))).unwrap();
        assert_eq!(meta["kind"], kind);
        assert_eq!(meta["train_len"], 160);
        let report = read(d, "rep.csv");
        assert!(report.starts_with("epoch,mse\n1,"));
        assert_eq!(report.lines().count(), 21);

        ok(d, &["forecast", "--model", &model, "--input", "a.csv", "--origin", "train-end", "--out", "f.csv"]);
        let forecast = read(d, "f.csv");
        assert_eq!(forecast.lines().count(), 41);
        assert!(forecast.lines().nth(1).unwrap().starts_with("9600,"));

        ok(d, &["forecast", "--model", &model, "--input", "a.csv", "--steps", "5", "--out", "g.csv"]);
        assert!(read(d, "g.csv").lines().nth(1).unwrap().starts_with("12000,"));

        ok(d, &["plotdata", "--model", &model, "--input", "a.csv", "--out", "p.csv"]);
        let plot = read(d, "p.csv");
        let mut rows = plot.lines();
        assert_eq!(rows.next(), Some("timestamp,observed,predicted"));
        // Observed column reproduces the input's test segment exactly.
        let observed: Vec<String> = read(d, "a.csv").lines().skip(161).map(String::from).collect();
        let plotted: Vec<String> = rows
            .map(|r| {
                let f: Vec<&str> = r.split(',').collect();
                format!("{},{}", f[0], f[1])
            })
            .collect();
        assert_eq!(plotted, observed);
    }
}

#[test]
fn forecast_rejects_foreign_series() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    generated(d);
    ok(d, &["train", "--input", "a.csv", "--model", "m.rbf", "--epochs", "2"]);
    ok(d, &["generate", "--profile", "profile.json", "--seed", "99", "--base", "900", "--out", "other.csv"]);
    let out = agewatch(d, &["forecast", "--model", "m.rbf", "--input", "other.csv", "--steps", "3", "--out", "f.csv"]);
    assert_eq!(out.status.code(), Some(1));
    let out = agewatch(d, &["forecast", "--model", "m.rbf", "--input", "a.csv", "--out", "f.csv"]);
    assert_eq!(out.status.code(), Some(1), "series-end without --steps");
}

#[test]
fn schedule_reports_crossing_with_lead() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("swap.csv"), "timestamp,value\n1000,1\n1060,2\n1120,3\n1180,4\n").unwrap();
    fs::write(d.join("mem.csv"), "timestamp,value\n1000,50\n1060,40\n1120,30\n1180,20\n").unwrap();
    ok(
        d,
        &[
            "schedule", "--forecast", "swap=swap.csv", "--forecast", "mem=mem.csv", "--threshold", "swap:rising:2.5",
            "--threshold", "mem:falling:10", "--lead", "1", "--out", "s.csv",
        ],
    );
    assert_eq!(
        read(d, "s.csv"),
        "indicator,first_crossing_step,crossing_time\nswap,2,1120\nmem,none,none\nrecommended_time,1060\n"
    );

    let out = agewatch(
        d,
        &["schedule", "--forecast", "swap=swap.csv", "--threshold", "disk:rising:1", "--out", "s.csv"],
    );
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn bench_writes_table() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(d, &["bench", "--seed", "7", "--out", "t.csv"]);
    let table = read(d, "t.csv");
    let rows: Vec<Vec<&str>> = table.lines().map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0], ["model", "rmse", "mape_percent"]);
    assert_eq!(rows[1][0], "MLP");
    assert_eq!(rows[2][0], "RBFNN");
    let num = |r: usize, c: usize| rows[r][c].parse::<f64>().unwrap();
    assert!(num(2, 1) < num(1, 1));
    assert!(num(2, 2) < num(1, 2));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(agewatch(d, &[]).status.code(), Some(2));
    assert_eq!(agewatch(d, &["train", "--input", "x.csv"]).status.code(), Some(2));
    assert_eq!(
        agewatch(d, &["schedule", "--forecast", "a", "--threshold", "a:up:1", "--out", "s"]).status.code(),
        Some(2)
    );
    assert_eq!(agewatch(d, &["train", "--input", "missing.csv", "--model", "m"]).status.code(), Some(1));
    let help = agewatch(d, &["train", "--help"]);
    assert_eq!(help.status.code(), Some(0));
    let text = String::from_utf8_lossy(&help.stdout);
    for flag in ["--order", "--horizon", "--train-fraction", "--sigma", "--mode", "--seed"] {
        assert!(text.contains(flag), "{flag} missing from help");
    }
}
