use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn energy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_energy")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn gen(dir: &Path, floors: u32, scheme: &str, reward: Option<i64>) -> (PathBuf, PathBuf) {
    let floors_s = floors.to_string();
    let mut args = vec!["gen-elevator", "--floors", &floors_s, "--scheme", scheme, "--out-dir", dir.to_str().unwrap()];
    let r;
    if let Some(v) = reward {
        r = v.to_string();
        args.extend(["--reward", &r]);
    }
    let o = energy(&args);
    assert!(o.status.success(), "{}", stderr(&o));
    let lines: Vec<PathBuf> = stdout(&o).lines().map(PathBuf::from).collect();
    (lines[0].clone(), lines[1].clone())
}

fn solve(spec: &Path, weights: &Path, engine: &str, bound: u64, extra: &[&str]) -> Output {
    let b = bound.to_string();
    let mut args = vec![
        "solve",
        "--spec",
        spec.to_str().unwrap(),
        "--weights",
        weights.to_str().unwrap(),
        "--engine",
        engine,
        "--max-energy",
        &b,
    ];
    args.extend(extra);
    energy(&args)
}

fn report(o: &Output) -> Value {
    assert!(o.status.success(), "{}", stderr(o));
    serde_json::from_slice(&o.stdout).expect("json report")
}

#[test]
fn five_floor_report() {
    let dir = tempfile::tempdir().unwrap();
    let (spec, weights) = gen(dir.path(), 5, "wpf", None);
    assert!(weights.to_str().unwrap().ends_with("elevator5.wpf.weights"));
    let r = report(&solve(&spec, &weights, "both", 100, &[]));
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["realizable"], true);
    assert_eq!(r["state_count"], 750);
    assert_eq!(r["max_finite_energy"], 7);
    assert_eq!(r["engines_agree"], true);
    let engines = r["engines"].as_array().unwrap();
    assert_eq!(engines.len(), 2);
    assert_eq!(engines[0]["engine"], "bdd");
    assert_eq!(engines[1]["engine"], "add");
    assert_eq!(engines[0]["iterations"], engines[1]["iterations"]);
    let hist = r["histogram"].as_array().unwrap();
    let total: u64 = hist.iter().map(|h| h["states"].as_u64().unwrap()).sum();
    assert_eq!(total, 750);
    assert_eq!(hist.last().unwrap()["energy"], Value::Null);
    assert_eq!(hist.last().unwrap()["states"], 100);
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (spec, weights) = gen(dir.path(), 4, "wtwo", Some(2));
    let a = report(&solve(&spec, &weights, "both", 10, &[]));
    let b = report(&solve(&spec, &weights, "both", 10, &[]));
    assert_eq!(a["determinism_hash"], b["determinism_hash"]);
    assert_eq!(a["determinism_hash"].as_str().unwrap().len(), 64);
    let oracle = report(&solve(&spec, &weights, "oracle", 10, &[]));
    assert_eq!(oracle["histogram"], a["histogram"]);
    assert_eq!(oracle["realizable"], a["realizable"]);
}

#[test]
fn two_weight_rewards() {
    let dir = tempfile::tempdir().unwrap();
    let (spec, weights) = gen(dir.path(), 5, "wtwo", Some(1));
    assert_eq!(report(&solve(&spec, &weights, "add", 100, &[]))["realizable"], false);
    let (spec, weights) = gen(dir.path(), 5, "wtwo", Some(2));
    let r = report(&solve(&spec, &weights, "both", 100, &[]));
    assert_eq!(r["realizable"], true);
    assert_eq!(r["engines_agree"], true);
}

#[test]
fn report_file_and_dot_dump() {
    let dir = tempfile::tempdir().unwrap();
    let (spec, weights) = gen(dir.path(), 3, "wpf", None);
    let out = dir.path().join("r.json");
    let dots = dir.path().join("dots");
    let o = solve(&spec, &weights, "both", 5, &["--out", out.to_str().unwrap(), "--dump-dot", dots.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(r["state_count"], 162);
    let add = std::fs::read_to_string(dots.join("add_energy.dot")).unwrap();
    assert!(add.starts_with("digraph"));
    assert!(add.contains("current_floor[0]"));
    assert!(dots.join("bdd_antichain_0.dot").exists());

    let o = solve(&spec, &weights, "oracle", 5, &["--dump-dot", dots.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(dots.join("oracle_reduced.dot").exists());
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let (spec, weights) = gen(dir.path(), 5, "wpf", None);

    let o = solve(&spec, &weights, "oracle", 10, &["--oracle-limit", "100"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("explosion limit"));

    let bad = dir.path().join("bad.spec");
    std::fs::write(&bad, "VAR x : 0..3;\nGUARANTEE\n  G(next(x) = y);\n").unwrap();
    let o = solve(&bad, &weights, "add", 3, &[]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("bad.spec:3:"), "{err}");

    let bad_w = dir.path().join("bad.weights");
    std::fs::write(&bad_w, "WEIGHT 2 nowhere;\n").unwrap();
    let o = solve(&spec, &bad_w, "add", 3, &[]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("bad.weights:1:"), "{}", stderr(&o));

    let o = energy(&["solve", "--spec", "x"]);
    assert_eq!(o.status.code(), Some(1));
    let o = energy(&["solve", "--spec", "x", "--weights", "y", "--max-energy", "-3"]);
    assert_eq!(o.status.code(), Some(1));
    let o = energy(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    let o = energy(&["gen-elevator", "--floors", "1", "--out-dir", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let o = energy(&["sweep", "--family", "tower", "--floors", "3", "--bounds", "1", "--out", "/dev/null"]);
    assert_eq!(o.status.code(), Some(1));
}

fn sweep(dir: &Path, extra: &[&str]) -> (String, Vec<csv::StringRecord>) {
    let out = dir.join(format!("sweep{}.csv", extra.len()));
    let mut args = vec!["sweep", "--family", "elevator", "--floors", "4..6:2", "--bounds", "4..8", "--out", out.to_str().unwrap()];
    args.extend(extra);
    let o = energy(&args);
    assert!(o.status.success(), "{}", stderr(&o));
    let rows = csv::Reader::from_path(&out).unwrap().records().map(Result::unwrap).collect();
    (stdout(&o), rows)
}

#[test]
fn sweep_grid_and_thresholds() {
    let dir = tempfile::tempdir().unwrap();
    let (summary, rows) = sweep(dir.path(), &[]);
    assert_eq!(rows.len(), 2 * 5 * 2);
    assert!(summary.contains("4 floors, add: realizable from bound 5"), "{summary}");
    assert!(summary.contains("6 floors, bdd: realizable from bound 8"), "{summary}");
    assert!(rows.iter().all(|r| &r[9] == "true" && r[10].is_empty()));

    // everything except the wall time is independent of scheduling
    let (_, seq) = sweep(dir.path(), &["--sequential"]);
    let strip = |r: &csv::StringRecord| -> Vec<String> {
        r.iter().enumerate().filter(|(i, _)| *i != 8).map(|(_, f)| f.to_string()).collect()
    };
    assert_eq!(rows.iter().map(strip).collect::<Vec<_>>(), seq.iter().map(strip).collect::<Vec<_>>());
}

#[test]
fn random_differential_runs() {
    let dir = tempfile::tempdir().unwrap();
    let o = energy(&["random", "--seed", "1", "--count", "100", "--max-bits", "6", "--repro-dir", dir.path().to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("100 games agree"));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);

    let o = energy(&["random", "--seed", "9", "--count", "0"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("0 games agree"));

    let o = energy(&["random", "--count", "1", "--max-bits", "40"]);
    assert_eq!(o.status.code(), Some(1));
}
