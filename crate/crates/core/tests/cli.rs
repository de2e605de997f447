use std::fs;
use std::path::Path;

use photonperm::harness::{run_command, ExperimentRecord, Journal};

fn write(dir: &Path, name: &str, contents: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path.to_str().unwrap().to_string()
}

fn run(dir: &Path, args: &[&str]) -> photonperm::harness::RunOutcome {
    let results = dir.join("results");
    let mut argv: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    argv.extend(["--results-dir".into(), results.to_str().unwrap().into()]);
    run_command(&argv)
}

fn journal(dir: &Path) -> Vec<ExperimentRecord> {
    Journal::in_dir(&dir.join("results")).read_all().unwrap()
}

const K3: &str = r#"{"n": 3, "edges": [[1, 2], [2, 3], [1, 3]]}"#;

#[test]
fn exact_permanent_of_triangle() {
    let dir = tempfile::tempdir().unwrap();
    let k3 = write(dir.path(), "k3.json", K3);
    let out = run(dir.path(), &["permanent", "--graph", &k3, "--exact"]);
    assert_eq!(out.exit_code, 0, "{}", out.stderr);
    assert_eq!(out.stdout.trim(), "2");
    let records = journal(dir.path());
    assert_eq!(records.len(), 1);
    assert_eq!(records[0].backend, "exact");
    assert_eq!(records[0].estimates["permanent"], 2.0);
    for artifact in &records[0].artifacts {
        assert!(dir.path().join("results").join(artifact).exists());
    }
}

#[test]
fn sampled_permanent_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let k3 = write(dir.path(), "k3.json", K3);
    let args = ["permanent", "--graph", &k3, "--samples", "100000", "--seed", "7"];
    let first = run(dir.path(), &args);
    assert_eq!(first.exit_code, 0, "{}", first.stderr);
    let record = first.record.unwrap();
    let est = &record.estimates;
    let (lo, hi) = (
        est["confidence_interval"][0].as_f64().unwrap(),
        est["confidence_interval"][1].as_f64().unwrap(),
    );
    assert!(lo <= 2.0 && 2.0 <= hi, "[{lo}, {hi}]");
    assert_eq!(record.samples, Some(100_000));
    assert_eq!(record.seed, Some(7));

    let second = run(dir.path(), &args).record.unwrap();
    assert_eq!(second.estimates, record.estimates);
    assert_eq!(second.postselected, record.postselected);
    assert_eq!(journal(dir.path()).len(), 2);
}

#[test]
fn generated_seed_is_recorded_and_replays() {
    let dir = tempfile::tempdir().unwrap();
    let k3 = write(dir.path(), "k3.json", K3);
    let first = run(dir.path(), &["permanent", "--graph", &k3, "--postselected", "300"]).record.unwrap();
    let seed = first.seed.expect("seed generated");
    assert!(first.replay.windows(2).any(|w| w[0] == "--seed" && w[1] == seed.to_string()));
    let replay: Vec<&str> = first.replay.iter().map(String::as_str).collect();
    let again = run_command(&replay).record.unwrap();
    assert_eq!(again.estimates, first.estimates);
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["permanent", "--frobnicate"]);
    assert_eq!(out.exit_code, 2);
    assert!(out.stderr.contains("Usage"));
    assert!(journal(dir.path()).is_empty());
}

#[test]
fn pipeline_errors_exit_nonzero_without_a_record() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", r#"{"n": 2, "edges": [[1, 5]]}"#);
    let out = run(dir.path(), &["permanent", "--graph", &bad]);
    assert_eq!(out.exit_code, 1);
    assert!(out.stderr.starts_with("error:"));
    assert!(journal(dir.path()).is_empty());
}

#[test]
fn input_digest_follows_content() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.json", K3);
    let b = write(dir.path(), "b.json", K3);
    let c = write(dir.path(), "c.json", r#"{"n": 3, "edges": [[1, 2], [2, 3]]}"#);
    let digest = |path: &str| run(dir.path(), &["permanent", "--graph", path]).record.unwrap().input_digest.unwrap();
    assert_eq!(digest(&a), digest(&b));
    assert_ne!(digest(&a), digest(&c));
}

#[test]
fn every_subcommand_runs() {
    let dir = tempfile::tempdir().unwrap();
    let k3 = write(dir.path(), "k3.json", K3);
    let p3 = write(dir.path(), "p3.csv", "0,1,0\n1,0,1\n0,1,0\n");
    let m = write(dir.path(), "m.csv", "1,1\n1,0\n");
    let k4 = write(
        dir.path(),
        "k4.json",
        r#"{"n": 4, "edges": [[1, 2], [1, 3], [1, 4], [2, 3], [2, 4], [3, 4]]}"#,
    );
    let cases: Vec<Vec<&str>> = vec![
        vec!["encode", "--matrix", &m, "--mesh"],
        vec!["perm-poly", "--graph", &k3, "--mode", "laplacian", "--points", "-1,-0.5,-0.25,-2"],
        vec!["perm-poly", "--graph", &k3, "--seed", "3"],
        vec!["gi", "--graph", &k3, "--other", &p3, "--seed", "1"],
        vec!["dense-subgraph", "--graph", &k4, "--k", "3", "--anchors", "1", "--postselected", "50", "--seed", "2"],
        vec!["boost-w", "--matrix", &m, "--row", "2", "--w-grid", "1:3:0.5"],
        vec!["boost-eps", "--graph", &k3, "--eps-grid", "0,0.5,1", "--recover"],
        vec!["sample", "--graph", &k3, "--samples", "1000", "--seed", "4"],
        vec!["sample", "--graph", &k3, "--distribution"],
        vec!["table1", "--p-grid", "0.5,1", "--graphs-per-p", "1", "--n", "3", "--postselected", "50", "--seed", "5"],
    ];
    for args in &cases {
        let out = run(dir.path(), args);
        assert_eq!(out.exit_code, 0, "{args:?}: {}", out.stderr);
        let record = out.record.unwrap();
        assert!(record.artifacts.iter().any(|a| a.ends_with(".json")), "{args:?}");
    }
    let records = journal(dir.path());
    assert_eq!(records.len(), cases.len());
    let gi = records.iter().find(|r| r.command == "gi").unwrap();
    assert_eq!(gi.estimates["isomorphic"], false);
    let eps = records.iter().find(|r| r.command == "boost-eps").unwrap();
    assert!((eps.estimates["recovered_permanent"].as_f64().unwrap() - 2.0).abs() < 1e-9);
}
