use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn apdyn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_apdyn"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn input_file(json: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(json.as_bytes()).unwrap();
    f
}

fn check(json: &str) -> (i32, String, String) {
    let f = input_file(json);
    let out = apdyn(&["check", f.path().to_str().unwrap()]);
    (code(&out), stdout(&out), stderr(&out))
}

#[test]
fn check_sierpinski_with_trivial_action() {
    let (status, out, _) = check(r#"{"space": {"points": 2, "opens": [[1], [0, 1]]}, "generators": [[0, 1]]}"#);
    assert_eq!(status, 0);
    let report: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["analysis"]["verdicts"]["r_closed"], false);
    assert_eq!(report["syndetic"]["holds"], true);
    assert_eq!(report["orbit_closure_relation"], serde_json::json!([[0, 0], [1, 0], [1, 1]]));
    assert_eq!(report["closed_sets"], serde_json::json!([[], [0], [0, 1]]));
}

#[test]
fn check_discrete_three_cycle_is_all_true() {
    let (status, out, _) = check(
        r#"{"space": {"points": 3, "min_open": [[0], [1], [2]]}, "generators": [[1, 2, 0]]}"#,
    );
    assert_eq!(status, 0);
    let report: Value = serde_json::from_str(&out).unwrap();
    for (name, value) in report["analysis"]["verdicts"].as_object().unwrap() {
        assert_eq!(value, true, "{name}");
    }
    assert_eq!(report["syndetic"]["holds"], true);
}

#[test]
fn false_verdicts_are_not_failures() {
    let (status, out, _) = check(r#"{"space": {"points": 3, "min_open": [[0, 1, 2], [1, 2], [2]]}, "partition": [[0], [1], [2]]}"#);
    assert_eq!(status, 0);
    assert!(out.contains("\"r_closed\": false"));
}

#[test]
fn malformed_input_exits_two_and_names_the_key() {
    let (status, out, err) = check(r#"{"space": {"points": 3, "opens": [[0], [1], [0, 1, 2]]}, "partition": [[0, 1, 2]]}"#);
    assert_eq!(status, 2);
    assert!(out.is_empty());
    assert!(err.contains("space.opens") && err.contains("not a topology"), "{err}");

    let (status, _, err) = check(r#"{"space": {"points": 2, "opens": [[0, 1]]}, "partition": [[0, 1]], "group": "Z"}"#);
    assert_eq!(status, 2);
    assert!(err.contains("`group`"), "{err}");

    let (status, _, err) = check("not json");
    assert_eq!(status, 2);
    assert!(err.contains("`$`"), "{err}");

    let out = apdyn(&["check", "/nonexistent/input.json"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn exhaustive_enumeration_summaries() {
    let out = apdyn(&["enumerate", "--points", "3", "--format", "text"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "145 instances, 0 violations\n");
    let out = apdyn(&["enumerate", "--points", "1", "--format", "text"]);
    assert_eq!(stdout(&out), "1 instance, 0 violations\n");
    let out = apdyn(&["enumerate", "--points", "2"]);
    let summary: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(summary["instances"], 8);
    assert_eq!(summary["mode"], "exhaustive");
}

#[test]
fn random_battery_is_reproducible() {
    let a = apdyn(&["enumerate", "--random", "1000", "--seed", "7"]);
    let b = apdyn(&["enumerate", "--random", "1000", "--seed", "7"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let summary: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(summary["instances"], 1000);
    assert_eq!(summary["seed"], 7);
    assert_eq!(summary["violations"], serde_json::json!([]));

    let c = apdyn(&["enumerate", "--random", "1000", "--seed", "8"]);
    let other: Value = serde_json::from_slice(&c.stdout).unwrap();
    assert!(other["dense_instances"] != summary["dense_instances"] || other["transitive_instances"] != summary["transitive_instances"]);
}

#[test]
fn bad_flags_exit_two() {
    for args in [
        &["enumerate", "--points", "5"][..],
        &["enumerate", "--points", "0"],
        &["enumerate", "--random", "10", "--points", "9"],
        &["enumerate"],
        &["enumerate", "--points", "three"],
        &["enumerate", "--points", "3", "--bogus"],
        &["flow-demo", "--dt", "0"],
        &["check"],
    ] {
        assert_eq!(code(&apdyn(args)), 2, "{args:?}");
    }
}

#[test]
fn gallery_entries_match() {
    for name in ["ex1", "ex002", "ex06", "ex04"] {
        let out = apdyn(&["gallery", name]);
        assert_eq!(code(&out), 0, "{name}: {}", stderr(&out));
        if name != "ex04" {
            assert_eq!(stdout(&out), apdyn::gallery::render(name).unwrap(), "{name}");
        }
    }
    let out = apdyn(&["gallery", "ex9"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("ex9"));
}

#[test]
fn flow_demo_report_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("orbit.csv");
    let out = apdyn(&["flow-demo", "--csv", csv.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["all_ok"], true);
    assert_eq!(report["witness"]["verdict"], "R not closed (numeric illustration)");
    let samples = std::fs::read_to_string(&csv).unwrap();
    assert!(samples.starts_with("t,x,y,r\n0,0.5,0,0.5\n"));
    assert!(samples.lines().count() > 8000);

    // tolerances below what the integrator reaches are reported as drift
    let out = apdyn(&["flow-demo", "--tolerance-period", "1e-18"]);
    assert_eq!(code(&out), 1);
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["all_ok"], false);
}
