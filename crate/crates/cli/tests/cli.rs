//! End-to-end tests of the `kstate` binary: exit codes, report
//! determinism, and the negative controls.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_kstate"))
}

fn write_temp(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("kstate-cli-test-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

const TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]\n";

#[test]
fn validate_ok() {
    let path = write_temp("trefoil.pd", TREFOIL);
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("faces: 5"), "{text}");
    assert!(text.contains("alternating: true"));
}

#[test]
fn validate_reads_stdin() {
    let mut child = bin()
        .args(["validate", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(TREFOIL.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("faces: 5"));
}

#[test]
fn validate_gauss_input() {
    let path = write_temp("trefoil.gauss", "O1- U2- O3- U1- O2- U3-\n");
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("faces: 5"));
}

#[test]
fn malformed_input_exits_2() {
    let path = write_temp("bad.pd", "X[1,4,2,5] garbage\n");
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("byte"), "position-annotated message: {err}");
}

#[test]
fn link_exits_3() {
    let path = write_temp("hopf.pd", "X[1,3,2,4] X[3,1,4,2]\n");
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("links unsupported"));
}

#[test]
fn state_cap_exits_4() {
    let path = write_temp("t34.pd", "X[1,13,2,12] X[2,8,3,7] X[13,9,14,8] X[14,4,15,3] X[9,5,10,4] X[10,16,11,15] X[5,1,6,16] X[6,12,7,11]\n");
    let out = run(&["analyze", path.to_str().unwrap(), "--max-states", "10"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stdout(&out).contains("state cap"));
}

#[test]
fn analyze_json_is_byte_identical_across_runs() {
    let path = write_temp("census.csv", &census_csv());
    let a = run(&["analyze", path.to_str().unwrap(), "--json"]);
    let b = run(&["analyze", path.to_str().unwrap(), "--json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let parsed: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let diagrams = parsed["diagrams"].as_array().unwrap();
    assert_eq!(diagrams.len(), 3);
    // Batch output preserves input order.
    let names: Vec<&str> = diagrams.iter().map(|d| d["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["3_1", "m3_1", "k+"]);
    assert_eq!(diagrams[0]["report"]["theorem_ok"], true);
    assert_eq!(diagrams[0]["report"]["max_spread"], 0);
    assert_eq!(diagrams[0]["report"]["dalt_diagram"], 0);
    assert_eq!(diagrams[0]["report"]["beta"], 0);
    assert_eq!(diagrams[0]["alexander"]["determinant"], "3");
}

#[test]
fn analyze_single_edge() {
    let path = write_temp("trefoil2.pd", TREFOIL);
    let out = run(&["analyze", path.to_str().unwrap(), "--edge", "2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let spreads = parsed["diagrams"][0]["report"]["spreads"]
        .as_array()
        .unwrap();
    assert_eq!(spreads.len(), 1);
    assert_eq!(spreads[0]["edge"], 2);
}

#[test]
fn analyze_rejects_ineligible_edge() {
    let path = write_temp("trefoil3.pd", TREFOIL);
    let out = run(&["analyze", path.to_str().unwrap(), "--edge", "42"]);
    // Reported per record; the batch counts it as a parse-class failure.
    assert_eq!(out.status.code(), Some(2));
}

fn census_csv() -> String {
    [
        "name,pd,det,alternating",
        "3_1,X[1;4;2;5] X[3;6;4;1] X[5;2;6;3],3,true",
        "m3_1,X[4;2;5;1] X[6;4;1;3] X[2;6;3;5],3,true",
        "k+,X[1;1;2;2],1,true",
    ]
    .join("\n")
}

#[test]
fn verify_census_passes() {
    let path = write_temp("census2.csv", &census_csv());
    let out = run(&["verify", path.to_str().unwrap(), "--deep"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("3_1: ok"));
    assert!(text.contains("0 failure(s)"));
}

#[test]
fn verify_detects_corrupted_expectations() {
    // Negative control: a record with a wrong expected determinant must be
    // flagged and the exit status must be nonzero.
    let csv = [
        "name,pd,det,alternating",
        "3_1,X[1;4;2;5] X[3;6;4;1] X[5;2;6;3],999,true",
    ]
    .join("\n");
    let path = write_temp("census3.csv", &csv);
    let out = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("FAIL"));
    assert!(text.contains("expected-det"));
}

#[test]
fn verify_isolates_bad_records() {
    let csv = [
        "name,pd",
        "3_1,X[1;4;2;5] X[3;6;4;1] X[5;2;6;3]",
        "broken,X[1;2;3]",
        "hopf,X[1;3;2;4] X[3;1;4;2]",
    ]
    .join("\n");
    let path = write_temp("census4.csv", &csv);
    let out = run(&["verify", path.to_str().unwrap()]);
    // Parse errors outrank unsupported-input errors.
    assert_eq!(out.status.code(), Some(2));
    let text = stdout(&out);
    assert!(text.contains("3_1: ok"));
    assert!(text.contains("broken: ERROR"));
    assert!(text.contains("hopf: ERROR"));
}

#[test]
fn verify_json_census() {
    let json = r#"[
        {"name": "3_1", "pd": "X[1;4;2;5] X[3;6;4;1] X[5;2;6;3]", "det": 3, "alternating": true},
        {"name": "4_1", "pd": "X[1,5,2,4] X[7,2,8,3] X[5,1,6,8] X[3,6,4,7]", "det": 5}
    ]"#;
    let path = write_temp("census5.json", json);
    let out = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("4_1: ok"));
}

#[test]
fn verify_max_crossings_filter() {
    let path = write_temp("census6.csv", &census_csv());
    let out = run(&["verify", path.to_str().unwrap(), "--max-crossings", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("3_1: skipped"));
    assert!(text.contains("k+: ok"));
}

#[test]
fn env_var_sets_cap() {
    let path = write_temp("trefoil4.pd", TREFOIL);
    let out = bin()
        .args(["analyze", path.to_str().unwrap()])
        .env("KSTATE_MAX_STATES", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
}
