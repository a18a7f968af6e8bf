//! End-to-end tests for the query evaluation pipeline and the binary itself.

use polaramp::{parse, run, to_canonical_json, InputFormat, RunFlags};
use std::process::Command;

fn eval(json: &str) -> polaramp::Report {
    let file = parse(json, InputFormat::Json).unwrap();
    run(&file, &RunFlags::default()).unwrap()
}

#[test]
fn quartic_kva_record() {
    let report = eval(
        r#"{"kind": "k3", "gram": [[4]], "h": [1],
            "queries": [{"op": "kva", "L": [1], "k": 1}]}"#,
    );
    assert_eq!(report.results[0].answer, Some(true));
    assert_eq!(report.results[0].clause.as_deref(), Some("no-violator"));
}

#[test]
fn enriques_kmax_record() {
    let report = eval(
        r#"{"kind": "enriques", "h": [1,1,0,0,0,0,0,0,0,0],
            "queries": [{"op": "kmax", "L": [2,2,0,0,0,0,0,0,0,0]}]}"#,
    );
    let record = &report.results[0];
    let max_k = record.max_k.as_ref().unwrap();
    assert_eq!(max_k.k_max, 0);
    assert_eq!(max_k.phi, 2);
}

#[test]
fn remaining_k3_and_enriques_ops_dispatch() {
    let report = eval(
        r#"{"kind": "k3", "gram": [[2,1],[1,-2]], "h": [3,1],
            "queries": [{"op": "nef", "L": [2,1]},
                        {"op": "ample", "L": [2,1]},
                        {"op": "exceptional", "L": [2,1]}]}"#,
    );
    assert_eq!(report.results[0].answer, Some(true));
    assert_eq!(report.results[1].answer, Some(false));
    let contracted = report.results[1].witness.as_ref().unwrap();
    assert_eq!(contracted.degree, 0);
    assert_eq!(report.results[2].answer, Some(true));
    let decomposition = report.results[2].exceptional.as_ref().unwrap();
    assert_eq!(decomposition.d, vec![1, 0]);
    assert_eq!(decomposition.gamma, vec![0, 1]);

    let report = eval(
        r#"{"kind": "enriques", "h": [1,1,0,0,0,0,0,0,0,0],
            "queries": [{"op": "phi", "L": [3,3,0,0,0,0,0,0,0,0]},
                        {"op": "nef", "L": [3,3,0,0,0,0,0,0,0,0]},
                        {"op": "spanned", "L": [3,3,0,0,0,0,0,0,0,0]}]}"#,
    );
    assert_eq!(report.results[0].phi, Some(3));
    assert_eq!(report.results[1].answer, Some(true));
    assert_eq!(report.results[2].answer, Some(true));
}

#[test]
fn malformed_gram_is_an_input_error() {
    let file = parse(
        r#"{"kind": "k3", "gram": [[4, 0]], "h": [1],
            "queries": [{"op": "validate"}]}"#,
        InputFormat::Json,
    )
    .unwrap();
    assert!(run(&file, &RunFlags::default()).is_err());
}

#[test]
fn invalid_surface_is_an_input_error() {
    // odd lattice
    let file = parse(
        r#"{"kind": "k3", "gram": [[3]], "h": [1],
            "queries": [{"op": "validate"}]}"#,
        InputFormat::Json,
    )
    .unwrap();
    let err = run(&file, &RunFlags::default()).unwrap_err();
    assert!(err.to_string().contains("not even"));
}

#[test]
fn unsupported_op_for_kind_is_rejected() {
    let file = parse(
        r#"{"kind": "enriques", "h": [1,1,0,0,0,0,0,0,0,0],
            "queries": [{"op": "clifford", "L": [2,2,0,0,0,0,0,0,0,0]}]}"#,
        InputFormat::Json,
    )
    .unwrap();
    assert!(run(&file, &RunFlags::default()).is_err());

    let file = parse(
        r#"{"kind": "k3", "gram": [[4]], "h": [1],
            "queries": [{"op": "phi", "L": [1]}]}"#,
        InputFormat::Json,
    )
    .unwrap();
    assert!(run(&file, &RunFlags::default()).is_err());
}

#[test]
fn wrong_length_class_is_an_input_error() {
    let file = parse(
        r#"{"kind": "k3", "gram": [[4]], "h": [1],
            "queries": [{"op": "scan", "L": [1, 0]}]}"#,
        InputFormat::Json,
    )
    .unwrap();
    let err = run(&file, &RunFlags::default()).unwrap_err();
    assert!(err.to_string().contains("length"));
}

#[test]
fn precondition_failures_are_rows_not_errors() {
    // L = B has base points, so gonality reports an error row but the file
    // still evaluates
    let report = eval(
        r#"{"kind": "k3", "gram": [[0,1],[1,2]], "h": [1,1],
            "queries": [{"op": "spanned", "L": [0,1]},
                        {"op": "gonality", "L": [0,1]}]}"#,
    );
    assert_eq!(report.results[0].answer, Some(false));
    assert!(report.results[1].error.is_some());
    assert_eq!(report.results[1].clause.as_deref(), Some("not-spanned"));
}

#[test]
fn json_round_trips_byte_identically() {
    let report = eval(
        r#"{"kind": "k3", "gram": [[2,1],[1,-2]], "h": [3,1],
            "queries": [{"op": "kva", "L": [2,1], "k": 2},
                        {"op": "clifford", "L": [2,1]},
                        {"op": "scan", "L": [2,1]}]}"#,
    );
    let first = to_canonical_json(&report);
    let value: serde_json::Value = serde_json::from_str(&first).unwrap();
    let second = serde_json::to_string_pretty(&value).unwrap();
    assert_eq!(first, second);
    assert!(!first.contains('.') || !first.contains("e-"), "no floats");
}

#[test]
fn scan_is_monotone_and_dominated() {
    let report = eval(
        r#"{"kind": "k3", "gram": [[0,2],[2,2]], "h": [1,1],
            "queries": [{"op": "scan", "L": [2,2]}]}"#,
    );
    let rows = report.results[0].scan.as_ref().unwrap();
    assert!(!rows.is_empty());
    let mut seen_false = false;
    for row in rows {
        if seen_false {
            assert!(!row.kva, "kva must stay false once false");
        }
        if !row.kva {
            seen_false = true;
        }
        if let Some(bir) = row.birkva {
            assert!(!row.kva || bir, "birational column dominates kva");
        }
    }
    assert!(seen_false, "scan reaches the degree bound");
}

#[test]
fn max_k_flag_limits_scans() {
    let file = parse(
        r#"{"kind": "k3", "gram": [[12]], "h": [1],
            "queries": [{"op": "scan", "L": [1]}]}"#,
        InputFormat::Json,
    )
    .unwrap();
    let report = run(&file, &RunFlags { max_k: Some(2) }).unwrap();
    let rows = report.results[0].scan.as_ref().unwrap();
    assert_eq!(rows.len(), 3);
}

#[test]
fn toml_input_matches_json() {
    let json = eval(
        r#"{"kind": "k3", "gram": [[4]], "h": [1],
            "queries": [{"op": "kva", "L": [1], "k": 1}]}"#,
    );
    let toml_file = parse(
        r#"
kind = "k3"
gram = [[4]]
h = [1]

[[queries]]
op = "kva"
L = [1]
k = 1
"#,
        InputFormat::Toml,
    )
    .unwrap();
    let toml_report = run(&toml_file, &RunFlags::default()).unwrap();
    assert_eq!(json.results[0].answer, toml_report.results[0].answer);
}

// --- process-level checks ---------------------------------------------------

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_polaramp"))
}

#[test]
fn binary_reports_verdicts_with_exit_zero() {
    use std::io::Write;
    let mut child = binary()
        .args(["run", "--format", "json"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(
            br#"{"kind": "k3", "gram": [[0,2],[2,2]], "h": [1,1],
                "queries": [{"op": "kva", "L": [1,1], "k": 1}]}"#,
        )
        .unwrap();
    let output = child.wait_with_output().unwrap();
    assert!(output.status.success());
    let value: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(value["results"][0]["answer"], serde_json::json!(false));
    assert_eq!(
        value["results"][0]["witness"]["failing_degree"],
        serde_json::json!(2)
    );
}

#[test]
fn binary_rejects_invalid_input_with_exit_two() {
    use std::io::Write;
    let mut child = binary()
        .arg("run")
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .stderr(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(br#"{"kind": "k3", "gram": [[4, 1]], "h": [1], "queries": []}"#)
        .unwrap();
    let output = child.wait_with_output().unwrap();
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn binary_prints_builtin_lattice() {
    let output = binary()
        .args(["lattice", "show", "enriques"])
        .output()
        .unwrap();
    assert!(output.status.success());
    let text = String::from_utf8(output.stdout).unwrap();
    assert!(text.contains("basis order: e, f, r1"));
    // ten labeled rows
    assert_eq!(text.lines().count(), 13);
}
