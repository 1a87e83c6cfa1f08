use std::path::Path;
use std::process::{Command, Output};

use dcmodel::cli::{generate_demo, DemoKind, TupleFile, CHECK_NAMES};
use dcmodel::matrixcore::{from_real_rows, identity};
use dcmodel::tuples::ContractionTuple;

fn dcmodel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dcmodel"))
        .args(args)
        .output()
        .unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn validate_accepts_demo_and_rejects_identity() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.json");
    generate_demo(DemoKind::Tensor, &[2, 2], 0.5, 1)
        .unwrap()
        .save(&good)
        .unwrap();
    let out = dcmodel(&["validate", path(&good)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("verdict: PASS"));

    let bad = dir.path().join("bad.json");
    let t = ContractionTuple::new(vec![identity(2), identity(2)]).unwrap();
    TupleFile::from_tuple(&t, Default::default())
        .save(&bad)
        .unwrap();
    assert_eq!(dcmodel(&["validate", path(&bad)]).status.code(), Some(1));
}

#[test]
fn malformed_input_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{\"n\": 1").unwrap();
    assert_eq!(dcmodel(&["validate", path(&broken)]).status.code(), Some(3));
    assert_eq!(
        dcmodel(&["suite", path(&dir.path().join("missing.json"))])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        dcmodel(&["suite", path(&broken), "--degree", "many"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn json_suite_report_lists_every_check() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("jordan.json");
    let report = dir.path().join("report.json");
    let code = dcmodel(&[
        "demo",
        "jordan",
        "--dims",
        "2,2",
        "--radius",
        "0.5",
        "--out",
        path(&file),
    ]);
    assert_eq!(code.status.code(), Some(0));
    let out = dcmodel(&[
        "--format",
        "json",
        "suite",
        path(&file),
        "--degree",
        "6",
        "--report",
        path(&report),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(out.stdout, std::fs::read(&report).unwrap());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let names: Vec<&str> = json["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(names, CHECK_NAMES);
    assert_eq!(json["verdict"], "pass");
}

#[test]
fn non_doubly_commuting_pair_fails_gate() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("pair.json");
    let a = from_real_rows(&[&[0.0, 0.5], &[0.0, 0.0]]);
    let t = ContractionTuple::new(vec![a.clone(), a.adjoint()]).unwrap();
    TupleFile::from_tuple(&t, Default::default())
        .save(&file)
        .unwrap();
    let out = dcmodel(&["suite", path(&file)]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("validation gate failed"));
}
