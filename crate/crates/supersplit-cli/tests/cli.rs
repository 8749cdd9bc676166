//! Black-box tests of the binary: exit codes, determinism, error paths.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn supersplit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_supersplit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_catalog(dir: &Path, name: &str, args: &[&str]) -> String {
    let out = supersplit(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let path = dir.join(name);
    fs::write(&path, &out.stdout).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn split_check_runs_and_reports_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let alg = write_catalog(dir.path(), "gl11.json", &["catalog", "--name", "gl", "--params", "1,1"]);
    let sub = write_catalog(
        dir.path(),
        "h.json",
        &["catalog", "--name", "gl", "--params", "1,1", "--parabolic", "1,1"],
    );
    let out = supersplit(&["--format", "machine", "split-check", "--algebra", &alg, "--subalgebra", &sub]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["payload"]["verdict"], "SPLIT_BY_SUFFICIENT_CONDITION");
    assert_eq!(report["assumptions"]["connected_groups"], true);
}

#[test]
fn split_check_on_the_even_part_reports_sufficient_condition() {
    // the classical-isotropy case: h = g₀ written out as a document
    use supersplit_cli::document::SubalgebraDocument;
    use supersplit_core::{catalog, SubalgebraEmbedding};

    let dir = tempfile::tempdir().unwrap();
    let alg_path = write_catalog(dir.path(), "gl11.json", &["catalog", "--name", "gl", "--params", "1,1"]);
    let alg = catalog::gl(1, 1);
    let h = SubalgebraEmbedding::even_part(&alg);
    let doc = SubalgebraDocument::from_embedding("g0", &alg, &h);
    let sub_path = dir.path().join("g0.json");
    fs::write(&sub_path, doc.print()).unwrap();

    let out = supersplit(&[
        "--format",
        "machine",
        "split-check",
        "--algebra",
        &alg_path,
        "--subalgebra",
        sub_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["payload"]["verdict"], "SPLIT_BY_SUFFICIENT_CONDITION");
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let alg = write_catalog(dir.path(), "gl21.json", &["catalog", "--name", "gl", "--params", "2,1"]);
    let sub = write_catalog(
        dir.path(),
        "p.json",
        &["catalog", "--name", "gl", "--params", "2,1", "--parabolic", "1,0"],
    );
    for format in ["human", "machine"] {
        let a = supersplit(&["--format", format, "split-check", "--algebra", &alg, "--subalgebra", &sub]);
        let b = supersplit(&["--format", format, "split-check", "--algebra", &alg, "--subalgebra", &sub]);
        assert!(a.status.success() && b.status.success());
        assert_eq!(a.stdout, b.stdout, "{format} output differs between runs");
    }
}

#[test]
fn malformed_documents_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");

    // not JSON at all
    fs::write(&path, "not json").unwrap();
    let out = supersplit(&["validate", "--algebra", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    // unknown label inside a bracket entry
    fs::write(
        &path,
        r#"{
          "name": "broken",
          "basis": [{"label": "a", "parity": 0}, {"label": "x", "parity": 1}],
          "brackets": [{"left": "a", "right": "x", "terms": [["nope", "1"]]}]
        }"#,
    )
    .unwrap();
    let out = supersplit(&["validate", "--algebra", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("nope"), "diagnostic should name the label: {err}");

    // floating-point coefficient
    fs::write(
        &path,
        r#"{
          "name": "broken",
          "basis": [{"label": "a", "parity": 0}, {"label": "x", "parity": 1}],
          "brackets": [{"left": "a", "right": "x", "terms": [["x", "0.5"]]}]
        }"#,
    )
    .unwrap();
    let out = supersplit(&["validate", "--algebra", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    // missing file
    let out = supersplit(&["validate", "--algebra", "/nonexistent/path.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invalid_algebra_is_a_result_not_an_error() {
    // an algebra that parses but fails the axioms: exit 0, valid=false
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("corrupt.json");
    fs::write(
        &path,
        r#"{
          "name": "gl(1|1)-corrupt",
          "basis": [
            {"label": "a", "parity": 0}, {"label": "b", "parity": 0},
            {"label": "x", "parity": 1}, {"label": "y", "parity": 1}
          ],
          "brackets": [
            {"left": "a", "right": "x", "terms": [["x", "1"]]},
            {"left": "b", "right": "x", "terms": [["x", "-1"]]},
            {"left": "a", "right": "y", "terms": [["y", "-1"]]},
            {"left": "b", "right": "y", "terms": [["y", "1"]]},
            {"left": "x", "right": "y", "terms": [["a", "1"]]}
          ]
        }"#,
    )
    .unwrap();
    let out = supersplit(&["--format", "machine", "validate", "--algebra", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["payload"]["valid"], false);
    let violations = report["payload"]["algebra_violations"].as_array().unwrap();
    assert!(violations.iter().any(|v| {
        let s = v.as_str().unwrap();
        s.contains("Jacobi") && s.contains('x') && s.contains('y')
    }));
}

#[test]
fn assume_connected_false_is_rejected() {
    let out = supersplit(&["--assume-connected", "false", "catalog", "--name", "osp12"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_catalog_name_exits_2() {
    let out = supersplit(&["catalog", "--name", "e8"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gr_emits_a_reparsable_algebra() {
    let dir = tempfile::tempdir().unwrap();
    let alg = write_catalog(dir.path(), "osp.json", &["catalog", "--name", "osp12"]);
    let out = supersplit(&["--format", "machine", "gr", "--algebra", &alg]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let gr_doc = report["payload"]["algebra"].clone();
    // odd-odd brackets are gone: no entry with two odd sides
    let brackets = gr_doc["brackets"].as_array().unwrap();
    for b in brackets {
        let left = b["left"].as_str().unwrap();
        let right = b["right"].as_str().unwrap();
        assert!(
            !(matches!(left, "x" | "y") && matches!(right, "x" | "y")),
            "odd-odd bracket {left},{right} survived gr"
        );
    }
    // and the emitted document itself parses as an algebra document
    let text = serde_json::to_string(&gr_doc).unwrap();
    let parsed = supersplit_cli::document::AlgebraDocument::parse(&text).unwrap();
    assert!(parsed.to_algebra().is_ok());
}

#[test]
fn envelope_operations_match_known_values() {
    let dir = tempfile::tempdir().unwrap();
    let alg = write_catalog(dir.path(), "gl11.json", &["catalog", "--name", "gl", "--params", "1,1"]);

    // y·x = E1_1 + E2_2 − x·y
    let out = supersplit(&[
        "--format", "machine", "envelope", "--algebra", &alg, "--word", "E2_1,E1_2",
    ]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["payload"]["filtration_degree"], 2);
    let element = report["payload"]["element"].as_array().unwrap();
    assert_eq!(element.len(), 3);

    // γ(x∧y) has augmentation 0 and degree 2
    let out = supersplit(&[
        "--format", "machine", "envelope", "--algebra", &alg,
        "--word", "E1_2,E2_1", "--op", "gamma",
    ]);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["payload"]["filtration_degree"], 2);
    assert_eq!(report["payload"]["augmentation"], "0");

    // γ on a repeated odd generator is zero
    let out = supersplit(&[
        "--format", "machine", "envelope", "--algebra", &alg,
        "--word", "E1_2,E1_2", "--op", "gamma",
    ]);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["payload"]["filtration_degree"], -1);

    // γ of an even generator is an input error
    let out = supersplit(&[
        "envelope", "--algebra", &alg, "--word", "E1_1", "--op", "gamma",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn ranks_and_strict_invariance_run() {
    let dir = tempfile::tempdir().unwrap();
    let alg = write_catalog(dir.path(), "gl22.json", &["catalog", "--name", "gl", "--params", "2,2"]);
    let sub = write_catalog(
        dir.path(),
        "p11.json",
        &["catalog", "--name", "gl", "--params", "2,2", "--parabolic", "1,1"],
    );

    let out = supersplit(&["--format", "machine", "ranks", "--algebra", &alg, "--subalgebra", &sub]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let entries: Vec<u64> = report["payload"]["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap())
        .collect();
    assert_eq!(entries[0], 1);
    assert_eq!(report["payload"]["total"], 4);

    let out = supersplit(&[
        "--format", "machine", "strict-invariance", "--algebra", &alg, "--subalgebra", &sub,
    ]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    // h has odd part, so the strict problem is infeasible
    assert_eq!(report["payload"]["feasible"], false);
}
