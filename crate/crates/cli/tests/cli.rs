//! End-to-end tests of the command-line interface: exit codes, report
//! formats, determinism, and the budget override.

use assert_cmd::Command;
use predicates::prelude::*;

fn quadriq() -> Command {
    Command::cargo_bin("quadriq").unwrap()
}

#[test]
fn usage_error_exits_2() {
    quadriq().arg("series").assert().code(2);
    quadriq().args(["nonsense"]).assert().code(2);
    quadriq()
        .args(["chains", "--n", "3", "--coords", "orthonormal"])
        .assert()
        .code(2)
        .stderr(predicate::str::contains("hyperbolic"));
}

#[test]
fn groebner_pass_exits_0() {
    quadriq()
        .args(["groebner", "--n", "3", "--N1", "0", "--N2", "1"])
        .assert()
        .code(0)
        .stdout(predicate::str::contains("GROEBNER: PASS"));
}

#[test]
fn groebner_refuted_exits_1() {
    quadriq()
        .args(["groebner", "--n", "2", "--N2", "1", "--coords", "orthonormal"])
        .assert()
        .code(1)
        .stdout(predicate::str::contains("GROEBNER: FAIL"));
}

#[test]
fn budget_override_reports_distinct_message() {
    quadriq()
        .args(["groebner", "--n", "2", "--N2", "1", "--coords", "orthonormal"])
        .env("QUADRIQ_MAX_PAIRS", "0")
        .assert()
        .code(1)
        .stdout(predicate::str::contains("BUDGET EXCEEDED"));
    quadriq()
        .args(["groebner", "--n", "2", "--N2", "1", "--coords", "orthonormal"])
        .env("QUADRIQ_MAX_PAIRS", "not-a-number")
        .assert()
        .code(2);
}

#[test]
fn structured_output_is_versioned_json() {
    let out = quadriq()
        .args(["series", "--n", "3", "--N2", "1", "--degree", "6", "--format", "structured"])
        .assert()
        .code(0)
        .get_output()
        .stdout
        .clone();
    let v: serde_json::Value = serde_json::from_slice(&out).unwrap();
    assert_eq!(v["schema"], "quadriq.report.v1");
    assert_eq!(v["command"], "series");
    assert_eq!(v["pass"], true);
    // integers travel as decimal strings
    assert_eq!(v["cells"][0]["dim"], "1");
}

#[test]
fn structured_output_is_byte_identical_across_runs() {
    let run = || {
        quadriq()
            .args(["series", "--n", "4", "--N2", "1", "--degree", "6", "--format", "structured"])
            .assert()
            .code(0)
            .get_output()
            .stdout
            .clone()
    };
    assert_eq!(run(), run());
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join("quadriq-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("relations.json");
    quadriq()
        .args(["relations", "--n", "3", "--format", "structured", "--out"])
        .arg(&path)
        .assert()
        .code(0)
        .stdout(predicate::str::is_empty());
    let v: serde_json::Value =
        serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!(v["schema"], "quadriq.report.v1");
    assert!(v["relations"].as_array().is_some());
}

#[test]
fn relations_prints_polynomials() {
    quadriq()
        .args(["relations", "--n", "3"])
        .assert()
        .code(0)
        .stdout(predicate::str::is_empty().not());
}

#[test]
fn pbw_reports_dual_dims() {
    quadriq()
        .args(["pbw", "--n", "3", "--N2", "1", "--degree", "6"])
        .assert()
        .code(0)
        .stdout(predicate::str::contains("L1:"));
}
