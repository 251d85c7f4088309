mod common;

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use common::workspace_root;
use crossedk::cli::{exit_code, EXIT_INVARIANT, EXIT_OK, EXIT_VALIDATION, THREADS_ENV};
use crossedk::Error;
use serde_json::Value;

fn crossedk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crossedk"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let o = crossedk(&full);
    assert_eq!(
        o.status.code(),
        Some(EXIT_OK),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let path = Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn cyclotomic_text_and_json() {
    let o = crossedk(&["cyclotomic", "--n", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1\n");
    let v = json(&["cyclotomic", "--n", "9"]);
    assert_eq!(v["value_at_one"], 3);
}

#[test]
fn xi_and_relation() {
    assert_eq!(
        json(&["xi", "--n", "4"])["coeffs"],
        serde_json::json!([2, 0, -2, 0])
    );
    let v = json(&["xi-relation", "--n", "4"]);
    assert_eq!(
        (v["c"].clone(), v["literal_constant"].clone()),
        (4.into(), 2.into())
    );
    assert_eq!(v["agrees_with_literal"], false);
    assert_eq!(
        json(&["xi-relation", "--n", "5"])["agrees_with_literal"],
        true
    );
}

#[test]
fn crossed_product_json() {
    let o = crossedk(&["--json", "crossed-product", "--p", "2", "--ell", "3"]);
    assert!(stdout(&o)
        .starts_with(r#"{"status":"complete","total":{"even":{"free_rank":0,"torsion":[3,3]}"#));
    let v = json(&["crossed-product", "--p", "3", "--k", "2", "--ell", "2"]);
    assert_eq!(v["status"], "partial");
    assert!(v["total"].is_null());
}

#[test]
fn homotopy_orbits_and_localize() {
    let v = json(&["homotopy-orbits", "--p", "7", "--ell", "5"]);
    assert_eq!(v["even"]["torsion"].as_array().unwrap().len(), 8);
    assert_eq!(v["odd"]["torsion"].as_array().unwrap().len(), 2);
    let v = json(&["localize", "--p", "3", "--k", "2", "--ell", "2"]);
    assert_eq!(v["size"], 64);
    assert!(v["paper_exponent_note"].is_string());
}

#[test]
fn table_json_and_text() {
    let v = json(&["table", "--primes", "2,3,5,7,11", "--ell", "3"]);
    let rows: Vec<(u64, u64)> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["even"].as_u64().unwrap(), r["odd"].as_u64().unwrap()))
        .collect();
    assert_eq!(rows, vec![(2, 0), (4, 0), (8, 0), (14, 2), (62, 42)]);
    let text = stdout(&crossedk(&["table", "--primes", "7", "--ell", "3"]));
    let last: Vec<&str> = text.lines().last().unwrap().split_whitespace().collect();
    assert_eq!(last, ["7", "14", "2"]);
}

#[test]
fn xi_character_on_klein_four() {
    let path = workspace_root().join("fixtures/klein4.cayley");
    let v = json(&["xi-character", "--group", path.to_str().unwrap()]);
    assert_eq!(v["is_xi_zero"], true);
    assert!(v["classes"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["value"] == 0));
    let path = workspace_root().join("fixtures/groups/04_01_c4.cayley");
    let v = json(&["xi-character", "--group", path.to_str().unwrap()]);
    assert_eq!(v["is_xi_zero"], false);
}

#[test]
fn validation_errors_exit_two() {
    for args in [
        &["crossed-product", "--p", "3", "--ell", "3"][..],
        &["homotopy-orbits", "--p", "4", "--ell", "3"],
        &["localize", "--p", "3", "--k", "0", "--ell", "2"],
        &["table", "--primes", "2,9", "--ell", "5"],
        &["xi", "--n", "0"],
        &["table", "--primes", "2", "--ell", "x"],
        &["xi-character", "--group", "/nonexistent/group.cayley"],
        &["no-such-command"],
    ] {
        let o = crossedk(args);
        assert_eq!(o.status.code(), Some(EXIT_VALIDATION), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
    let o = crossedk(&["crossed-product", "--p", "3", "--ell", "3"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("open problem"));
}

#[test]
fn malformed_cayley_files() {
    let cases = [
        ("bad_dim.cayley", "3\n0 1 2\n1 2 0\n"),
        ("not_latin.cayley", "2\n0 1\n1 1\n"),
        (
            "not_assoc.cayley",
            "5\n0 1 2 3 4\n1 0 3 4 2\n2 4 0 1 3\n3 2 4 0 1\n4 3 1 2 0\n",
        ),
        ("garbage.cayley", "two\n0 1\n1 0\n"),
    ];
    for (name, text) in cases {
        let path = scratch(name, text);
        let o = crossedk(&["xi-character", "--group", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(EXIT_VALIDATION), "{name}");
        assert!(
            String::from_utf8_lossy(&o.stderr).contains("error"),
            "{name}"
        );
    }
}

#[test]
fn invariant_errors_map_to_three() {
    assert_eq!(exit_code(&Error::NonStabilizing(10)), EXIT_INVARIANT);
    assert_eq!(exit_code(&Error::CompositionNonzero), EXIT_INVARIANT);
    assert_eq!(
        exit_code(&Error::InvalidCayleyTable(String::new())),
        EXIT_VALIDATION
    );
}

#[test]
fn output_is_deterministic() {
    let args = ["--json", "crossed-product", "--p", "5", "--ell", "6"];
    let first = crossedk(&args).stdout;
    assert_eq!(crossedk(&args).stdout, first);
    for threads in ["1", "2", "4"] {
        let o = Command::new(env!("CARGO_BIN_EXE_crossedk"))
            .args(args)
            .env(THREADS_ENV, threads)
            .output()
            .unwrap();
        assert_eq!(o.stdout, first, "{THREADS_ENV}={threads}");
    }
}
