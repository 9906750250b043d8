use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn wg(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wg"))
        .args(args)
        .env("WG_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn ok(cache: &Path, args: &[&str]) -> String {
    let out = wg(cache, args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    stdout(&out)
}

fn schema(name: &str) -> jsonschema::JSONSchema {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../docs/schemas")
        .join(format!("{name}.schema.json"));
    let raw: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    jsonschema::JSONSchema::compile(&raw).expect("schema compiles")
}

fn assert_valid(name: &str, text: &str) {
    let compiled = schema(name);
    let lines: Vec<&str> = text.lines().collect();
    assert!(!lines.is_empty(), "no output for {name}");
    for line in lines {
        let value: Value = serde_json::from_str(line).unwrap_or_else(|e| panic!("{line}: {e}"));
        let msgs: Vec<String> = match compiled.validate(&value) {
            Ok(()) => Vec::new(),
            Err(errors) => errors.map(|e| e.to_string()).collect(),
        };
        assert!(msgs.is_empty(), "{name} rejects {line}: {msgs:?}");
    }
}

#[test]
fn unitary_rational_form() {
    let dir = tempfile::tempdir().unwrap();
    let out = ok(
        dir.path(),
        &[
            "eval",
            "--group",
            "unitary",
            "--partition",
            "2",
            "--form",
            "rational",
        ],
    );
    assert_eq!(out, "-1/(N^3 - N)\n");
}

#[test]
fn shifted_orthogonal_series() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "--format",
        "json",
        "eval",
        "--group",
        "orthogonal-shifted",
        "--partition",
        "2",
        "--form",
        "series",
        "--order",
        "5",
    ];
    let v: Value = serde_json::from_str(&ok(dir.path(), &args)).unwrap();
    assert_eq!(
        v["series"]["coefficients"],
        serde_json::json!(["-1", "4", "-13"])
    );
    assert_eq!(v["series"]["leading_exponent"], 3);
}

#[test]
fn unitary_census_at_chi_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = ok(
        dir.path(),
        &[
            "enumerate",
            "--group",
            "u",
            "--partition",
            "2",
            "--chi",
            "0",
            "--emit",
            "census",
            "--format",
            "json",
        ],
    );
    assert_eq!(out, "{\"2,2,2\":21,\"3,2\":28,\"4\":8}\n");
}

#[test]
fn domain_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["eval", "--group", "u", "--partition", "0,2"],
        vec![
            "enumerate",
            "--group",
            "u",
            "--partition",
            "2",
            "--chi",
            "1",
        ],
        vec![
            "eval",
            "--group",
            "u",
            "--partition",
            "2",
            "--form",
            "numeric",
            "--n",
            "1",
        ],
        vec!["eval", "--group", "q", "--partition", "2"],
        vec!["wick", "--kind", "real", "--factors", "1,1;1,1*"],
        vec!["no-such-command"],
    ] {
        let out = wg(dir.path(), &args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn verify_small_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = ok(
        dir.path(),
        &["--format", "json", "verify", "--suite", "small"],
    );
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["passed"], true);
    let criteria = v["criteria"].as_array().unwrap();
    assert_eq!(criteria.len(), 10);
    assert!(criteria
        .iter()
        .all(|c| c["tag"] == "desk" && c["passed"] == true));
}

#[test]
fn failed_verification_exits_two_with_report() {
    // A well-formed table with a wrong character value is trusted and must surface as failures.
    let dir = tempfile::tempdir().unwrap();
    ok(dir.path(), &["cache", "warm", "--max-n", "2"]);
    let path = dir.path().join("characters-2.json");
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    v["entries"]["2"]["2"] = Value::from("7");
    std::fs::write(&path, serde_json::to_string(&v).unwrap()).unwrap();
    let out = wg(dir.path(), &["verify", "--suite", "small"]);
    assert_eq!(out.status.code(), Some(2));
    let report = stdout(&out);
    assert!(report.contains("FAIL  1 closed forms"), "{report}");
    assert!(report.contains("verification FAILED"));
}

#[test]
fn cold_and_warm_cache_agree() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--format", "json", "verify", "--suite", "small"];
    let cold = ok(dir.path(), &args);
    assert!(!ok(dir.path(), &["cache", "list"]).trim().is_empty());
    let warm = ok(dir.path(), &args);
    assert_eq!(cold, warm);
    let uncached = ok(
        dir.path(),
        &[
            "--no-cache",
            "--format",
            "json",
            "verify",
            "--suite",
            "small",
        ],
    );
    assert_eq!(cold, uncached);
}

#[test]
fn corrupted_cache_file_is_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "--format",
        "json",
        "eval",
        "--group",
        "u",
        "--partition",
        "2,1",
        "--form",
        "series",
        "--order",
        "9",
    ];
    let reference = ok(dir.path(), &args);
    let mut corrupted = 0;
    for entry in std::fs::read_dir(dir.path()).unwrap() {
        let path = entry.unwrap().path();
        std::fs::write(&path, b"{ not json").unwrap();
        corrupted += 1;
    }
    assert!(corrupted > 0);
    assert_eq!(ok(dir.path(), &args), reference);
    let listing = ok(dir.path(), &["--format", "json", "cache", "list"]);
    let v: Value = serde_json::from_str(&listing).unwrap();
    assert!(
        v["entries"]
            .as_array()
            .unwrap()
            .iter()
            .all(|e| e["valid"] == true),
        "{listing}"
    );
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec![
            "--format",
            "json",
            "enumerate",
            "--group",
            "o",
            "--partition",
            "2",
            "--chi",
            "1",
            "--emit",
            "records",
        ],
        vec![
            "--format",
            "csv",
            "enumerate",
            "--group",
            "u",
            "--partition",
            "2",
            "--chi",
            "0",
            "--emit",
            "records",
        ],
        vec![
            "counts",
            "--family",
            "palindromic-monotone",
            "--partition",
            "2",
            "--kmax",
            "3",
        ],
    ] {
        assert_eq!(ok(dir.path(), &args), ok(dir.path(), &args));
    }
}

#[test]
fn wick_moments() {
    let dir = tempfile::tempdir().unwrap();
    let z = ok(
        dir.path(),
        &[
            "wick",
            "--kind",
            "complex",
            "--factors",
            "1,1;1,1*;1,1;1,1*",
            "--omega",
            "2",
        ],
    );
    assert_eq!(z.trim(), "1/2");
    let m = ok(
        dir.path(),
        &[
            "--format",
            "json",
            "wick",
            "--kind",
            "real",
            "--factors",
            "1,2;1,2;1,2;1,2",
        ],
    );
    let v: Value = serde_json::from_str(&m).unwrap();
    assert_eq!(v["moment"], "3");
}

#[test]
fn text_and_csv_render() {
    let dir = tempfile::tempdir().unwrap();
    let csv = ok(
        dir.path(),
        &[
            "--format",
            "csv",
            "counts",
            "--family",
            "monotone",
            "--partition",
            "2",
            "--kmax",
            "3",
        ],
    );
    assert_eq!(csv.lines().next(), Some("k,d,count"));
    assert_eq!(csv.lines().count(), 5);
    let census = ok(
        dir.path(),
        &[
            "enumerate",
            "--group",
            "o",
            "--partition",
            "2",
            "--chi",
            "1",
            "--emit",
            "vertex-census",
        ],
    );
    assert_eq!(census, "2,2 8\n3 4\n");
}

#[test]
fn json_outputs_match_schemas() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let cases: Vec<(&str, Vec<&str>)> = vec![
        ("eval", vec!["eval", "--group", "u", "--partition", "2,1"]),
        (
            "eval",
            vec![
                "eval",
                "--group",
                "o",
                "--partition",
                "2",
                "--form",
                "series",
                "--order",
                "6",
            ],
        ),
        (
            "eval",
            vec![
                "eval",
                "--group",
                "o",
                "--partition",
                "1,1",
                "--form",
                "numeric",
                "--n",
                "5",
                "--route",
                "gram",
            ],
        ),
        (
            "counts",
            vec![
                "counts",
                "--family",
                "monotone",
                "--partition",
                "2",
                "--kmax",
                "4",
            ],
        ),
        (
            "counts",
            vec![
                "counts",
                "--family",
                "proper",
                "--partition",
                "2,1",
                "--kmax",
                "3",
            ],
        ),
        (
            "counts",
            vec![
                "counts",
                "--family",
                "matching-monotone",
                "--partition",
                "2",
                "--kmax",
                "3",
            ],
        ),
        (
            "counts",
            vec![
                "counts",
                "--family",
                "palindromic-monotone",
                "--partition",
                "2",
                "--kmax",
                "3",
            ],
        ),
        (
            "counts",
            vec![
                "counts",
                "--family",
                "orthogonal-proper",
                "--partition",
                "2",
                "--kmax",
                "2",
            ],
        ),
        (
            "counts",
            vec![
                "counts",
                "--family",
                "monotone",
                "--partition",
                "2",
                "--emit",
                "series",
                "--order",
                "6",
            ],
        ),
        (
            "enumerate-record",
            vec![
                "enumerate",
                "--group",
                "u",
                "--partition",
                "2",
                "--chi",
                "0",
                "--emit",
                "records",
            ],
        ),
        (
            "enumerate-record",
            vec![
                "enumerate",
                "--group",
                "o",
                "--partition",
                "2",
                "--chi",
                "2",
                "--emit",
                "records",
            ],
        ),
        (
            "census",
            vec![
                "enumerate",
                "--group",
                "u",
                "--partition",
                "2,1",
                "--chi",
                "2",
            ],
        ),
        (
            "census",
            vec![
                "enumerate",
                "--group",
                "o",
                "--partition",
                "2",
                "--chi",
                "1",
                "--emit",
                "vertex-census",
            ],
        ),
        (
            "coefficient",
            vec![
                "enumerate",
                "--group",
                "u",
                "--partition",
                "2",
                "--chi",
                "0",
                "--emit",
                "coefficient",
            ],
        ),
        (
            "coefficient",
            vec![
                "enumerate",
                "--group",
                "o",
                "--partition",
                "2",
                "--chi",
                "1",
                "--emit",
                "coefficient",
            ],
        ),
        (
            "enumerate-series",
            vec![
                "enumerate",
                "--group",
                "o",
                "--partition",
                "2",
                "--chi",
                "0",
                "--emit",
                "series",
            ],
        ),
        (
            "wick",
            vec!["wick", "--kind", "complex", "--factors", "1,2;1,2*"],
        ),
        ("verify", vec!["verify", "--suite", "small"]),
        ("cache", vec!["cache", "warm", "--max-n", "2"]),
        ("cache", vec!["cache", "list"]),
        ("cache", vec!["cache", "path"]),
        ("cache", vec!["cache", "clear"]),
    ];
    for (name, args) in cases {
        let mut full = vec!["--format", "json"];
        full.extend(args);
        assert_valid(name, &ok(d, &full));
    }
}

#[test]
fn schemas_reject_malformed_output() {
    let bad = [
        (
            "eval",
            r#"{"form":"rational","group":"unitary","partition":"2","expanded":"x"}"#,
        ),
        ("census", r#"{"2,2":-1}"#),
        (
            "wick",
            r#"{"kind":"complex","factors":"1,1","omega":"1","moment":"1.5"}"#,
        ),
        (
            "verify",
            r#"{"suite":"small","passed":true,"criteria":[{"id":1}]}"#,
        ),
    ];
    for (name, doc) in bad {
        let value: Value = serde_json::from_str(doc).unwrap();
        assert!(!schema(name).is_valid(&value), "{name} accepted {doc}");
    }
}
