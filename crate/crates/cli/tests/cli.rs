use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coprimator"))
        .args(args)
        .current_dir(crate_dir())
        .env_remove("COPRIMATOR_MAX_ELEMENTS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// `elapsed_ms` is the only field that varies between runs.
fn normalize_json(text: &str) -> String {
    let mut v: Value = serde_json::from_str(text).expect("valid JSON");
    v["timing"]["elapsed_ms"] = Value::from(0);
    serde_json::to_string_pretty(&v).unwrap() + "\n"
}

fn golden(name: &str, actual: &str) {
    let path = crate_dir().join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::write(&path, actual).unwrap();
        return;
    }
    let expected = fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(actual, expected, "golden file {name}");
}

fn check(name: &str, args: &[&str], code: i32) {
    let o = run(args);
    assert_eq!(
        o.status.code(),
        Some(code),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    let out = stdout(&o);
    if name.ends_with(".json") {
        golden(name, &normalize_json(&out));
    } else {
        golden(name, &out);
    }
}

#[test]
fn golden_analyze() {
    check("analyze_s4.txt", &["analyze", "--group", "tests/fixtures/s4.grp"], 0);
    check(
        "analyze_s4.json",
        &["analyze", "--group", "tests/fixtures/s4.grp", "--json"],
        0,
    );
}

#[test]
fn golden_star() {
    check(
        "star_s3_delta2.txt",
        &[
            "star",
            "--group",
            "tests/fixtures/s3.grp",
            "--family",
            "delta",
            "--k",
            "2",
            "--subgroup",
        ],
        0,
    );
    check(
        "star_a5_delta1.json",
        &[
            "star",
            "--group",
            "tests/fixtures/a5.grp",
            "--family",
            "delta",
            "--k",
            "1",
            "--json",
        ],
        0,
    );
}

#[test]
fn golden_height() {
    check(
        "height_s4.txt",
        &["height", "--group", "tests/fixtures/s4.grp", "--k-max", "5"],
        0,
    );
    check(
        "height_a5.txt",
        &["height", "--group", "tests/fixtures/a5.grp", "--k-max", "4"],
        0,
    );
}

#[test]
fn golden_witness() {
    check(
        "witness_5cycle.txt",
        &["witness", "--n", "5", "--perm", "(1,2,3,4,5)"],
        0,
    );
    check(
        "witness_mixed.json",
        &["witness", "--n", "9", "--perm", "(1,2)(3,4,5,6)(7,8,9)", "--json"],
        0,
    );
}

#[test]
fn golden_sweeps() {
    check("sweep_a6.txt", &["witness-sweep", "--n", "6", "--threads", "2"], 0);
    check(
        "sweep_types_12.txt",
        &["witness-sweep", "--n", "12", "--cycle-types-only"],
        0,
    );
}

#[test]
fn golden_conjecture_and_catalog() {
    check(
        "conjecture_a5.json",
        &["conjecture", "--catalog", "alternating(5)", "--json", "--threads", "3"],
        0,
    );
    check(
        "conjecture_rigged.txt",
        &["conjecture", "--group", "tests/fixtures/rigged.grp"],
        1,
    );
    check("catalog_list.txt", &["catalog", "list"], 0);
}

#[test]
fn thread_count_does_not_change_output() {
    let one = stdout(&run(&["conjecture", "--catalog", "alternating(6)", "--threads", "1"]));
    let four = stdout(&run(&["conjecture", "--catalog", "alternating(6)", "--threads", "4"]));
    assert_eq!(one, four);
}

#[test]
fn text_is_a_rendering_of_json_results() {
    let args = ["analyze", "--group", "tests/fixtures/s4.grp"];
    let text = stdout(&run(&args));
    let json: Value = serde_json::from_str(&stdout(&run(&[&args[..], &["--json"]].concat()))).unwrap();
    let first = text.lines().next().unwrap();
    for (k, v) in json["results"].as_object().unwrap() {
        let rendered = match v {
            Value::Object(_) => continue,
            Value::Null => "none".to_string(),
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        assert!(
            first.contains(&format!("{k}={rendered}")),
            "{k}={rendered} missing from {first:?}"
        );
    }
    assert_eq!(json["command"], "analyze");
    assert_eq!(json["input_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn certificates_round_trip_and_detect_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("w.cert");
    let cert_s = cert.to_str().unwrap();
    let o = run(&[
        "witness",
        "--n",
        "8",
        "--perm",
        "(1,2,3)(4,5)(6,7)",
        "--certificate",
        cert_s,
    ]);
    assert_eq!(o.status.code(), Some(0));
    let line = fs::read_to_string(&cert).unwrap();
    assert!(line.starts_with("x=(1,2,3)(4,5)(6,7) y="));
    assert_eq!(run(&["witness-check", "--certificate", cert_s]).status.code(), Some(0));

    let tampered = dir.path().join("bad.cert");
    fs::write(
        &tampered,
        "x=(1,2,3,4,5) y=(1,3,5,2,4) b=(1,2,3,4,5,6,7,8) case=odd_m_even\n",
    )
    .unwrap();
    let o = run(&["witness-check", "--certificate", tampered.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("order of b is 8"));
}

#[test]
fn input_errors_exit_2() {
    let missing = Path::new("tests/fixtures/does-not-exist.grp");
    assert_eq!(
        run(&["analyze", "--group", missing.to_str().unwrap()]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["witness", "--n", "5", "--perm", "(1,2)"]).status.code(), Some(2));
    assert_eq!(
        run(&["witness", "--n", "5", "--perm", "(1,2,2)"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["witness", "--n", "4", "--perm", "(1,2,3)"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&[
            "star",
            "--group",
            "tests/fixtures/s3.grp",
            "--family",
            "gamma",
            "--k",
            "0"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(run(&["conjecture", "--catalog", "nonesuch"]).status.code(), Some(2));
    assert_eq!(run(&["witness-sweep", "--n", "10"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn element_cap_flag_and_env() {
    let o = run(&["analyze", "--group", "tests/fixtures/s4.grp", "--max-elements", "10"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap of 10"));
    let o = Command::new(env!("CARGO_BIN_EXE_coprimator"))
        .args(["analyze", "--group", "tests/fixtures/s4.grp"])
        .current_dir(crate_dir())
        .env("COPRIMATOR_MAX_ELEMENTS", "23")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_coprimator"))
        .args(["analyze", "--group", "tests/fixtures/s4.grp"])
        .current_dir(crate_dir())
        .env("COPRIMATOR_MAX_ELEMENTS", "24")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}
