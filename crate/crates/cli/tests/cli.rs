//! End-to-end tests of the binary: golden byte comparisons, exit codes, and
//! output determinism.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../golden")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jacquet"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_on(subcommand: &str, example: &str, extra: &[&str]) -> Output {
    let path = golden_dir().join(example).join("instance.json");
    let mut args = vec![subcommand, path.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args)
}

#[test]
fn golden_decompositions_are_byte_exact() {
    for example in ["e1", "e2", "e3", "e4"] {
        let out = run_on("decompose", example, &[]);
        assert!(out.status.success(), "{example}: {:?}", out);
        let expected = fs::read(golden_dir().join(example).join("decomposition.json")).unwrap();
        assert_eq!(out.stdout, expected, "stdout drifted for {example}");
    }
}

#[test]
fn output_is_deterministic_across_runs() {
    for format in ["json", "text"] {
        let first = run_on("decompose", "e2", &["--format", format]);
        let second = run_on("decompose", "e2", &["--format", format]);
        assert!(first.status.success());
        assert_eq!(first.stdout, second.stdout, "format {format} not stable");
    }
}

#[test]
fn out_flag_writes_the_same_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("d.json");
    let instance = golden_dir().join("e1").join("instance.json");
    let out = run(&[
        "decompose",
        instance.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let written = fs::read(&out_path).unwrap();
    let expected = fs::read(golden_dir().join("e1").join("decomposition.json")).unwrap();
    assert_eq!(written, expected);
}

#[test]
fn mustar_term_counts() {
    // a single short segment has three ordered cut pairs
    let out = run_on("mustar", "e1", &[]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["count"], 3);
    assert_eq!(v["terms"].as_array().unwrap().len(), 3);

    // count equals the ordered-pair enumeration for the two-step example
    let out = run_on("mustar", "e2", &[]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let c = v["count"].as_u64().unwrap();
    assert_eq!(c as usize, v["terms"].as_array().unwrap().len());
    assert_eq!(c, 20);

    let text = run_on("mustar", "e1", &["--format", "text"]);
    let s = String::from_utf8(text.stdout).unwrap();
    assert!(s.starts_with("count: 3\n"), "{s}");
}

#[test]
fn mstar_expansion_output() {
    // [1/2, 1/2] has two cuts
    let out = run_on("mstar", "e1", &[]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["count"], 2);
    for term in v["terms"].as_array().unwrap() {
        assert_eq!(term["coeff"], 1);
    }
}

#[test]
fn reduce_test_output() {
    let out = run_on("reduce-test", "e4", &[]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["reducible"], true);
    assert_eq!(v["expected_length"], 2);

    let out = run_on("reduce-test", "e3", &[]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["reducible"], false);
    assert_eq!(v["expected_length"], 1);
}

#[test]
fn invalid_instances_exit_two_with_a_diagnostic() {
    let dir = tempfile::tempdir().unwrap();

    // alpha present on a non-selfdual line
    let bad = dir.path().join("bad_alpha.json");
    fs::write(
        &bad,
        r#"{
            "rho": {"name": "rho", "selfdual": false},
            "sigma": {"name": "sigma"},
            "alpha": {"twice": 1},
            "segments": [{"a": {"twice": 1}, "b": {"twice": 1}}]
        }"#,
    )
    .unwrap();
    let out = run(&["decompose", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("alpha"), "{err}");

    // start below 1/2
    let low = dir.path().join("low_start.json");
    fs::write(
        &low,
        r#"{
            "rho": {"name": "rho", "selfdual": true},
            "sigma": {"name": "sigma"},
            "alpha": {"twice": 1},
            "segments": [{"a": {"twice": -1}, "b": {"twice": 1}}]
        }"#,
    )
    .unwrap();
    let out = run(&["decompose", low.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    // malformed JSON
    let garbled = dir.path().join("garbled.json");
    fs::write(&garbled, "{ not json").unwrap();
    let out = run(&["decompose", garbled.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    // missing file
    let out = run(&["decompose", dir.path().join("nope.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_small_grid_passes() {
    let out = run(&["verify", "--max-t", "1", "--max-exponent", "3/2"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8(out.stdout).unwrap();
    let mut lines = 0;
    for line in stdout.lines() {
        let v: serde_json::Value = serde_json::from_str(line).expect("JSONL report");
        assert_eq!(v["pass"], true, "{line}");
        lines += 1;
    }
    assert!(lines > 0);
    let summary = String::from_utf8(out.stderr).unwrap();
    assert!(summary.contains("0 failed"), "{summary}");
}

#[test]
fn verify_reports_injected_faults_with_exit_three() {
    let out = run(&["verify", "--max-t", "1", "--max-exponent", "1/2", "--inject-fault"]);
    assert_eq!(out.status.code(), Some(3));
    let stdout = String::from_utf8(out.stdout).unwrap();
    let failing: Vec<_> = stdout
        .lines()
        .filter(|l| {
            let v: serde_json::Value = serde_json::from_str(l).unwrap();
            v["pass"] == false
        })
        .collect();
    assert_eq!(failing.len(), 1);
    assert!(failing[0].contains("injected_fault"));
}

#[test]
fn verify_output_is_deterministic() {
    let a = run(&["verify", "--max-t", "1", "--max-exponent", "1"]);
    let b = run(&["verify", "--max-t", "1", "--max-exponent", "1"]);
    assert_eq!(a.stdout, b.stdout);
}
