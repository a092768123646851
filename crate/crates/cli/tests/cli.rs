use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};

use serde_json::Value;

fn input(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden/input")
        .join(name)
}

fn run(args: &[&str], stdin: Option<&str>) -> (i32, String, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_moment-schur"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    if let Some(text) = stdin {
        child
            .stdin
            .take()
            .unwrap()
            .write_all(text.as_bytes())
            .unwrap();
    }
    drop(child.stdin.take());
    let out = child.wait_with_output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn stdin_matches_file_input() {
    let path = input("seq_101.json");
    let text = std::fs::read_to_string(&path).unwrap();
    let (code, from_stdin, _) = run(&["classify", "-"], Some(&text));
    let (_, from_file, _) = run(&["classify", path.to_str().unwrap()], None);
    assert_eq!(code, 0);
    assert_eq!(from_stdin, from_file);
}

#[test]
fn alpha_flag_overrides_file() {
    let seq = r#"{"q": 1, "blocks": [[[1]], [[1]], [[1]]], "alpha": 5}"#;
    let (code, out, _) = run(&["classify", "-", "--alpha", "-1"], Some(seq));
    assert_eq!(code, 0);
    let report: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["path"], "stieltjes");
    assert_eq!(report["alpha"].as_f64(), Some(-1.0));
    assert_eq!(report["is_knnd"], true);

    let (_, from_file, _) = run(&["classify", "-"], Some(seq));
    let report: Value = serde_json::from_str(&from_file).unwrap();
    // A point mass at 1 does not live on [5, ∞).
    assert_eq!(report["is_knnd"], false);
}

#[test]
fn errors_go_to_stderr() {
    let (code, out, err) = run(
        &["schur", input("schur_indefinite.json").to_str().unwrap()],
        None,
    );
    assert_eq!(code, 3);
    assert!(out.is_empty());
    assert!(err.starts_with("moment-schur: "), "{err}");
}

#[test]
fn usage_errors_exit_with_two() {
    let (code, _, _) = run(&["frobnicate"], None);
    assert_eq!(code, 2);
}
