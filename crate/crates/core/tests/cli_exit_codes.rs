//! The installed binary: exit codes and byte-identical output.

use std::process::Command;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_affine-cores"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn success_and_usage_codes() {
    let (code, _) = run(&["verify", "--only", "examples"]);
    assert_eq!(code, 0);
    let (code, _) = run(&["cores", "enumerate", "--family", "X~9", "--rank", "2", "--charge", "0", "--max-height", "1"]);
    assert_eq!(code, 2);
    let (code, _) = run(&["cores", "enumerate", "--family", "C~1", "--rank", "2", "--charge", "5", "--max-height", "1"]);
    assert_eq!(code, 2);
    let (code, _) = run(&["--help"]);
    assert_eq!(code, 0);
}

#[test]
fn enumeration_is_identical_across_runs_and_workers() {
    let base = ["cores", "enumerate", "--family", "D~2", "--rank", "3", "--charge", "1", "--max-height", "10"];
    let (_, reference) = run(&[&base[..], &["--workers", "1"]].concat());
    assert!(!reference.is_empty());
    for workers in ["1", "4", "8"] {
        let (code, text) = run(&[&base[..], &["--workers", workers]].concat());
        assert_eq!(code, 0);
        assert_eq!(text, reference);
    }
}
