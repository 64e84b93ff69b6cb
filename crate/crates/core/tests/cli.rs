use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use tiltlab::problem::{parse_problem, parse_unvalidated};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn tiltlab(args: &[&str], out: &Path) -> i32 {
    Command::new(env!("CARGO_BIN_EXE_tiltlab"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .expect("binary runs")
        .status
        .code()
        .unwrap_or(-1)
}

fn certificate(out: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(out.join("certificate.json")).unwrap()).unwrap()
}

#[test]
fn every_subcommand_succeeds_on_the_example() {
    let dir = tempfile::tempdir().unwrap();
    let ex = fixture("worked_example.json");
    for cmd in ["check", "subrings", "verify", "gldim", "present"] {
        let out = dir.path().join(cmd);
        assert_eq!(tiltlab(&[cmd, ex.to_str().unwrap()], &out), 0, "{cmd}");
        assert_eq!(certificate(&out)["verdict"], true, "{cmd}");
    }
    for name in ["Lambda1", "Lambda2"] {
        assert!(dir.path().join("verify").join(format!("presentation_{name}.json")).exists());
        assert!(dir.path().join("present").join(format!("quiver_{name}.dot")).exists());
    }
}

#[test]
fn present_single_algebra() {
    let dir = tempfile::tempdir().unwrap();
    let ex = fixture("worked_example.json");
    assert_eq!(tiltlab(&["present", ex.to_str().unwrap(), "EndT"], dir.path()), 0);
    let p: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("presentation_EndT.json")).unwrap()).unwrap();
    assert_eq!(p["dim"], 11);
    assert!(!dir.path().join("presentation_Lambda1.json").exists());
}

#[test]
fn io_and_syntax_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(tiltlab(&["verify", "/nonexistent/problem.json"], dir.path()), 2);
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ \"field\": ").unwrap();
    assert_eq!(tiltlab(&["check", bad.to_str().unwrap()], &dir.path().join("o")), 2);
}

#[test]
fn split_sequence_over_f3() {
    let text = std::fs::read_to_string(fixture("split_sequence.json")).unwrap();
    let mut v: Value = serde_json::from_str(&text).unwrap();
    v["field"] = serde_json::json!({"kind": "PrimeField", "p": 3});
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f3.json");
    std::fs::write(&f, v.to_string()).unwrap();
    assert_eq!(tiltlab(&["verify", f.to_str().unwrap()], &dir.path().join("o")), 0);
    assert_eq!(certificate(&dir.path().join("o"))["field"], "F_3");
}

#[test]
fn unsupported_characteristic_is_reported() {
    let text = std::fs::read_to_string(fixture("split_sequence.json")).unwrap();
    let mut v: Value = serde_json::from_str(&text).unwrap();
    v["field"] = serde_json::json!({"kind": "PrimeField", "p": 9});
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f9.json");
    std::fs::write(&f, v.to_string()).unwrap();
    let code = tiltlab(&["check", f.to_str().unwrap()], &dir.path().join("o"));
    assert_ne!(code, 0);
}

#[test]
fn problem_files_round_trip() {
    for name in ["worked_example.json", "split_sequence.json", "corrupted_alpha.json"] {
        let text = std::fs::read_to_string(fixture(name)).unwrap();
        let spec = parse_unvalidated(&text).unwrap();
        let again = parse_unvalidated(&spec.to_json()).unwrap();
        assert_eq!(spec, again, "{name}");
        assert_eq!(spec.digest(), again.digest());
    }
    assert!(parse_problem(&std::fs::read_to_string(fixture("worked_example.json")).unwrap()).is_ok());
}
