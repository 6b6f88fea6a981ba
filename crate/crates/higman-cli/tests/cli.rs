//! End-to-end tests of the binary: exit codes, the word grammar, config
//! handling, and byte-stable exports.

use std::process::{Command, Output};

fn higman(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_higman"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn wp_exit_codes() {
    let o = higman(&["wp", "a0 a1 a0^-1 a1^-2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("trivial"));

    let o = higman(&["wp", "a0 a2 a0^-1 a2^-1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("nontrivial"));

    let o = higman(&["wp", "b0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("parse error"));
}

#[test]
fn wp_respects_params() {
    // the relator of (2,2,2,2) is nontrivial at (2,3,5,7)
    let o = higman(&["wp", "--params", "2,3,5,7", "a1 a2 a1^-1 a2^-2"]);
    assert_eq!(o.status.code(), Some(1));
    let o = higman(&["wp", "--params", "2,3,5,7", "a1 a2 a1^-1 a2^-3"]);
    assert_eq!(o.status.code(), Some(0));
    // m = 1 is rejected
    let o = higman(&["wp", "--params", "1,2,2,2", "a0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn hom_shift_examples() {
    let o = higman(&["hom", "a1", "a2", "a3", "a0"]);
    assert_eq!(o.status.code(), Some(0));
    let o = higman(&["hom", "--params", "2,3,5,7", "a1", "a2", "a3", "a0"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn ball_export_deterministic_and_round_trip() {
    let a = higman(&["ball", "-r", "1", "-N", "1", "--export", "json"]);
    let b = higman(&["ball", "-r", "1", "-N", "1", "--export", "json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b), "exports are byte-stable");
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(parsed["squares"].as_array().unwrap().len(), 9);
    let dot = higman(&["ball", "-r", "1", "-N", "1", "--export", "dot"]);
    assert!(stdout(&dot).starts_with("digraph ball"));
}

#[test]
fn diagram_fill_and_audit() {
    let o = higman(&["diagram", "fill", "a0 a1 a0^-1 a1^-2"]);
    assert_eq!(o.status.code(), Some(0));
    let json = stdout(&o);
    let dir = std::env::temp_dir().join("higman-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("fill.json");
    std::fs::write(&path, &json).unwrap();
    let o = higman(&["diagram", "audit", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("total: 4"));

    let o = higman(&["diagram", "fill", "a0 a2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn config_file_flags_win() {
    let dir = std::env::temp_dir().join("higman-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("config.txt");
    std::fs::write(&path, "params = 2,3,5,7\nseed = 5\n").unwrap();
    // config file applies
    let o = higman(&["wp", "--config", path.to_str().unwrap(), "a1 a2 a1^-1 a2^-3"]);
    assert_eq!(o.status.code(), Some(0));
    // explicit flag wins over the file
    let o = higman(&[
        "wp",
        "--config",
        path.to_str().unwrap(),
        "--params",
        "2,2,2,2",
        "a1 a2 a1^-1 a2^-3",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn freecert_negative_precondition() {
    // hyperbolic element: not elliptic, so the precondition fails cleanly
    let o = higman(&[
        "freecert", "--a", "a0^-1 a2^-1", "--b", "a1", "-k", "1", "-l", "1", "-L", "2", "-r", "1",
        "-N", "2",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn classify_and_acyl() {
    let o = higman(&["classify", "a1", "-r", "1", "-N", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("elliptic"));
    let o = higman(&["acyl", "-r", "1", "-N", "2", "--spot-checks", "20"]);
    assert_eq!(o.status.code(), Some(0));
}
