//! End-to-end checks of the binary: exit-code contract, worked-example
//! answers, and JSON round-tripping.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/fixtures");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn stabkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stabkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn analyze_triangle_square_text() {
    let out = stabkit(&["analyze", "--input", &fixture("triangle_square.txt")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("astab = 4"));
    assert!(text.contains("dstab = 4"));
    assert!(text.contains("dstab <= 6"));
}

#[test]
fn analyze_triangle() {
    let out = stabkit(&["analyze", "--input", &fixture("triangle.txt")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("astab = 2"));
    assert!(text.contains("dstab = 2"));
}

#[test]
fn analyze_bipartite_is_exit_3() {
    let out = stabkit(&["analyze", "--input", &fixture("c4.txt")]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bipartite"));
}

#[test]
fn parse_error_is_exit_2() {
    let out = stabkit(&["analyze", "--input", &fixture("bad.txt")]);
    assert_eq!(out.status.code(), Some(2));
    let missing = stabkit(&["analyze", "--input", "/nonexistent/graph.txt"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn analyze_json_roundtrips_byte_identical() {
    let out = stabkit(&["analyze", "--input", &fixture("triangle_square.txt"), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["astab"], 4);
    assert_eq!(value["dstab"], 4);
    // Emit -> parse -> emit must be byte-identical.
    let reparsed = serde_json::to_string_pretty(&value).unwrap();
    assert_eq!(text.trim_end(), reparsed);
}

#[test]
fn ass_command() {
    let out = stabkit(&["ass", "--input", &fixture("triangle_square.txt"), "--k", "2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let sets: Vec<Vec<String>> = serde_json::from_str(&stdout(&out)).unwrap();
    let k1 = stabkit(&["ass", "--input", &fixture("triangle_square.txt"), "--k", "1", "--format", "json"]);
    let sets1: Vec<Vec<String>> = serde_json::from_str(&stdout(&k1)).unwrap();
    assert_eq!(sets.len(), sets1.len() + 3);
}

#[test]
fn phi_command() {
    let out = stabkit(&["phi", "--input", &fixture("triangle_square.txt"), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["phi"], 1);
    assert_eq!(v["psi"], 2);
}

#[test]
fn decompose_dot_and_json() {
    let dot = stabkit(&[
        "decompose",
        "--input",
        &fixture("triangle_square.txt"),
        "--odd-start",
        "--format",
        "dot",
    ]);
    assert_eq!(dot.status.code(), Some(0));
    let text = stdout(&dot);
    assert!(text.starts_with("graph ears {"));
    assert!(text.contains("color=red"));
    assert!(text.contains("style=dashed"));
    assert!(text.contains("color=blue"));

    let json = stabkit(&[
        "decompose",
        "--input",
        &fixture("triangle_square.txt"),
        "--odd-start",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(v["ears"].as_array().unwrap().len(), 4);
    assert_eq!(v["ears"][0]["kind"], "initial-cycle");

    // Odd start on a bipartite graph is a precondition failure.
    let bad = stabkit(&["decompose", "--input", &fixture("c4.txt"), "--odd-start"]);
    assert_eq!(bad.status.code(), Some(3));
}

#[test]
fn oracle_command_and_caps() {
    let out = stabkit(&["oracle", "--input", &fixture("triangle.txt"), "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("x^2, y^2, z^2"));
    let capped = stabkit(&["oracle", "--input", &fixture("triangle.txt"), "--k", "5"]);
    assert_eq!(capped.status.code(), Some(4));
}

#[test]
fn verify_command_agrees() {
    for f in ["triangle.txt", "c5.txt", "triangle_square.txt"] {
        let k_max = if f == "triangle_square.txt" { "4" } else { "3" };
        let out = stabkit(&["verify", "--input", &fixture(f), "--k-max", k_max]);
        assert_eq!(out.status.code(), Some(0), "{f}: {}", stdout(&out));
        assert!(!stdout(&out).contains("NO"));
    }
}

#[test]
fn corpus_command() {
    let out = stabkit(&["corpus", "--max-vertices", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("pass"));
    let refused = stabkit(&["corpus", "--max-vertices", "8"]);
    assert_eq!(refused.status.code(), Some(4));
    let random = stabkit(&[
        "corpus",
        "--max-vertices",
        "6",
        "--random",
        "--samples",
        "5",
        "--seed",
        "7",
    ]);
    assert_eq!(random.status.code(), Some(0));
}

#[test]
fn limits_env_override() {
    let out = Command::new(env!("CARGO_BIN_EXE_stabkit"))
        .args(["analyze", "--input", &fixture("triangle_square.txt")])
        .env("STABKIT_LIMITS", "max_vertices=4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
    // An explicit flag overrides the environment.
    let out = Command::new(env!("CARGO_BIN_EXE_stabkit"))
        .args(["analyze", "--input", &fixture("triangle_square.txt"), "--max-vertices", "24"])
        .env("STABKIT_LIMITS", "max_vertices=4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn analyze_disconnected_is_exit_3() {
    let dir = std::env::temp_dir().join("stabkit_cli_test_disconnected.txt");
    std::fs::write(&dir, "a b\nc d\n").unwrap();
    let out = stabkit(&["analyze", "--input", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("connected"));
}

#[test]
fn verify_c7_entry_at_four() {
    // The maximal ideal of a 7-cycle enters at k = 4; both routes agree on
    // the whole chain.
    let dir = std::env::temp_dir().join("stabkit_cli_test_c7.txt");
    let edges: String = (1..=7)
        .map(|i| format!("v{} v{}\n", i, if i == 7 { 1 } else { i + 1 }))
        .collect();
    std::fs::write(&dir, edges).unwrap();
    let out = stabkit(&["verify", "--input", dir.to_str().unwrap(), "--k-max", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("3        7       7  yes"));
    assert!(text.contains("4        8       8  yes"));
}

#[test]
fn corpus_random_cap() {
    let out = stabkit(&["corpus", "--random", "--max-vertices", "40"]);
    assert_eq!(out.status.code(), Some(4));
}
