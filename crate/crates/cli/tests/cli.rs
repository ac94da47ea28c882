use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

const P4: &str = "4 3\n1 2\n2 3\n3 4\n";
const PETERSEN: &str = "10 15\n1 2\n2 3\n3 4\n4 5\n5 1\n1 6\n2 7\n3 8\n4 9\n5 10\n6 8\n8 10\n10 7\n7 9\n9 6\n";

fn file(name: &str, contents: &str) -> String {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_str().unwrap().to_string()
}

fn iscount(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_iscount")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> &str {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    std::str::from_utf8(&o.stdout).unwrap().trim()
}

#[test]
fn counts_a_path() {
    let f = file("cli-p4.txt", P4);
    assert_eq!(stdout(&iscount(&["count", &f])), "8");
}

#[test]
fn count_agrees_with_oracle() {
    let f = file("cli-petersen.txt", PETERSEN);
    let engine = iscount(&["count", &f]);
    let oracle = iscount(&["oracle", &f]);
    assert_eq!(stdout(&engine), "76");
    assert_eq!(stdout(&engine), stdout(&oracle));
}

#[test]
fn chromatic_number_of_petersen() {
    let f = file("cli-petersen-chi.txt", PETERSEN);
    assert_eq!(stdout(&iscount(&["chromatic", &f])), "3");
    assert_eq!(stdout(&iscount(&["chromatic", &f, "--jobs", "4"])), "3");
}

#[test]
fn stats_json_has_counters() {
    let f = file("cli-p4-json.txt", P4);
    let out = iscount(&["count", &f, "--stats", "--json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&out)).unwrap();
    assert!(v.to_string().contains("branch_nodes"));
}

#[test]
fn dimacs_input() {
    let f = file("cli-p4.col", "c path\np edge 4 3\ne 1 2\ne 2 3\ne 3 4\n");
    assert_eq!(stdout(&iscount(&["count", &f, "--format", "dimacs"])), "8");
}

#[test]
fn reads_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_iscount"))
        .args(["count", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(P4.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(stdout(&out), "8");
}

#[test]
fn cutoff_from_environment() {
    let f = file("cli-petersen-env.txt", PETERSEN);
    let out = Command::new(env!("CARGO_BIN_EXE_iscount"))
        .args(["count", &f])
        .env("ISCOUNT_CUTOFF", "2")
        .output()
        .unwrap();
    assert_eq!(stdout(&out), "76");
    let bad = Command::new(env!("CARGO_BIN_EXE_iscount"))
        .args(["count", &f])
        .env("ISCOUNT_CUTOFF", "1")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn parse_errors_exit_2() {
    let f = file("cli-bad.txt", "3 1\n1 4\n");
    let out = iscount(&["count", &f]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn oracle_cap_exits_3() {
    let f = file("cli-big.txt", "30 0\n");
    assert_eq!(iscount(&["oracle", &f]).status.code(), Some(3));
}

#[test]
fn selftest_passes() {
    let out = iscount(&["selftest", "--trials", "20", "--max-n", "10"]);
    assert!(stdout(&out).ends_with("ok"));
}
