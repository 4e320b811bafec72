mod common;

use std::path::Path;
use std::process::{Command, Output};

use common::*;

fn mj2ml(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mj2ml")).args(args).current_dir(root()).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn translate_writes_sml() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("Factorial.sml");
    let o = mj2ml(&["translate", "corpus/Factorial.java", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("(* Generated by mj2ml"));
    assert!(text.contains("corpus/Factorial.java"));
    assert!(text.contains("fun print_int"));
}

#[test]
fn translate_defaults_to_sibling_file() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("F.java");
    std::fs::copy(root().join("corpus/Factorial.java"), &input).unwrap();
    let o = mj2ml(&["translate", input.to_str().unwrap(), "--heap-encoding", "assoc"]);
    assert_eq!(code(&o), 0);
    assert!(Path::new(&dir.path().join("F.sml")).exists());
}

#[test]
fn parse_error_exits_1_with_position() {
    let o = mj2ml(&["translate", "negative/parse_missing_semicolon.java"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).starts_with("negative/parse_missing_semicolon.java:1:71: expected ';'"), "{}", stderr(&o));
}

#[test]
fn type_error_exits_2() {
    let o = mj2ml(&["check", "negative/type_println_boolean.java"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("type mismatch: expected int, found boolean"));
}

#[test]
fn runtime_fault_exits_3() {
    let o = mj2ml(&["run-mj", "faulting/NullDeref.java"]);
    assert_eq!(code(&o), 3);
    assert_eq!(stdout(&o), "1\n");
    assert_eq!(stderr(&o).trim(), "fault: NullDereference at 13:16");
    // The translation faults through a failed match instead.
    let o = mj2ml(&["run-ml", "faulting/NullDeref.java"]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("MatchFailure"));
}

#[test]
fn unreadable_input_exits_4() {
    let o = mj2ml(&["run-mj", "no/such/file.java"]);
    assert_eq!(code(&o), 4);
    let o = mj2ml(&["translate", "corpus/Factorial.java", "--out", "/nonexistent-dir/x.sml"]);
    assert_eq!(code(&o), 4);
}

#[test]
fn fuel_exhaustion_exits_5() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("Spin.java");
    std::fs::write(&f, "class Spin { public static void main(String[] a) { while (true) System.out.println(1); } }").unwrap();
    for cmd in ["run-mj", "run-ml"] {
        let o = mj2ml(&[cmd, f.to_str().unwrap(), "--fuel", "1000"]);
        assert_eq!(code(&o), 5, "{cmd}");
    }
}

#[test]
fn run_commands_agree_on_factorial() {
    let mj = mj2ml(&["run-mj", "corpus/Factorial.java"]);
    let ml = mj2ml(&["run-ml", "corpus/Factorial.java"]);
    assert_eq!(code(&mj), 0);
    assert_eq!(code(&ml), 0);
    assert_eq!(stdout(&mj), "3628800\n");
    assert_eq!(stdout(&mj), stdout(&ml));
}

#[test]
fn negative_suite_exit_codes() {
    let mut seen = 0;
    for entry in std::fs::read_dir(root().join("negative")).unwrap() {
        let path = entry.unwrap().path();
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        let expected = if name.starts_with("type_") { 2 } else { 1 };
        let o = mj2ml(&["translate", path.to_str().unwrap(), "--out", "/dev/null"]);
        assert_eq!(code(&o), expected, "{name}: {}", stderr(&o));
        seen += 1;
    }
    assert!(seen >= 10);
}

fn untimed(report: &str) -> String {
    report.lines().map(|l| l.rsplit_once(" | ").unwrap().0.to_string()).collect::<Vec<_>>().join("\n")
}

#[test]
fn diff_report_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let saved = dir.path().join("report.txt");
    let a = mj2ml(&["diff", "corpus", "--seed", "7", "--count", "5", "--out", saved.to_str().unwrap()]);
    let b = mj2ml(&["diff", "corpus", "--seed", "7", "--count", "5"]);
    assert_eq!(code(&a), 0);
    assert_eq!(untimed(&stdout(&a)), untimed(&stdout(&b)));
    assert_eq!(std::fs::read_to_string(saved).unwrap(), stdout(&a));
    let header = stdout(&a).lines().next().unwrap().to_string();
    assert_eq!(header.split(" | ").map(str::trim).collect::<Vec<_>>(), ["program", "mj", "ml", "verdict", "ms"]);
    assert_eq!(stdout(&a).lines().count(), 1 + 8 + 5);
}

#[test]
fn diff_with_broken_file_exits_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("Broken.java"), "class").unwrap();
    let o = mj2ml(&["diff", dir.path().to_str().unwrap()]);
    assert_ne!(code(&o), 0);
    assert!(stdout(&o).contains("failed"));
}
