use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn optbwtrl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_optbwtrl")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn example_text(dir: &Path) -> String {
    let path = dir.join("text.txt");
    fs::write(&path, "missisismississippi\n").unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn lems_on_the_example_text() {
    let dir = TempDir::new().unwrap();
    let text = example_text(dir.path());
    let out = stdout(&optbwtrl(&["lems", &text, "-p", "ssis", "-L", "3"]));
    assert_eq!(out, "1\t3\t4\n1\t11\t4\n1\t14\t3\n2\t6\t3\n");
    let direct = stdout(&optbwtrl(&["lems", &text, "-p", "ssis", "-L", "3", "--direct"]));
    assert_eq!(direct, out);
    let header = stdout(&optbwtrl(&["lems", &text, "-p", "ssis", "-L", "3", "--header"]));
    assert!(header.starts_with("p_start\tt_start\tlen\n"));
}

#[test]
fn stats_and_count() {
    let dir = TempDir::new().unwrap();
    let text = example_text(dir.path());
    let stats = stdout(&optbwtrl(&["stats", &text]));
    assert!(stats.contains("n\t20\n"));
    assert!(stats.contains("r\t12\n"));
    assert_eq!(stdout(&optbwtrl(&["count", &text, "-p", "iss"])), "3\n");
    assert_eq!(stdout(&optbwtrl(&["locate", &text, "-p", "iss"])), "2\n10\n13\n");
    assert_eq!(stdout(&optbwtrl(&["count", &text, "-p", "xyz"])), "0\n");
}

#[test]
fn reloaded_index_answers_identically() {
    let dir = TempDir::new().unwrap();
    let text = example_text(dir.path());
    let index = dir.path().join("text.idx");
    let index = index.to_str().unwrap();
    stdout(&optbwtrl(&["build", &text, "-o", index, "-d", "3"]));
    let patterns = dir.path().join("patterns.txt");
    fs::write(&patterns, "ssis\nsippis\nmiss\nzz\n").unwrap();
    let patterns = patterns.to_str().unwrap();
    for cmd in ["count", "locate", "ms", "lems"] {
        let a = stdout(&optbwtrl(&[cmd, &text, "-d", "3", "--patterns", patterns]));
        let b = stdout(&optbwtrl(&[cmd, index, "--patterns", patterns]));
        assert_eq!(a, b, "{cmd}");
    }
    let a = stdout(&optbwtrl(&["lems", index, "--patterns", patterns, "-L", "2"]));
    let b = stdout(&optbwtrl(&["lems", index, "--patterns", patterns, "-L", "2", "--direct"]));
    assert_eq!(a, b);
    assert!(a.lines().all(|l| l.split('\t').count() == 4));
}

#[test]
fn fasta_input_and_mems() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("panel.fa");
    fs::write(&path, ">a\nACGTAC\nGGTT\n>b\nACGTTT\n").unwrap();
    let path = path.to_str().unwrap();
    let stats = stdout(&optbwtrl(&["stats", path, "--fasta"]));
    // 10 + 6 symbols, one separator, one sentinel.
    assert!(stats.contains("n\t18\n"));
    let mems = stdout(&optbwtrl(&["mems", path, "--fasta", "-p", "ACGTT"]));
    assert_eq!(mems, "1\t12\t5\n");
    let lems = stdout(&optbwtrl(&["lems", path, "--fasta", "-p", "ACGTT", "-L", "4"]));
    assert_eq!(lems, "1\t1\t4\n1\t12\t5\n");
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let text = example_text(dir.path());
    assert_eq!(optbwtrl(&["lems", &text, "-p", "a", "-L", "0"]).status.code(), Some(2));
    assert_eq!(optbwtrl(&["stats", &text, "-d", "1"]).status.code(), Some(2));
    assert_eq!(optbwtrl(&["count", &text]).status.code(), Some(2));
    assert_eq!(optbwtrl(&["count", "/nonexistent/file", "-p", "a"]).status.code(), Some(3));

    let idx = dir.path().join("x.idx");
    let idx = idx.to_str().unwrap();
    stdout(&optbwtrl(&["build", &text, "-o", idx]));
    let mut bytes = fs::read(idx).unwrap();
    let mid = bytes.len() / 2;
    bytes[mid] ^= 0xff;
    fs::write(idx, &bytes).unwrap();
    assert_eq!(optbwtrl(&["count", idx, "-p", "a"]).status.code(), Some(4));

    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "ab$c").unwrap();
    assert_eq!(optbwtrl(&["count", bad.to_str().unwrap(), "-p", "a"]).status.code(), Some(1));
}

#[test]
fn selftest_passes() {
    let out = stdout(&optbwtrl(&["selftest", "--cases", "40", "--seed", "7"]));
    assert!(out.contains("40 cases passed"));
}
