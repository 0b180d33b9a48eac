use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn hm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hm")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_string_lossy().into_owned()
}

fn gen(dir: &TempDir, family: &str, n: &str, s: &str) -> String {
    let file = path(dir, &format!("{family}_{n}_{s}.h3"));
    let o = hm(&["gen", "--family", family, "--n", n, "--s", s, "--out", &file]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    file
}

#[test]
fn gen_writes_file_and_certificate() {
    let dir = TempDir::new().unwrap();
    let file = gen(&dir, "h3", "9", "3");
    let cert = std::fs::read_to_string(format!("{file}.cert")).unwrap();
    assert_eq!(cert.trim(), "T: 2 3 4 5 6 7 8 9");
    let text = std::fs::read_to_string(&file).unwrap();
    assert!(text.starts_with("9 56\n"));
}

#[test]
fn stats_and_solve_on_h2() {
    let dir = TempDir::new().unwrap();
    let file = gen(&dir, "h2", "9", "3");
    let out = stdout(&hm(&["stats", &file]));
    assert!(out.contains("sigma2=32"));
    assert!(out.contains("isolated=0"));
    let o = hm(&["solve", &file]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("nu=2 proved=true\n"), "{out}");
    assert_eq!(out.lines().count(), 3);
}

#[test]
fn solve_respects_target() {
    let dir = TempDir::new().unwrap();
    let file = gen(&dir, "h1", "12", "4");
    let out = stdout(&hm(&["solve", &file, "--target", "2"]));
    let first = out.lines().next().unwrap();
    assert!(first.starts_with("nu="), "{first}");
    assert!(hm(&["solve", &file, "--budget", "0"]).status.code() == Some(1));
}

#[test]
fn recognize_reports_membership_and_certificate() {
    let dir = TempDir::new().unwrap();
    let h2 = gen(&dir, "h2", "9", "3");
    let out = stdout(&hm(&["recognize", &h2, "--family", "h2", "--s", "3"]));
    assert!(out.contains("member=true"));
    assert!(out.contains("T: 5 6 7 8 9"));
    let h3 = gen(&dir, "h3", "9", "3");
    let out = stdout(&hm(&["recognize", &h3, "--family", "h2", "--s", "3"]));
    assert_eq!(out.trim(), "member=false");
}

#[test]
fn match_prints_none_or_matching() {
    let dir = TempDir::new().unwrap();
    let h2 = gen(&dir, "h2", "9", "3");
    let out = stdout(&hm(&["match", &h2, "--s", "3", "--hybrid"]));
    assert!(out.contains("|U|="));
    assert_eq!(out.lines().last(), Some("none"));
    let out = stdout(&hm(&["match", &h2, "--s", "2", "--epsilon", "0.3"]));
    assert!(out.contains("matching size=2"));
}

#[test]
fn malformed_input_is_an_error() {
    let dir = TempDir::new().unwrap();
    let file = path(&dir, "bad.h3");
    std::fs::write(&file, "5 2\n1 2 3\n").unwrap();
    let o = hm(&["stats", &file]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line"));
}

#[test]
fn lemma_sweeps_exit_cleanly() {
    let o = hm(&["verify-lemmas", "--variant", "L2", "--seed", "1", "--iters", "2000"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("violations=0"));
    let o = hm(&["verify-lemmas", "--variant", "AH", "--exhaustive"]);
    assert!(o.status.success());
    assert_eq!(hm(&["verify-lemmas", "--variant", "L9"]).status.code(), Some(1));
}

#[test]
fn campaign_reports_are_byte_identical_across_thread_counts() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (path(&dir, "a.txt"), path(&dir, "b.txt"));
    let args = |out: &str| {
        vec!["campaign", "--mode", "sampled", "--n", "12", "--s", "3", "--seed", "42", "--iters", "300", "--out"]
            .into_iter()
            .map(String::from)
            .chain([out.to_string()])
            .collect::<Vec<_>>()
    };
    let run = |out: &str, threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_hm")).args(args(out)).env("HM_THREADS", threads).output().unwrap()
    };
    assert!(run(&a, "1").status.success());
    assert!(run(&b, "4").status.success());
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    assert!(String::from_utf8_lossy(&ta).starts_with("hm-campaign-report v1\n"));
}

#[test]
fn campaign_argument_errors() {
    let dir = TempDir::new().unwrap();
    let out = path(&dir, "r.txt");
    assert_eq!(hm(&["campaign", "--mode", "sampled", "--n", "12", "--s", "3", "--out", &out]).status.code(), Some(1));
    assert_eq!(hm(&["campaign", "--mode", "exhaustive", "--n", "7", "--s", "2", "--out", &out]).status.code(), Some(1));
    assert!(!Path::new(&out).exists());
}

#[test]
fn exhaustive_campaign_small() {
    let dir = TempDir::new().unwrap();
    let out = path(&dir, "r.txt");
    let o = hm(&["--sequential", "campaign", "--mode", "exhaustive", "--n", "5", "--s", "1", "--out", &out]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("instances 1024\n"));
    assert!(text.contains("total COUNTEREXAMPLE 0\n"));
}

#[test]
fn audits_pass() {
    let o = hm(&["audit-sigma2", "--n", "9", "--s", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("max_sigma2=22 violations=0"));
    let o = hm(&["audit-crossover", "--nmax", "30"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("mismatches=0"));
}

#[test]
fn bad_thread_cap_is_rejected() {
    let o = Command::new(env!("CARGO_BIN_EXE_hm")).args(["audit-crossover", "--nmax", "9"]).env("HM_THREADS", "zero").output().unwrap();
    assert_eq!(o.status.code(), Some(1));
}
