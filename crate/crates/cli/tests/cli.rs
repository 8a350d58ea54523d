use std::path::Path;
use std::process::{Command, Output};

fn schur(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_schur"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn enumerate_counts() {
    for (g, n) in [("C2xC2xC2", 9), ("C4", 3), ("C1", 1)] {
        let o = schur(&["enumerate", g]);
        assert!(o.status.success());
        assert!(stdout(&o).ends_with(&format!("count={n}\n")), "{g}");
    }
}

#[test]
fn enumerate_writes_loadable_files() {
    let dir = tempfile::tempdir().unwrap();
    let o = schur(&["enumerate", "C5", "--out", dir.path().to_str().unwrap(), "--format", "machine"]);
    assert!(o.status.success());
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.last().unwrap(), "count=3");
    let mut files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    assert_eq!(files.len(), 3);
    for (f, line) in files.iter().zip(&lines) {
        assert_eq!(std::fs::read_to_string(f).unwrap().trim(), line);
        let v = schur(&["validate", f.to_str().unwrap()]);
        assert!(v.status.success());
    }
}

#[test]
fn usage_and_parse_errors_exit_2() {
    assert_eq!(schur(&["enumerate", "C4x"]).status.code(), Some(2));
    assert_eq!(schur(&["enumerate"]).status.code(), Some(2));
    assert_eq!(schur(&["enumerate", "C2", "--bogus"]).status.code(), Some(2));
    assert_eq!(schur(&["enumerate", "C5xC5xC3"]).status.code(), Some(2));
    assert_eq!(schur(&["validate", "/nonexistent.json"]).status.code(), Some(2));
}

#[test]
fn invalid_sring_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bad.json", r#"{"group":"C4","classes":[[0],[1],[2,3]]}"#);
    let o = schur(&["validate", &f]);
    assert_eq!(o.status.code(), Some(1));
    let f = write(dir.path(), "junk.json", "{");
    assert_eq!(schur(&["validate", &f]).status.code(), Some(2));
}

#[test]
fn separability_examples() {
    assert!(schur(&["separability", "C2xC2xC5"]).status.success());
    assert!(schur(&["separability", "C2xC2xC2"]).status.success());
    let dir = tempfile::tempdir().unwrap();
    let rank2: Vec<Vec<usize>> = vec![vec![0], (1..12).collect()];
    let body = format!(r#"{{"group":"C12","classes":{rank2:?}}}"#);
    let f = write(dir.path(), "rank2_c12.json", &body);
    let o = schur(&["separability", "--sring", &f]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("separable=true"));
}

#[test]
fn machine_reports_ignore_thread_count() {
    let one = schur(&["separability", "C2xC6", "--format", "machine", "--threads", "1"]);
    let four = schur(&["separability", "C2xC6", "--format", "machine", "--threads", "4"]);
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
    let one = schur(&["wl", "experiment", "--order", "8", "--format", "machine", "--threads", "1"]);
    let four = schur(&["wl", "experiment", "--order", "8", "--format", "machine", "--threads", "3"]);
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn products_and_closure() {
    let o = schur(&["product", "family", "family:i=1,p=7,k=3"]);
    assert!(stdout(&o).starts_with("rank 10 over C2xC2xC7"));
    let o = schur(&["product", "family", "family:i=1,p=7,k=3", "--xi"]);
    assert!(stdout(&o).starts_with("rank 10 over C2xC2xC7"));
    assert_eq!(schur(&["product", "family", "family:i=1,p=5,k=2"]).status.code(), Some(2));
    let o = schur(&["product", "subdirect", "--u", "2", "--v", "4", "--format", "machine"]);
    assert!(stdout(&o).contains(r#""order":4"#));
    let o = schur(&["product", "cyclotomic", "C5", "--aut", "4"]);
    assert!(stdout(&o).contains("[1, 4]"));
    let o = schur(&["closure", "C4", "--set", "1,3"]);
    assert!(stdout(&o).starts_with("rank 3 over C4"));

    let dir = tempfile::tempdir().unwrap();
    let c2 = write(dir.path(), "c2.json", r#"{"group":"C2","classes":[[0],[1]]}"#);
    let o = schur(&["product", "tensor", &c2, &c2]);
    assert!(stdout(&o).starts_with("rank 4 over C2xC2"));
    let o = schur(&["product", "wreath", "--group", "C4", "--subgroup", "0,2", &c2, &c2]);
    assert!(stdout(&o).starts_with("rank 3 over C4"), "{}", stdout(&o));
}

#[test]
fn isomorphism_commands() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.json", r#"{"group":"C4","classes":[[0],[1,3],[2]]}"#);
    let b = write(dir.path(), "b.json", r#"{"group":"C2xC2","classes":[[0],[1,2],[3]]}"#);
    let o = schur(&["iso", "algebraic", &a, &b]);
    assert!(stdout(&o).starts_with("1 algebraic"));
    let o = schur(&["iso", "cayley", &a, &b]);
    assert!(stdout(&o).starts_with("0 Cayley"));
    let o = schur(&["iso", "combinatorial", &a, &b]);
    assert!(stdout(&o).starts_with("2 combinatorial"));
    let o = schur(&["iso", "induce", &a, &b, "--phi", "0,1,2"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("induced by"));
    assert_eq!(schur(&["iso", "induce", &a, &b, "--phi", "0,2,1"]).status.code(), Some(2));
    let o = schur(&["aut", &a]);
    assert!(stdout(&o).contains("= 8"));
}

#[test]
fn classify_and_wl() {
    let dir = tempfile::tempdir().unwrap();
    let zg: Vec<Vec<usize>> = (0..12).map(|x| vec![x]).collect();
    let f = write(dir.path(), "zg.json", &format!(r#"{{"group":"C2xC2xC3","classes":{zg:?}}}"#));
    assert_eq!(stdout(&schur(&["classify", &f])).trim(), "TrivialZG");
    let o = schur(&["wl", "refine", "C6", "--set", "1,5"]);
    assert!(stdout(&o).starts_with("4 colours"));
    assert_eq!(schur(&["wl", "refine", "C6", "--set", "0,1"]).status.code(), Some(2));
    let o = schur(&["wl", "experiment", "--order", "12"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("failures 0"));
}

#[test]
fn paper_verify_lines() {
    let o = schur(&["paper-verify", "--primes", "2", "--instances", "50"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.lines().next().unwrap() == "Sring0: count=9 PASS");
    assert!(out.lines().all(|l| l.ends_with("PASS")));
    let o = schur(&["paper-verify", "--primes", "3", "--skip", "wl", "--instances", "20"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("wl n=12: --skip SKIPPED"));
}
