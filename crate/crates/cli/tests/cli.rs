use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use vcfamily::io::{parse_any, parse_system};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_vcfamily"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn tmp(name: &str, contents: &str) -> PathBuf {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

fn constructed(name: &str, n: &str, d: &str) -> String {
    let o = run(&["construct", name, n, d]);
    assert!(o.status.success());
    stdout(&o)
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn vcdim_examples() {
    let hb = tmp("hb52.txt", &constructed("hamming", "5", "2"));
    assert!(stdout(&run(&["vcdim", path(&hb)])).starts_with("vcdim=2 size=16"));
    let empty = tmp("empty.txt", "n 3\n");
    assert!(stdout(&run(&["vcdim", path(&empty)])).starts_with("vcdim=-1 size=0"));
    let ff = tmp("ff52.txt", &constructed("full", "5", "2"));
    assert!(stdout(&run(&["vcdim", path(&ff)])).starts_with("vcdim=2 size=10"));
}

#[test]
fn certify_examples() {
    let st = tmp("star62.txt", &constructed("star", "6", "2"));
    let o = run(&["certify", path(&st), "-d", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("|F|=10 ≤ |shadow|=15 ≤ C(n,d)=15"));

    let ff = tmp("ff52c.txt", &constructed("full", "5", "2"));
    assert!(stdout(&run(&["certify", path(&ff), "-d", "2"])).contains("=10 ≤ |shadow|=10 ≤ C(n,d)=10"));

    let mut all = String::from("n 6\n");
    for a in 1..=6 {
        for b in a + 1..=6 {
            for c in b + 1..=6 {
                all.push_str(&format!("{a} {b} {c}\n"));
            }
        }
    }
    let c63 = tmp("c63.txt", &all);
    let o = run(&["certify", path(&c63), "-d", "2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("{1,2,3}"));
}

#[test]
fn certify_json_carries_version() {
    let st = tmp("star52.txt", &constructed("star", "5", "2"));
    let o = run(&["certify", path(&st), "-d", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["version"], vcfamily::VERSION);
}

#[test]
fn kk_and_audit_examples() {
    assert_eq!(stdout(&run(&["kk", "20", "2"])), "alpha=6 bound=15 cascade=15\n");
    let a = stdout(&run(&["audit", "6", "2"]));
    assert!(
        a.contains("|Y|=5 required>=10") && a.contains("contradiction=confirmed"),
        "{a}"
    );
    let o = run(&["audit", "5", "2"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn audit_sweep_csv() {
    let o = run(&["audit", "--sweep", "14", "30", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("n,d,"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), (2..=14).map(|d| 30 - (2 * d + 2) + 1).sum::<usize>());
    assert!(rows.iter().all(|r| r.ends_with(",true")));
}

#[test]
fn construct_round_trips() {
    let ak = constructed("ak", "8", "2");
    let f = parse_system(&ak).unwrap();
    assert_eq!(f.len(), 22);
    assert_eq!(ak.lines().count(), 23);
    for (name, n, d) in [("star", "7", "3"), ("full", "7", "3"), ("hamming", "6", "2")] {
        let text = constructed(name, n, d);
        assert_eq!(parse_system(&text).unwrap().len(), text.lines().count() - 1);
        let json = stdout(&run(&["construct", name, n, d, "--format", "json"]));
        assert!(json.contains("\"version\""));
        assert_eq!(parse_any(&json).unwrap(), parse_system(&text).unwrap());
    }
}

#[test]
fn search_output_reparses_and_is_thread_stable() {
    let text = stdout(&run(&["search", "6", "2"]));
    assert!(text.starts_with("# best_size=13 optimality=proved-optimal"));
    assert_eq!(parse_system(&text).unwrap().len(), 13);

    let one = run(&["search", "6", "2", "--format", "json", "--threads", "1"]);
    let four = run(&["search", "6", "2", "--format", "json", "--threads", "4"]);
    assert_eq!(one.stdout, four.stdout);
    assert!(!stdout(&one).contains("wall_time"));

    let out = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("search.txt");
    let o = run(&["search", "5", "2", "--out", path(&out)]);
    assert!(o.status.success() && o.stdout.is_empty());
    assert_eq!(parse_system(&std::fs::read_to_string(&out).unwrap()).unwrap().len(), 10);
}

#[test]
fn suites_are_thread_stable() {
    for kind in ["shadow", "singularity"] {
        let args = |t: &'static str| {
            vec![
                "suite",
                kind,
                "--count",
                "40",
                "--max-n",
                "7",
                "--seed",
                "9",
                "--format",
                "json",
                "--threads",
                t,
            ]
        };
        let a = run(&args("1"));
        let b = run(&args("4"));
        assert!(a.status.success(), "{kind}");
        assert_eq!(a.stdout, b.stdout, "{kind}");
    }
}

#[test]
fn dmatrix_verdict() {
    let st = tmp("star62d.txt", &constructed("star", "6", "2"));
    let o = run(&["dmatrix", path(&st), "-d", "2", "--y", "2,3,4", "--z", "{}"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("det(D)=0 m0=1"), "{text}");
    assert!(text.contains("singular ⟺ m0=1: consistent"));
    let o = run(&["dmatrix", path(&st), "-d", "2", "--y", "1,2,3"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&[]).status.code(), Some(1));
    assert_eq!(run(&["nope"]).status.code(), Some(1));
    assert_eq!(run(&["kk", "x", "2"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    let bad = tmp("bad.txt", "n 4\n1 9\n");
    assert_eq!(run(&["vcdim", path(&bad)]).status.code(), Some(2));
    assert_eq!(run(&["vcdim", "/nonexistent/file"]).status.code(), Some(2));
    assert_eq!(run(&["construct", "ak", "5", "2"]).status.code(), Some(3));
    let o = run(&["search", "7", "2", "--budget", "1000"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(parse_system(&stdout(&o)).is_ok());
}
