use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_multbound"))
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, body).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(out: &Output) -> Value {
    let text = String::from_utf8_lossy(&out.stdout);
    let start = text.find('{').expect("json object on stdout");
    serde_json::from_str(&text[start..]).unwrap()
}

#[test]
fn check_three_quadrics_is_tight_and_passes() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "q.json",
        r#"{"n": 2, "generators": [[2,0],[1,1],[0,2]]}"#,
    );
    let out = run(&["check", path(&f)]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = json(&out);
    assert_eq!(v["invariants"]["e"], 3);
    assert_eq!(v["invariants"]["codim"], 2);
    assert_eq!(v["verdicts"]["c2"], "pass");
    assert_eq!(v["verdicts"]["weak"], "pass");
}

#[test]
fn betti_grid_flag_prints_golden_diagram() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "q.json",
        r#"{"n": 2, "generators": [[2,0],[1,1],[0,2]]}"#,
    );
    let out = run(&["check", path(&f), "--betti-grid", "--checks", "c2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        text.starts_with("       0 1 2\ntotal: 1 3 2\n    0: 1 . .\n    1: . 3 2\n"),
        "{text}"
    );
}

#[test]
fn check_with_bound_runs_formula_checks() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "s.json",
        r#"{"n": 3, "generators": [[1,1,0],[1,0,1],[0,1,1]]}"#,
    );
    let out = run(&[
        "check",
        path(&f),
        "--checks",
        "astable,cwl",
        "--bound",
        "2,2,2",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = json(&out);
    assert_eq!(v["verdicts"]["astable"], "pass");
    assert_eq!(v["verdicts"]["cwl"], "pass");
}

#[test]
fn malformed_inputs_exit_two() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", r#"{"n": 2, "generators": [[1,0,0]]}"#);
    assert_eq!(run(&["check", path(&bad)]).status.code(), Some(2));
    let missing = dir.path().join("nope.json");
    assert_eq!(run(&["check", path(&missing)]).status.code(), Some(2));
    let ok = write(&dir, "q.json", r#"{"n": 1, "generators": [[1]]}"#);
    assert_eq!(
        run(&["check", path(&ok), "--checks", "bogus"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn dual_reports_identities() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "cx.json", r#"{"n": 3, "facets": [[1,3],[2,3]]}"#);
    let out = run(&["dual", path(&f)]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = json(&out);
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["e"], 2);
}

#[test]
fn reduce_applicable_and_inapplicable() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "b.json",
        r#"{"n": 3, "generators": [[2,0,0],[1,1,0],[1,0,1],[0,3,0]]}"#,
    );
    let out = run(&["reduce", path(&f)]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = json(&out);
    assert_eq!(v["status"], "applicable");
    assert_eq!(v["e"], 3);

    let g = write(
        &dir,
        "t.json",
        r#"{"n": 3, "generators": [[1,0,1],[0,1,1],[1,1,0]]}"#,
    );
    let out = run(&["reduce", path(&g)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["status"], "inapplicable");
}

#[test]
fn campaign_writes_deterministic_csv() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let args = |out: &Path, threads: &str| {
        run(&[
            "campaign",
            "--family",
            "stable",
            "--n",
            "3",
            "--max-deg",
            "3",
            "--count",
            "20",
            "--seed",
            "7",
            "--threads",
            threads,
            "--out",
            path(out),
        ])
    };
    assert_eq!(args(&a, "1").status.code(), Some(0));
    assert_eq!(args(&b, "3").status.code(), Some(0));
    let (ta, tb) = (fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let text = String::from_utf8(ta).unwrap();
    assert_eq!(text.lines().count(), 21);
    assert!(text
        .lines()
        .next()
        .unwrap()
        .starts_with("instance_seed,n,num_gens"));
}

#[test]
fn campaign_rejects_bad_config() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("x.csv");
    let o = run(&[
        "campaign",
        "--family",
        "stable",
        "--n",
        "3",
        "--max-deg",
        "3",
        "--count",
        "0",
        "--out",
        path(&out),
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&[
        "campaign",
        "--family",
        "nonsense",
        "--n",
        "3",
        "--max-deg",
        "3",
        "--count",
        "1",
        "--out",
        path(&out),
    ]);
    assert_eq!(o.status.code(), Some(2));
}
