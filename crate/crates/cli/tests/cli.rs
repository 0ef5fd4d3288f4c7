use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const CIRCLE: &str = r#"{"q":{"dim":2,"matrix":[["1","0"],["0","1"]]},
    "places":[{"v":"inf","alpha":["3/5","4/5"]}],"T":"10"}"#;

const ADELIC: &str = r#"{"q":{"dim":3,"matrix":[["1","0","0"],["0","1","0"],["0","0","1"]]},
    "places":[{"v":"inf","alpha":["3/5","4/5","0"],"t":"2"},
              {"v":5,"alpha":["3/5","4/5","0"],"t":"1/25"}]}"#;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_quadric-approx"))
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn approximate_then_verify() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "i.json", CIRCLE);
    let cert = dir.path().join("c.json");
    let out = run(&["approximate", s(&inst), "-o", s(&cert)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = run(&["verify", s(&inst), s(&cert)]);
    assert_eq!(v.status.code(), Some(0));
    assert_eq!(json(&v)["accepted"], true);
}

#[test]
fn budget_below_threshold_exits_2() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "i.json", &CIRCLE.replace(r#""T":"10""#, r#""T":"1""#));
    let out = run(&["approximate", s(&inst)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("below threshold"));
}

#[test]
fn anisotropic_exits_1_and_bad_input_exits_3() {
    let dir = TempDir::new().unwrap();
    // 3x² − y² is anisotropic over ℚ although q(1/√3) = 1
    let neg = r#"{"q":{"dim":1,"matrix":[["3"]]},
        "places":[{"v":"inf","alpha":[{"a":"0","b":"1/3","d":3}],"t":"2"}]}"#;
    let out = run(&["approximate", s(&write(&dir, "n.json", neg))]);
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stderr));
    let out = run(&["approximate", s(&write(&dir, "bad.json", "{\"q\": 3}"))]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["approximate", s(&dir.path().join("missing.json"))]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn tampered_certificate_is_rejected() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "i.json", CIRCLE);
    let out = run(&["approximate", s(&inst)]);
    let mut cert = json(&out);
    cert["phi"] = serde_json::Value::String("0".into());
    let cert = write(&dir, "c.json", &cert.to_string());
    let v = run(&["verify", s(&inst), s(&cert)]);
    assert_eq!(v.status.code(), Some(5));
    let failures = json(&v)["failures"].to_string();
    assert!(failures.contains("phi_nonzero"), "{failures}");
}

#[test]
fn witt_of_anisotropic_binary_form() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.json", r#"{"q":{"dim":2,"matrix":[["1","0"],["0","-2"]]}}"#);
    let out = run(&["witt", s(&f)]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["index"], 0);
    assert_eq!(r["hyperbolic_pairs"].as_array().unwrap().len(), 0);
}

#[test]
fn heights_and_points() {
    let dir = TempDir::new().unwrap();
    let out = run(&["heights", s(&write(&dir, "h.json", r#"{"q":{"dim":2,"matrix":[["1","0"],["0","2"]]}}"#))]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["H(E)"]["exact"], "sqrt(2)");
    let p = write(&dir, "p.json", r#"{"q":{"dim":3,"matrix":[["1","0","0"],["0","1","0"],["0","0","1"]]},"x0":["1","0","0"]}"#);
    let out = run(&["gen-points", s(&p), "--count", "7", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out).as_array().unwrap().len(), 7);
}

#[test]
fn output_is_identical_across_thread_counts() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "a.json", ADELIC);
    let one = run(&["approximate", s(&inst), "--threads", "1"]);
    let many = run(&["approximate", s(&inst), "--threads", "4"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, many.stdout);
    let b1 = run(&["bench", "--points", "1", "--threads", "1"]);
    let b4 = run(&["bench", "--points", "1", "--threads", "4"]);
    assert_eq!(b1.status.code(), Some(0));
    assert_eq!(b1.stdout, b4.stdout);
}

#[test]
fn bench_writes_csv() {
    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("rows.csv");
    let out = run(&["bench", "--points", "1", "--csv", s(&csv)]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "instance,threshold,budget,phi,bound,observed,ratio,accepted");
    assert_eq!(lines.count(), 15);
}

#[test]
fn help_documents_every_flag() {
    let top = String::from_utf8(run(&["--help"]).stdout).unwrap();
    for word in ["approximate", "witt", "heights", "gen-points", "verify", "bench", "Exit status"] {
        assert!(top.contains(word), "{word} missing from --help");
    }
    let sub = String::from_utf8(run(&["approximate", "--help"]).stdout).unwrap();
    for flag in ["--best", "--max-bits", "--threads", "--output"] {
        assert!(sub.contains(flag), "{flag} missing");
    }
    let gen = String::from_utf8(run(&["gen-points", "--help"]).stdout).unwrap();
    assert!(gen.contains("--seed") && gen.contains("--count"));
}
