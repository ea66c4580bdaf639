use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_fulleroct"));
    c.env_remove("FULLEROCT_JOBS");
    c
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn keys(v: &Value) -> Vec<String> {
    v.as_object().unwrap().keys().cloned().collect()
}

#[test]
fn analyze_named_fixtures() {
    let out = run(&["analyze", "-i", fixture("named.pc").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let reports = lines(&out);
    assert_eq!(reports.len(), 3);
    let ns: Vec<_> = reports.iter().map(|r| r["n"].as_u64().unwrap()).collect();
    assert_eq!(ns, [20, 40, 60]);
    assert_eq!(reports[2]["tau_verdict"], "equality");
    assert_eq!(reports[2]["tau_odd"], 12);
    for r in &reports {
        assert_eq!(keys(r), keys(&reports[0]));
        assert_ne!(r["tau_verdict"], "violated");
    }
}

#[test]
fn adjlist_and_planar_code_agree() {
    let a = run(&["analyze", "-i", fixture("isomers.pc").to_str().unwrap()]);
    let b = run(&["analyze", "--format", "adjlist", "-i", fixture("isomers.adj").to_str().unwrap()]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn output_is_deterministic_across_job_counts() {
    let input = fixture("isomers.pc");
    let one = run(&["--jobs", "1", "analyze", "--spectra", "-i", input.to_str().unwrap()]);
    let four = run(&["--jobs", "4", "analyze", "--spectra", "-i", input.to_str().unwrap()]);
    let env = bin()
        .env("FULLEROCT_JOBS", "2")
        .args(["analyze", "--spectra", "-i", input.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(one.stdout, env.stdout);
    let reports = lines(&one);
    assert_eq!(reports.len(), 6);
    assert!(reports.iter().all(|r| r["lambda_min"].is_f64() && r["timings"].is_null()));
}

#[test]
fn goldberg_then_analyze() {
    let dir = tempfile::tempdir().unwrap();
    let pc = dir.path().join("gp2.pc");
    let out = run(&["goldberg", "--k", "2", "-o", pc.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(fs::read(&pc).unwrap().starts_with(b">>planar_code<<"));
    let out = run(&["analyze", "--greedy-certificate", "-i", pc.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = &lines(&out)[0];
    assert_eq!(r["n"], 240);
    assert_eq!(r["tau_odd"], 24);
    assert_eq!(r["tau_verdict"], "equality");
    assert_eq!(r["greedy_certificate_value"], "24");
}

#[test]
fn goldberg_k1_has_sixty_vertices() {
    let out = run(&["goldberg", "--k", "1"]);
    assert_eq!(out.status.code(), Some(0));
    // header, then the vertex count byte
    assert_eq!(out.stdout[15], 60);
    assert_eq!(run(&["goldberg", "--k", "0"]).status.code(), Some(2));
}

#[test]
fn corrupt_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.pc");
    let mut bytes = fs::read(fixture("named.pc")).unwrap();
    bytes.truncate(bytes.len() - 7);
    fs::write(&bad, bytes).unwrap();
    let out = run(&["analyze", "-i", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse error"));
}

#[test]
fn non_fullerene_gets_a_null_line_and_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mixed.adj");
    let c20 = fs::read_to_string(fixture("named.adj")).unwrap();
    let first = c20.split("\n\n").next().unwrap().trim_end();
    let k4 = "2 3 4\n1 4 3\n1 2 4\n1 3 2\n";
    fs::write(&path, format!("{first}\n\n{k4}")).unwrap();
    let out = run(&["analyze", "-i", path.to_str().unwrap()]);
    let reports = lines(&out);
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(reports.len(), 2);
    assert_eq!(keys(&reports[0]), keys(&reports[1]));
    assert!(reports[1]["n"].is_null());
    assert!(reports[1]["error"].is_string());
}

#[test]
fn certificate_roundtrip_on_the_dodecahedron() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("c20.json");
    let input = fixture("named.pc");
    let out = run(&["certificate", "-i", input.to_str().unwrap(), "--emit-greedy", "-o", cert.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let parsed: Value = serde_json::from_str(&fs::read_to_string(&cert).unwrap()).unwrap();
    assert_eq!(parsed["moats"].as_array().unwrap().len(), 12);
    assert!(parsed["moats"].as_array().unwrap().iter().all(|m| m["width"] == 1));

    let out = run(&["certificate", "-i", input.to_str().unwrap(), "--cert", cert.to_str().unwrap()]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.contains("value: 6/1"), "{text}");
    assert!(text.contains("≤ tau: yes"), "{text}");

    let out = run(&["analyze", "--certificate", cert.to_str().unwrap(), "-i", input.to_str().unwrap()]);
    let reports = lines(&out);
    assert_eq!(reports[0]["certificate_value"], "6");
    assert_eq!(reports[0]["certificate_vs_tau"], "equality");
    assert!(reports[1]["certificate_value"].is_null());
}

#[test]
fn overlapping_certificate_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("c20.json");
    let input = fixture("named.pc");
    run(&["certificate", "-i", input.to_str().unwrap(), "--emit-greedy", "-o", cert.to_str().unwrap()]);
    let mut parsed: Value = serde_json::from_str(&fs::read_to_string(&cert).unwrap()).unwrap();
    parsed["moats"][0]["width"] = Value::from(2);
    fs::write(&cert, parsed.to_string()).unwrap();
    let out = run(&["certificate", "-i", input.to_str().unwrap(), "--cert", cert.to_str().unwrap()]);
    assert_ne!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("rejected") && text.contains("share edge"), "{text}");
}

#[test]
fn spectra_command() {
    let out = run(&["spectra", "-i", fixture("named.adj").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let reports = lines(&out);
    let phi2 = (3.0 + 5f64.sqrt()) / 2.0;
    assert!((reports[2]["lambda_min"].as_f64().unwrap() + phi2).abs() < 1e-9);
    assert!(reports.iter().all(|r| r["lambda_min_verdict"] != "violated" && r["maxcut_holds"] == true));
}
