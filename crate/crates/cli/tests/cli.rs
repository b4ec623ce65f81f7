use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn hurwitz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hurwitz")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn report_astroid() {
    let out = hurwitz(&["report", "--spec", "astroid:1,0.2"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let s = &v["spectral"];
    assert!((s["L"].as_f64().unwrap() - std::f64::consts::TAU).abs() < 1e-6);
    assert!((s["Delta"].as_f64().unwrap() - 2.3687052).abs() < 1e-6);
    assert!(v.get("quadrature").is_none());
}

#[test]
fn report_circle_both_paths() {
    let out = hurwitz(&["report", "--spec", "circle:1", "--path", "both"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    for path in ["spectral", "quadrature"] {
        assert!((v[path]["F"].as_f64().unwrap() - std::f64::consts::PI).abs() < 1e-7);
        assert!(v[path]["Fe"].as_f64().unwrap().abs() < 1e-12);
    }
}

#[test]
fn report_rejects_nonconvex_file() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", r#"{"a0": 1.0, "harmonics": [{"n": 2, "a": 0.5, "b": 0.0}]}"#);
    let out = hurwitz(&["report", "--body", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("NotStrictlyConvex"), "{}", stderr(&out));
}

#[test]
fn exactly_one_source() {
    assert_eq!(hurwitz(&["report"]).status.code(), Some(2));
    let both = hurwitz(&["report", "--spec", "circle:1", "--body", "x.json"]);
    assert_eq!(both.status.code(), Some(2));
}

#[test]
fn verify_deltoid_marks_bvb_equality() {
    let out = hurwitz(&["verify", "--spec", "deltoid:1,0.1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let bvb = text.lines().find(|l| l.starts_with("bvb ")).unwrap();
    assert!(bvb.contains(" yes "), "{bvb}");
    assert!(text.contains("class: steiner_parallel"));
}

#[test]
fn verify_cw35_file_both_paths() {
    let dir = tempfile::tempdir().unwrap();
    let body = write(
        dir.path(),
        "cw35.json",
        r#"{"a0": 1.0, "harmonics": [{"n": 3, "a": 0.05, "b": 0.0}, {"n": 5, "a": 0.0, "b": 0.01}]}"#,
    );
    let json = dir.path().join("report.json");
    let out = hurwitz(&["verify", "--body", &body, "--path", "both", "--out", json.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(json).unwrap()).unwrap();
    let teo64: Vec<&Value> = v["verdicts"].as_array().unwrap().iter().filter(|x| x["id"] == "teo64").collect();
    assert_eq!(teo64.len(), 2);
    assert!(teo64.iter().all(|x| x["equality"] == true));
    assert_eq!(v["pass"], true);
}

#[test]
fn verify_rejects_amplitude_beyond_bound() {
    let out = hurwitz(&["verify", "--spec", "astroid:1,0.4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("AmplitudeTooLarge"));
}

#[test]
fn render_hypocycloid_and_layers() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("h.svg");
    let out = hurwitz(&["render", "--spec", "hypocycloid:5/2,1", "--kind", "curve", "--out", svg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.contains("<svg") && text.contains("<polygon"));

    let out = hurwitz(&["render", "--spec", "astroid:1,0.2", "--kind", "boundary,evolute,pedal,parallel"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for layer in ["boundary", "evolute", "pedal", "parallel"] {
        assert!(text.contains(&format!("<g id=\"{layer}\">")), "{layer}");
    }

    let out = hurwitz(&["render", "--spec", "circle:1", "--kind", "evolute"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("<circle"));
}

#[test]
fn render_rejects_bad_kind() {
    let out = hurwitz(&["render", "--spec", "circle:1", "--kind", "spiral"]);
    assert_eq!(out.status.code(), Some(2));
    let out = hurwitz(&["render", "--spec", "circle:1", "--kind", "curve"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn render_is_deterministic() {
    let args = ["render", "--spec", "deltoid:1,0.1", "--kind", "boundary,wigner,parallel"];
    assert_eq!(hurwitz(&args).stdout, hurwitz(&args).stdout);
}

#[test]
fn sweep_spectral() {
    let out = hurwitz(&["sweep", "--count", "200", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["theorems"]["hurwitz/spectral"]["min_residual"].as_f64().unwrap() >= 0.0);
    assert_eq!(v["constant_width"], 100);
}

#[test]
fn sweep_both_paths_agree() {
    let out = hurwitz(&["sweep", "--count", "50", "--seed", "2", "--path", "both"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["geometric_bodies"].as_u64().unwrap() > 0);
    assert!(v["disagreements"].as_array().unwrap().is_empty());
    assert!(v["max_agreement_ratio"].as_f64().unwrap() <= 1.0);
}

#[test]
fn sweep_output_independent_of_workers() {
    let args = ["sweep", "--count", "40", "--seed", "5", "--path", "both", "--geometric-every", "8"];
    let one = Command::new(env!("CARGO_BIN_EXE_hurwitz")).args(args).env("HURWITZ_WORKERS", "1").output().unwrap();
    let four = Command::new(env!("CARGO_BIN_EXE_hurwitz")).args(args).env("HURWITZ_WORKERS", "4").output().unwrap();
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn sweep_rejects_zero_count_and_bad_workers() {
    assert_eq!(hurwitz(&["sweep", "--count", "0"]).status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_hurwitz"))
        .args(["sweep", "--count", "2"])
        .env("HURWITZ_WORKERS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
