use std::path::PathBuf;
use std::process::Command;

use clap::Parser;
use stackable_cli::{run, Cli};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
        .display()
        .to_string()
}

/// Runs in-process; returns (exit code, stdout, stderr).
fn call(args: &[&str]) -> (i32, String, String) {
    let cli = Cli::try_parse_from(std::iter::once("stackable").chain(args.iter().copied())).unwrap();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(&cli, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn nf_examples() {
    let (code, out, _) = call(&["nf", "--structure", "bs1p:2", "--word", "t a T"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("a a"));
    let z2 = format!("crs:{}", data("z2.rs"));
    let (code, out, _) = call(&["nf", "--structure", &z2, "--word", "b a"]);
    assert_eq!((code, out.lines().next()), (0, Some("a b")));
    let (code, out, _) = call(&["nf", "--structure", "bs1p:2", "--word", ""]);
    assert_eq!((code, out.lines().next()), (0, Some("")));
}

#[test]
fn wp_examples() {
    assert_eq!(call(&["wp", "--structure", "bs1p:2", "--word", "a A"]).0, 0);
    assert_eq!(call(&["wp", "--structure", "bs1p:2", "--word", "t a T A A"]).0, 0);
    assert_eq!(call(&["wp", "--structure", "bs1p:2", "--word", "a"]).0, 1);
}

#[test]
fn exit_codes() {
    assert_eq!(call(&["nf", "--structure", "bs1p:2", "--word", "x"]).0, 2);
    assert_eq!(call(&["nf", "--structure", "nope:2", "--word", "a"]).0, 2);
    assert_eq!(call(&["nf", "--word", "a"]).0, 2);
    assert_eq!(call(&["nf", "--structure", "thompson-f", "--word", "x0"]).0, 2);
    let long = "t t t t t t t t a T T T T T T T T";
    assert_eq!(call(&["nf", "--structure", "bs1p:2", "--word", long, "--budget", "5"]).0, 3);
    assert_eq!(call(&["export-ball", "--structure", "bs1p:2", "--radius", "6", "--cap", "10"]).0, 3);
}

#[test]
fn vkd_writes_diagrams() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("d.json");
    let report = dir.path().join("r.json");
    let (code, stdout, _) = call(&[
        "vkd",
        "--structure",
        "bs1p:2",
        "--word",
        "t a T A A",
        "--out",
        out.to_str().unwrap(),
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("area 1"));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["faces"].as_array().unwrap().len(), 1);
    let r: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r["euler"]["failed"], 0);

    let (code, stdout, _) = call(&["vkd", "--structure", "bs1p:2", "--word", "a A"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["faces"].as_array().unwrap().len(), 0);

    assert_eq!(call(&["vkd", "--structure", "bs1p:2", "--word", "a"]).0, 2);
    assert_eq!(call(&["vkd", "--structure", "bs1p:2", "--word", "a A", "--format", "png"]).0, 2);

    let (code, dot, _) = call(&["vkd", "--structure", "bs1p:2", "--word", "t a T A A", "--format", "dot"]);
    assert_eq!(code, 0);
    assert!(dot.starts_with("graph"));
    let (code, svg, _) = call(&["vkd", "--structure", "bs1p:2", "--word", "t a T A A", "--format", "svg"]);
    assert_eq!(code, 0);
    assert!(svg.starts_with("<svg"));
}

#[test]
fn verify_examples() {
    let (code, out, _) = call(&["verify", "--structure", "bs1p:2", "--radius", "3"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("F1: pass"));
    let z2 = format!("crs:{}", data("z2.rs"));
    assert_eq!(call(&["verify", "--structure", &z2, "--radius", "4"]).0, 0);

    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let bad = format!("crs:{}", data("z2_corrupt.rs"));
    let (code, out, _) = call(&["verify", "--structure", &bad, "--radius", "3", "--report", report.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL"));
    assert!(out.contains("critical pair"));
    let r: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r["passed"], false);
}

#[test]
fn verify_shortlex_structure() {
    let spec = format!("shortlex-ac:{}:4:2", data("z2.rs"));
    let (code, out, _) = call(&["verify", "--structure", &spec, "--radius", "4"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("geodesic normal forms: pass"));
    assert_eq!(call(&["verify", "--structure", &spec, "--radius", "5"]).0, 2);
}

#[test]
fn ac_check_examples() {
    let z2 = format!("crs:{}", data("z2.rs"));
    assert_eq!(call(&["ac-check", "--structure", &z2, "--radius", "6", "--k", "2"]).0, 0);
    let (code, out, _) = call(&["ac-check", "--structure", &z2, "--radius", "6", "--k", "1"]);
    assert_eq!(code, 1);
    assert!(out.contains("witness"));
    assert_eq!(call(&["ac-check", "--structure", &z2, "--radius", "0", "--k", "0"]).0, 0);
}

#[test]
fn thompson_examples() {
    assert_eq!(call(&["thompson-nf", "--word", "X0 x1"]).0, 0);
    assert_eq!(call(&["thompson-nf", "--word", "x0"]).0, 1);
    assert_eq!(call(&["thompson-nf", "--word", "x1 X1"]).0, 1);
    assert_eq!(call(&["thompson-nf", "--word", "a"]).0, 2);
}

#[test]
fn export_ball_json() {
    let (code, out, _) = call(&["export-ball", "--structure", "bs1p:2", "--radius", "1"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["elements"].as_array().unwrap().len(), 5);
}

#[test]
fn outputs_are_deterministic() {
    let args = ["vkd", "--structure", "bs1p:2", "--word", "t t a T T A A A A"];
    assert_eq!(call(&args).1, call(&args).1);
}

#[test]
fn binary_reports_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_stackable");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let o = status(&["wp", "--structure", "bs1p:2", "--word", "t a T A A"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), "trivial");
    assert_eq!(status(&["wp", "--structure", "bs1p:2", "--word", "a"]).status.code(), Some(1));
    let o = status(&["vkd", "--structure", "bs1p:2", "--word", "t"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("identity"));
}
