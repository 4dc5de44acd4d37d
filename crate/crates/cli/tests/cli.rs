use std::path::PathBuf;
use std::process::Command;

use onepoint_cli::{run, Format, RunConfig, EXIT_CAP, EXIT_CHECK_FAILED, EXIT_PASS, EXIT_USAGE};
use serde_json::Value;
use tempfile::TempDir;

const ZPW3: &str = "dim = 3\nvertices = [[0, 0, 0], [2, 0, 0], [0, 3, 0], [0, 0, 7]]\n";
const TRIANGLE: &str = "dim = 2\nvertices = [[0, 0], [7, 0], [0, 2]]\n";

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn config(check: &str, inputs: Vec<PathBuf>) -> RunConfig {
    let mut c = RunConfig::new(check);
    c.inputs = inputs;
    c
}

fn structured(mut c: RunConfig) -> (u8, Value) {
    c.format = Format::Structured;
    let out = run(&c);
    (out.code, serde_json::from_str(&out.stdout).expect("valid json"))
}

/// Every leaf is a string or a boolean; numbers never appear as JSON numbers.
fn assert_no_numbers(v: &Value) {
    match v {
        Value::Number(n) => panic!("numeric JSON value {n}"),
        Value::Array(a) => a.iter().for_each(assert_no_numbers),
        Value::Object(o) => o.values().for_each(assert_no_numbers),
        Value::String(_) | Value::Bool(_) | Value::Null => {}
    }
}

fn entry<'a>(report: &'a Value, label: &str) -> &'a Value {
    report["entries"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["label"] == label)
        .unwrap_or_else(|| panic!("no entry {label}"))
}

#[test]
fn verify_sylvester_simplex() {
    let dir = TempDir::new().unwrap();
    let (code, v) = structured(config("verify", vec![write(&dir, "z.toml", ZPW3)]));
    assert_eq!(code, EXIT_PASS);
    assert_eq!(entry(&v[0], "interior points")["value"], "1");
    assert_eq!(entry(&v[0], "interior point")["value"], "(1,1,1)");
    assert_eq!(entry(&v[0], "barycentric")["value"], "(1/42,1/2,1/3,1/7)");
}

#[test]
fn certificate_for_the_two_point_triangle() {
    let dir = TempDir::new().unwrap();
    let mut c = config("cert", vec![write(&dir, "t.toml", TRIANGLE)]);
    c.point = Some("1,1".into());
    let (code, v) = structured(c);
    assert_eq!(code, EXIT_PASS);
    let cert = &v[0]["certificate"];
    assert_eq!(cert["q"], "(3,1)");
    assert_eq!(cert["r"], "(0,1)");
    assert_eq!(cert["det_b"], "4/5");
    assert_eq!(cert["i"], "{1}");
    assert_eq!(cert["q_interior"], true);
}

#[test]
fn certificate_absent_for_one_point_simplex() {
    let dir = TempDir::new().unwrap();
    let (code, v) = structured(config("cert", vec![write(&dir, "z.toml", ZPW3)]));
    assert_eq!(code, EXIT_PASS);
    assert!(v[0].get("certificate").is_none());
}

#[test]
fn violated_partition_exits_one_and_is_named() {
    let dir = TempDir::new().unwrap();
    let out = run(&config("ineq", vec![write(&dir, "t.toml", TRIANGLE)]));
    assert_eq!(out.code, EXIT_CHECK_FAILED);
    assert!(out.stderr.contains("partition I={1} J={0,2}"), "{}", out.stderr);
    assert!(out.stdout.contains("slack -1/28"), "{}", out.stdout);
}

#[test]
fn structured_output_round_trips_without_numbers() {
    let dir = TempDir::new().unwrap();
    let z = write(&dir, "z.toml", ZPW3);
    let t = write(&dir, "t.toml", TRIANGLE);
    let mut cases = vec![
        config("verify", vec![z.clone()]),
        config("bounds", vec![z.clone()]),
        config("chain", vec![z.clone()]),
        config("ineq", vec![t.clone()]),
    ];
    let mut gen = config("gen", vec![]);
    gen.dim = Some(3);
    cases.push(gen);
    let mut cert = config("cert", vec![t]);
    cert.point = Some("1,1".into());
    cases.push(cert);
    let mut atlas = config("atlas2d", vec![]);
    atlas.radius = 9;
    cases.push(atlas);
    for mut c in cases {
        c.format = Format::Structured;
        let out = run(&c);
        let v: Value = serde_json::from_str(&out.stdout).expect("valid json");
        assert_no_numbers(&v);
        let mut again = serde_json::to_string_pretty(&v).unwrap();
        again.push('\n');
        assert_eq!(again, out.stdout, "{}", c.check);
    }
}

#[test]
fn output_is_deterministic() {
    let mut c = config("report", vec![]);
    c.dim = Some(2);
    c.radius = 9;
    c.format = Format::Structured;
    let first = run(&c);
    assert_eq!(first.code, EXIT_PASS, "{}", first.stderr);
    assert_eq!(run(&c), first);
}

#[test]
fn cap_refusal_exits_three() {
    let dir = TempDir::new().unwrap();
    let mut c = config("verify", vec![write(&dir, "z.toml", ZPW3)]);
    c.cap = 10;
    let out = run(&c);
    assert_eq!(out.code, EXIT_CAP);
    assert!(out.stderr.contains("cap"), "{}", out.stderr);
    let mut gen = config("gen", vec![]);
    gen.dim = Some(3);
    gen.cap = 10;
    assert_eq!(run(&gen).code, EXIT_CAP);
}

#[test]
fn parse_error_names_line_and_field() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.toml", "dim = 2\nvertices = [\n  [0, 0],\n  [7, 0.5],\n  [0, 2],\n]\n");
    let out = run(&config("verify", vec![bad]));
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("line 4"), "{}", out.stderr);
    assert!(out.stderr.contains("vertices[1][1]"), "{}", out.stderr);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&config("nope", vec![])).code, EXIT_USAGE);
    assert_eq!(run(&config("verify", vec![])).code, EXIT_USAGE);
    assert_eq!(run(&config("gen", vec![])).code, EXIT_USAGE);
    assert_eq!(run(&config("verify", vec!["/nonexistent/x.toml".into()])).code, EXIT_USAGE);
}

#[test]
fn gen_writes_loadable_files() {
    let dir = TempDir::new().unwrap();
    let mut c = config("gen", vec![]);
    c.dim = Some(3);
    c.out = Some(dir.path().to_path_buf());
    assert_eq!(run(&c).code, EXIT_PASS);
    for name in ["zpw-3", "dilated-3", "reflected-3"] {
        let out = run(&config("verify", vec![dir.path().join(format!("{name}.toml"))]));
        assert_eq!(out.code, EXIT_PASS, "{name}: {}", out.stderr);
    }
    let zpw = std::fs::read_to_string(dir.path().join("zpw-3.toml")).unwrap();
    assert_eq!(zpw, ZPW3);
}

#[test]
fn binary_exit_codes() {
    let dir = TempDir::new().unwrap();
    let t = write(&dir, "t.toml", TRIANGLE);
    let bin = env!("CARGO_BIN_EXE_onepoint");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let out = status(&["cert", t.to_str().unwrap(), "--point", "1,1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("q = (3,1)"));
    assert_eq!(status(&["ineq", t.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(status(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(status(&["verify", t.to_str().unwrap(), "--cap", "3"]).status.code(), Some(3));
}
