//! Command-line behavior: defaults, exit codes, certification, bounds.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn tspn(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tspn")).args(args).current_dir(dir).output().expect("tspn runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn read_json(dir: &TempDir, name: &str) -> Value {
    serde_json::from_str(&std::fs::read_to_string(dir.path().join(name)).unwrap()).unwrap()
}

const TRIANGLE_LINES: &str = r#"{"version": 1, "kind": "lines", "regions": [
  {"a": -1, "b": 1, "c": 0},
  {"p1": {"x": 0, "y": 0}, "p2": {"x": 1, "y": 0}},
  {"a": 1, "b": 1, "c": 2}
]}"#;

const OUTWARD_RAYS: &str = r#"{"version": 1, "kind": "rays", "regions": [
  {"apex": {"x": 1, "y": 0}, "dir": {"x": 1, "y": 0}},
  {"apex": {"x": 0, "y": 1}, "angle_degrees": 90},
  {"apex": {"x": -1, "y": 0}, "dir": {"x": -1, "y": 0}},
  {"apex": {"x": 0, "y": -1}, "angle_degrees": 270}
]}"#;

const CONCURRENT_LINES: &str = r#"{"version": 1, "kind": "lines", "regions": [
  {"a": 1, "b": 0, "c": 0}, {"a": 0, "b": 1, "c": 0}, {"a": 1, "b": 1, "c": 0}
]}"#;

#[test]
fn tour_lines_defaults_and_outputs() {
    let dir = TempDir::new().unwrap();
    write(&dir, "in.json", TRIANGLE_LINES);
    let o = tspn(dir.path(), &["tour-lines", "--input", "in.json", "--out", "r.json", "--svg", "r.svg"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("m = 158"), "{}", stdout(&o));
    let r = read_json(&dir, "r.json");
    assert_eq!(r["m"], 158);
    assert_eq!(r["epsilon"], 0.005);
    assert_eq!(r["mode"], "tour");
    assert_eq!(r["kind"], "lines");
    assert_eq!(r["degenerate"], false);
    assert_eq!(r["rectangle"]["corners"].as_array().unwrap().len(), 4);
    assert!(r["timing"]["solve_seconds"].as_f64().unwrap() >= 0.0);
    assert!(r.get("path").is_none());
    let svg = std::fs::read_to_string(dir.path().join("r.svg")).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("id=\"rectangle\""));
}

#[test]
fn path_lines_default_direction_count() {
    let dir = TempDir::new().unwrap();
    write(&dir, "in.json", TRIANGLE_LINES);
    let o = tspn(dir.path(), &["path-lines", "--input", "in.json", "--out", "r.json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let r = read_json(&dir, "r.json");
    assert_eq!(r["m"], 393);
    assert_eq!(r["epsilon"], 0.004);
    assert_eq!(r["path"].as_array().unwrap().len(), 4);
}

#[test]
fn path_rays_default_epsilon() {
    let dir = TempDir::new().unwrap();
    write(&dir, "in.json", OUTWARD_RAYS);
    let o = tspn(dir.path(), &["path-rays", "--input", "in.json", "--out", "r.json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let r = read_json(&dir, "r.json");
    assert_eq!(r["epsilon"], 0.001);
    assert_eq!(r["m"], 786);
    // the closed rectangle boundary
    let path = r["path"].as_array().unwrap();
    assert_eq!(path.len(), 5);
    assert_eq!(path[0], path[4]);
    assert!(r["objective_value"].as_f64().unwrap() <= 8.0 + 1e-9);
}

#[test]
fn randomized_epsilon_is_seeded() {
    let dir = TempDir::new().unwrap();
    write(&dir, "in.json", OUTWARD_RAYS);
    let run = |out: &str, seed: &str| {
        let o = tspn(dir.path(), &["tour-rays", "--input", "in.json", "--out", out, "--randomize-eps", "--seed", seed]);
        assert!(o.status.success(), "{}", stderr(&o));
        read_json(&dir, out)["epsilon"].as_f64().unwrap()
    };
    let (a, b) = (run("a.json", "11"), run("b.json", "11"));
    assert_eq!(a, b);
    assert!((1.0 / 300.0..=1.0 / 200.0).contains(&a));

    let o = tspn(dir.path(), &["path-rays", "--input", "in.json", "--out", "c.json", "--randomize-eps"]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("tours only"));
}

#[test]
fn malformed_record_names_its_index() {
    let dir = TempDir::new().unwrap();
    write(
        &dir,
        "bad.json",
        r#"{"version": 1, "kind": "lines", "regions": [{"a": 1, "b": 0, "c": 0}, {"a": 0, "b": 0, "c": 1}]}"#,
    );
    let o = tspn(dir.path(), &["tour-lines", "--input", "bad.json", "--out", "r.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("region 1"), "{}", stderr(&o));
    assert!(!dir.path().join("r.json").exists());

    write(
        &dir,
        "junk.json",
        r#"{"version": 1, "kind": "rays", "regions": [{"apex": {"x": 0, "y": 0}, "dir": {"x": 1, "y": 0}}, {"foo": 2}]}"#,
    );
    let o = tspn(dir.path(), &["tour-rays", "--input", "junk.json", "--out", "r.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("region 1"), "{}", stderr(&o));
}

#[test]
fn wrong_kind_is_rejected() {
    let dir = TempDir::new().unwrap();
    write(&dir, "in.json", OUTWARD_RAYS);
    let o = tspn(dir.path(), &["tour-lines", "--input", "in.json", "--out", "r.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("expected a lines instance"), "{}", stderr(&o));
}

#[test]
fn degenerate_instance_exits_two_and_certifies_zero() {
    let dir = TempDir::new().unwrap();
    write(&dir, "in.json", CONCURRENT_LINES);
    let o = tspn(dir.path(), &["tour-lines", "--input", "in.json", "--out", "r.json"]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
    assert!(stdout(&o).contains("degenerate"));
    assert_eq!(read_json(&dir, "r.json")["degenerate"], true);

    let o = tspn(dir.path(), &["certify", "--input", "in.json", "--result", "r.json", "--sweep-k", "1000"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("degenerate: OPT = 0"), "{}", stdout(&o));
}

#[test]
fn certify_passes_and_records_the_certificate() {
    let dir = TempDir::new().unwrap();
    write(&dir, "in.json", TRIANGLE_LINES);
    for (cmd, out) in [("tour-lines", "t.json"), ("path-lines", "p.json")] {
        let o = tspn(dir.path(), &[cmd, "--input", "in.json", "--out", out]);
        assert!(o.status.success(), "{}", stderr(&o));
        let o = tspn(dir.path(), &["certify", "--input", "in.json", "--result", out, "--out", "cert.json"]);
        assert!(o.status.success(), "{cmd}: {}{}", stdout(&o), stderr(&o));
        assert!(stdout(&o).starts_with("PASS: ratio"), "{}", stdout(&o));
        let cert = &read_json(&dir, "cert.json")["certificate"];
        assert_eq!(cert["method"], "dense_sweep");
        assert_eq!(cert["passed"], true);
        assert!(cert["ratio"].as_f64().unwrap() <= cert["bound"].as_f64().unwrap());
    }
}

/// Scales the rectangle's frame extents about their center.
fn scale_rectangle(r: &mut Value, s: f64) {
    let rect = &mut r["rectangle"];
    for (lo, hi) in [("x1", "x2"), ("y1", "y2")] {
        let (a, b) = (rect[lo].as_f64().unwrap(), rect[hi].as_f64().unwrap());
        let (c, h) = ((a + b) / 2.0, (b - a) / 2.0 * s);
        rect[lo] = (c - h).into();
        rect[hi] = (c + h).into();
    }
}

#[test]
fn certify_rejects_tampered_results() {
    let dir = TempDir::new().unwrap();
    write(&dir, "in.json", TRIANGLE_LINES);
    let o = tspn(dir.path(), &["tour-lines", "--input", "in.json", "--out", "r.json"]);
    assert!(o.status.success());
    let original = read_json(&dir, "r.json");

    // shrunk: no longer meets every line
    let mut shrunk = original.clone();
    scale_rectangle(&mut shrunk, 0.1);
    write(&dir, "shrunk.json", &shrunk.to_string());
    let o = tspn(dir.path(), &["certify", "--input", "in.json", "--result", "shrunk.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("FAIL intersection"), "{}", stdout(&o));

    // grown: still meets every line but is far too long, whatever it claims
    let mut grown = original.clone();
    scale_rectangle(&mut grown, 3.0);
    write(&dir, "grown.json", &grown.to_string());
    let o = tspn(dir.path(), &["certify", "--input", "in.json", "--result", "grown.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("FAIL ratio"), "{}", stdout(&o));

    // certified against a different instance
    write(&dir, "other.json", CONCURRENT_LINES);
    let o = tspn(dir.path(), &["certify", "--input", "other.json", "--result", "r.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("different instance"), "{}", stderr(&o));
}

fn slacks(text: &str) -> Vec<f64> {
    text.lines()
        .filter_map(|l| l.split("slack ").nth(1))
        .map(|rest| rest.split_whitespace().next().unwrap().parse().unwrap())
        .collect()
}

#[test]
fn bounds_on_tight_curves() {
    let dir = TempDir::new().unwrap();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    write(
        &dir,
        "right.json",
        &format!(
            r#"{{"version": 1, "vertices": [{{"x": 0, "y": 0}}, {{"x": {s}, "y": {s}}}, {{"x": {}, "y": 0}}]}}"#,
            2.0 * s
        ),
    );
    let o = tspn(dir.path(), &["bounds", "--curve", "right.json", "--check", "three-sides"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let sl = slacks(&stdout(&o));
    assert_eq!(sl.len(), 1);
    assert!(sl[0].abs() < 1e-9, "{}", stdout(&o));

    let r5 = 5f64.sqrt();
    write(
        &dir,
        "wide.json",
        &format!(
            r#"{{"version": 1, "vertices": [{{"x": 0, "y": 0}}, {{"x": {}, "y": {}}}, {{"x": {}, "y": 0}}]}}"#,
            2.0 / r5,
            1.0 / r5,
            4.0 / r5
        ),
    );
    let o = tspn(dir.path(), &["bounds", "--curve", "wide.json", "--check", "perimeter"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(slacks(&stdout(&o))[0].abs() < 1e-9, "{}", stdout(&o));

    let o = tspn(dir.path(), &["bounds", "--curve", "wide.json"]);
    assert!(o.status.success());
    assert_eq!(slacks(&stdout(&o)).len(), 2);

    write(&dir, "point.json", r#"{"version": 1, "vertices": [{"x": 0, "y": 0}]}"#);
    let o = tspn(dir.path(), &["bounds", "--curve", "point.json"]);
    assert_eq!(o.status.code(), Some(1));
}
