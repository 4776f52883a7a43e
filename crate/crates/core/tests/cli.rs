#![allow(clippy::excessive_precision)]

use std::io::Write;
use std::process::{Command, Output};

use semiarith::family::FamilyRecord;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semiarith"))
        .args(args)
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn temp_file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

const GAMMA1: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data/gamma1_traces.json");

#[test]
fn family_csv_has_three_increasing_rows() {
    let out = run(&["family", "--n-max", "3", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,epsilon,trA,trB,tau,omega,stretch_lb,coarea,adim,witness");
    assert_eq!(lines.len(), 4);
    let stretch: Vec<f64> = lines[1..]
        .iter()
        .map(|l| l.split(',').nth(6).unwrap().parse().unwrap())
        .collect();
    assert!(stretch.windows(2).all(|w| w[1] > w[0]));
    assert!(lines[1].starts_with("1,2 + 1 * sqrt(3),"));
    assert!(lines[1].ends_with(",2,true"));
}

#[test]
fn family_json_records_round_trip() {
    let v = json(&run(&["family", "--n-max", "2", "--format", "json"]));
    assert_eq!(v["command"], "family");
    let records = v["results"]["records"].as_array().unwrap();
    let first: FamilyRecord = serde_json::from_value(records[0].clone()).unwrap();
    assert_eq!(first, semiarith::family::build_gamma(1).unwrap());
    let coeffs: Vec<i64> = records[0]["tau_min_poly"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_i64().unwrap())
        .collect();
    assert_eq!(coeffs, [1, -60, 134, -60, 1]);
}

#[test]
fn family_rejects_out_of_range() {
    assert_eq!(run(&["family", "--n-max", "0"]).status.code(), Some(2));
    assert_eq!(run(&["family", "--n-max", "31"]).status.code(), Some(2));
    assert_eq!(run(&["family", "--format", "xml"]).status.code(), Some(2));
}

#[test]
fn invariants_of_the_first_family_member() {
    let v = json(&run(&["invariants", GAMMA1]));
    let r = &v["results"];
    assert_eq!(r["trace_field"]["field"], "Q(sqrt 3)");
    assert_eq!(r["arithmetic_dimension"], 2);
    assert_eq!(r["global_splitting"], "split");
    assert_eq!(r["semi_arithmetic"]["verdict"]["status"], "pass");
}

#[test]
fn invariants_ramified_at_one_place() {
    let f = temp_file(
        r#"{"field": 2, "trA": "-3 - 1 * sqrt(2)", "trB": "1 + 1 * sqrt(2)",
            "trAB": "1 + 1 * sqrt(2)", "trComm": "28 + 19 * sqrt(2)"}"#,
    );
    let out = run(&["invariants", f.path().to_str().unwrap()]);
    if !out.status.success() {
        panic!("{}", String::from_utf8_lossy(&out.stderr));
    }
    let v = json(&out);
    assert_eq!(v["results"]["arithmetic_dimension"], 1);
    assert_eq!(v["results"]["global_splitting"], "unknown");
}

#[test]
fn invariants_error_codes() {
    let bad = temp_file("{ not json");
    assert_eq!(
        run(&["invariants", bad.path().to_str().unwrap()]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["invariants", "/nonexistent/file.json"]).status.code(), Some(2));
    // tr A = 2: parabolic generator
    let degenerate = temp_file(r#"{"field": 3, "trA": "2", "trB": "3", "trAB": "3", "trComm": "2"}"#);
    let out = run(&["invariants", degenerate.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
    // Fricke identity violated
    let wrong = temp_file(r#"{"field": 3, "trA": "3", "trB": "3", "trAB": "3", "trComm": "5"}"#);
    assert_eq!(
        run(&["invariants", wrong.path().to_str().unwrap()]).status.code(),
        Some(2)
    );
}

#[test]
fn karcher_single_and_pair() {
    let one = temp_file("0.25 2.0\n");
    let v = json(&run(&["karcher", one.path().to_str().unwrap()]));
    assert_eq!(v["results"]["mean"]["x"].as_f64(), Some(0.25));
    assert_eq!(v["results"]["mean"]["y"].as_f64(), Some(2.0));
    let two = temp_file("0 1\n0 4\n");
    let v = json(&run(&["karcher", two.path().to_str().unwrap(), "--tol", "1e-13"]));
    let (x, y) = (
        v["results"]["mean"]["x"].as_f64().unwrap(),
        v["results"]["mean"]["y"].as_f64().unwrap(),
    );
    assert!(x.abs() < 1e-12 && (y - 2.0).abs() < 1e-12);
}

#[test]
fn karcher_many_points_reports_small_gradient() {
    let mut text = String::new();
    let mut s = 12345u64;
    for _ in 0..100 {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let a = (s >> 11) as f64 / (1u64 << 53) as f64;
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let b = (s >> 11) as f64 / (1u64 << 53) as f64;
        text.push_str(&format!("{} {}\n", 4.0 * a - 2.0, 0.1 + 3.0 * b));
    }
    let f = temp_file(&text);
    let v = json(&run(&["karcher", f.path().to_str().unwrap(), "--tol", "1e-12"]));
    assert!(v["results"]["gradient_norm"].as_f64().unwrap() < 1e-12);
}

#[test]
fn karcher_bad_input() {
    let f = temp_file("0 -1\n");
    assert_eq!(run(&["karcher", f.path().to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn bounds_examples() {
    let v = json(&run(&[
        "bounds",
        "--noncocompact",
        "--mu",
        "1.0471975511965976",
        "--r",
        "2",
    ]));
    assert_eq!(v["results"]["degree_bound"].as_f64(), Some(2.0));
    let v = json(&run(&["bounds", "--elliptic-cprime", "1"]));
    let list: Vec<u64> = v["results"]["elliptic_orders"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t.as_u64().unwrap())
        .collect();
    assert!(list.starts_with(&[2, 3, 4, 6]));
    let v = json(&run(&["bounds", "--r", "2", "--L", "1", "--U", "1", "--D", "4"]));
    assert!((v["results"]["systole_lower_bound"].as_f64().unwrap() - 0.006540167019696668).abs() < 1e-15);
    assert_eq!(
        run(&["bounds", "--mu", "1", "--r", "2", "--stretch", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["bounds"]).status.code(), Some(2));
    assert_eq!(
        run(&["bounds", "--r", "2", "--L", "1", "--U", "1", "--D", "3"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn trirectangle_command() {
    let v = json(&run(&["trirectangle", "--x", "1", "--angle", "1.0471975511965976"]));
    assert!((v["results"]["y"].as_f64().unwrap() - 0.41356845081927838832).abs() < 1e-15);
    assert!((v["results"]["z"].as_f64().unwrap() - 1.10627725051104541382).abs() < 1e-15);
    assert_eq!(
        run(&["trirectangle", "--x", "1", "--angle", "2"]).status.code(),
        Some(2)
    );
}
