use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use cvinfo::io::cm_to_json;
use cvinfo::symplectic::tmsv;
use cvinfo::CovarianceMatrix;
use serde_json::Value;
use tempfile::TempDir;

fn cvinfo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cvinfo"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_out(o: &Output) -> Value {
    serde_json::from_str(stdout(o).trim()).unwrap()
}

fn write_cm(dir: &TempDir, name: &str, v: &CovarianceMatrix) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, cm_to_json(v)).unwrap();
    path
}

fn write_text(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn entropy_of_vacuum() {
    let dir = TempDir::new().unwrap();
    let f = write_cm(&dir, "vacuum3.json", &CovarianceMatrix::vacuum(3).unwrap());
    let o = cvinfo(&["entropy", s(&f), "--kind", "M"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "0.0");
    let o = cvinfo(&["entropy", s(&f)]);
    let v = json_out(&o);
    assert_eq!(v["M"].as_f64(), Some(0.0));
    assert_eq!(v["D"].as_f64(), Some(0.0));
    assert!(v["H"].as_f64().unwrap().abs() < 1e-11);
}

#[test]
fn gen_check_round_trip() {
    let dir = TempDir::new().unwrap();
    let f = dir.path().join("state.json");
    let o = cvinfo(&["gen", "--modes", "4", "--seed", "11", "--nu-max", "3", "--out", s(&f)]);
    assert!(o.status.success());
    let drawn: Vec<f64> = json_out(&o)["symplectic_spectrum"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect();
    let o = cvinfo(&["check", s(&f)]);
    assert!(o.status.success());
    let report = json_out(&o);
    assert_eq!(report["bona_fide"], Value::Bool(true));
    let spectrum = report["symplectic_spectrum"].as_array().unwrap();
    assert_eq!(spectrum.len(), 4);
    for (x, y) in spectrum.iter().zip(&drawn) {
        assert!((x.as_f64().unwrap() - y).abs() <= 1e-7);
    }
}

#[test]
fn identical_arguments_give_identical_bytes() {
    let a = cvinfo(&["gen", "--modes", "3", "--seed", "5", "--nu-max", "2"]);
    let b = cvinfo(&["gen", "--modes", "3", "--seed", "5", "--nu-max", "2"]);
    assert_eq!(a.stdout, b.stdout);
    let a = cvinfo(&["scan", "--c", "2", "--grid", "60", "--max", "6"]);
    let b = cvinfo(&["scan", "--c", "2", "--grid", "60", "--max", "6"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn scan_rows_are_nested() {
    let o = cvinfo(&["scan", "--c", "2", "--grid", "200", "--max", "6"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("a,b,c,in_H,in_M,in_D"));
    let mut rows = 0;
    for line in lines {
        let f: Vec<&str> = line.split(',').collect();
        let flag = |i: usize| f[i].parse::<u8>().unwrap();
        assert!(flag(5) <= flag(4) && flag(4) <= flag(3), "{line}");
        rows += 1;
    }
    assert_eq!(rows, 40_000);
}

#[test]
fn scan_to_file_prints_summary() {
    let dir = TempDir::new().unwrap();
    let f = dir.path().join("fig.csv");
    let o = cvinfo(&["scan", "--grid", "50", "--out", s(&f)]);
    assert!(o.status.success());
    assert_eq!(json_out(&o)["nested"], Value::Bool(true));
    assert_eq!(fs::read_to_string(&f).unwrap().lines().count(), 2501);
}

#[test]
fn monogamy_of_tmsv_plus_vacuum() {
    let dir = TempDir::new().unwrap();
    let v = tmsv(0.7).direct_sum(&CovarianceMatrix::vacuum(1).unwrap());
    let f = write_cm(&dir, "tmsv_plus_vacuum.json", &v);
    let o = cvinfo(&["monogamy", s(&f), "--partition", "1;2;3"]);
    assert!(o.status.success());
    let r = json_out(&o);
    assert_eq!(r["consistent"], Value::Bool(true));
    assert!((r["product_of_conditionals"].as_f64().unwrap() - 1.0).abs() <= 1e-8);
    assert!((r["g_ab"].as_f64().unwrap() - 1.4f64.cosh().ln()).abs() <= 1e-10);
    assert_eq!(r["g_cb"].as_f64(), Some(0.0));

    let o = cvinfo(&["monogamy", s(&f), "--partition", "1;2,3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn steer_and_reid_reports() {
    let dir = TempDir::new().unwrap();
    let f = write_cm(&dir, "tmsv.json", &tmsv(0.5));
    let o = cvinfo(&["steer", s(&f), "--measured", "1"]);
    assert!(o.status.success());
    let r = json_out(&o);
    assert_eq!(r["direction"], serde_json::json!([[1], [2]]));
    assert_eq!(r["steerable"], Value::Bool(true));
    assert!((r["G"].as_f64().unwrap() - 1f64.cosh().ln()).abs() <= 1e-11);

    let o = cvinfo(&["reid", s(&f)]);
    assert!(o.status.success());
    let r = json_out(&o);
    let expected = 1.0 / 1f64.cosh().powi(2);
    assert!((r["reid_product"].as_f64().unwrap() - expected).abs() <= 1e-11);
    assert!((r["min_reid"].as_f64().unwrap() - expected).abs() <= 1e-11);
}

#[test]
fn ssa_residuals() {
    let dir = TempDir::new().unwrap();
    let f = dir.path().join("pure.json");
    assert!(cvinfo(&["gen", "--modes", "4", "--seed", "3", "--out", s(&f)]).status.success());
    let o = cvinfo(&["ssa", s(&f), "--partition", "1;2;3,4"]);
    assert!(o.status.success());
    let r = json_out(&o);
    assert!(r["ssa"].as_f64().unwrap().abs() <= 1e-7);
    assert_eq!(r["partition"], serde_json::json!([[1], [2], [3, 4]]));
    let o = cvinfo(&["ssa", s(&f), "--partition", "1,2;3,4"]);
    assert!(o.status.success());
    assert!(json_out(&o)["subadditivity"].as_f64().unwrap() >= 0.0);
    let o = cvinfo(&["ssa", s(&f), "--partition", "1;2;3,4", "--kind", "H"]);
    assert!(o.status.success());
}

#[test]
fn violated_checks_exit_one() {
    let dir = TempDir::new().unwrap();
    let f = write_text(&dir, "squeezed.json", r#"{"modes": 1, "matrix": [[0.5, 0], [0, 0.5]]}"#);
    let o = cvinfo(&["check", s(&f)]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json_out(&o)["bona_fide"], Value::Bool(false));
    // the log-det SSA fails on a non-physical product matrix
    let f = write_text(
        &dir,
        "product.json",
        r#"{"modes": 3, "matrix": [[2,0,0,0,0,0],[0,2,0,0,0,0],[0,0,0.5,0,0,0],[0,0,0,0.5,0,0],[0,0,0,0,2,0],[0,0,0,0,0,2]]}"#,
    );
    let o = cvinfo(&["ssa", s(&f), "--partition", "1;2;3"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn input_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let vac = write_cm(&dir, "vac.json", &CovarianceMatrix::vacuum(3).unwrap());
    let cases: Vec<(PathBuf, Vec<&str>)> = vec![
        (write_text(&dir, "bad.json", "{not json"), vec!["check"]),
        (
            write_text(&dir, "asym.json", r#"{"modes": 1, "matrix": [[1, 0.2], [0.1, 1]]}"#),
            vec!["check"],
        ),
        (
            write_text(&dir, "indef.json", r#"{"modes": 1, "matrix": [[1, 2], [2, 1]]}"#),
            vec!["entropy"],
        ),
        (
            write_text(&dir, "shape.json", r#"{"modes": 2, "matrix": [[1, 0], [0, 1]]}"#),
            vec!["check"],
        ),
        (dir.path().join("missing.json"), vec!["check"]),
    ];
    for (path, args) in cases {
        let mut argv: Vec<&str> = args.clone();
        argv.push(s(&path));
        let o = cvinfo(&argv);
        assert_eq!(o.status.code(), Some(2), "{argv:?}");
        let err = String::from_utf8(o.stderr).unwrap();
        assert_eq!(err.trim().lines().count(), 1, "{err}");
    }
    for partition in ["1;;2", "1;a;3", "1;2;9", "1;1;2", "1;2;3;4,5"] {
        let o = cvinfo(&["ssa", s(&vac), "--partition", partition]);
        assert_eq!(o.status.code(), Some(2), "{partition}");
    }
    assert_eq!(cvinfo(&["entropy", s(&vac), "--kind", "X"]).status.code(), Some(2));
    assert_eq!(cvinfo(&["gen", "--modes", "2", "--seed", "1", "--nu-max", "0.5"]).status.code(), Some(2));
    assert_eq!(cvinfo(&["frobnicate"]).status.code(), Some(2));
}
