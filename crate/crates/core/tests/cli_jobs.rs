use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_realslice")).args(args).output().expect("binary runs")
}

fn report(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn without_timings(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timings");
    v
}

#[test]
fn verify_job_file() {
    let dir = tempfile::tempdir().unwrap();
    let job = dir.path().join("circle.job");
    std::fs::write(&job, "# circle and axes\ncommand = verify\npencil = x^2+y^2-z^2; xy\nline = 1,0,0;0,1,0\nout = report.json\n").unwrap();
    let out = run(&["--job", job.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&dir.path().join("report.json"));
    assert_eq!(r["schema"], "realslice-report/1");
    assert_eq!(r["result"]["residual"], "0");
    assert_eq!(r["result"]["h_dot_v"], 1);
    assert_eq!(r["result"]["lk_chart"], "0");
}

#[test]
fn flags_override_the_job_file() {
    let dir = tempfile::tempdir().unwrap();
    let job = dir.path().join("j.job");
    std::fs::write(&job, "command = link\npencil = x;y\norient = +\n").unwrap();
    let out_path = dir.path().join("r.json");
    let out = run(&["--job", job.to_str().unwrap(), "--orient", "-", "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out_path)["result"]["lk_chart"], "-1/2");
}

#[test]
fn pencil_file_on_two_lines() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("pencil.txt");
    std::fs::write(&p, "x^2+y^2-z^2\nxy\n").unwrap();
    let out = run(&["solve", "--pencil-file", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["result"]["points"].as_array().unwrap().len(), 4);
}

#[test]
fn tangency_reports_the_box() {
    let out = run(&["certify", "--pencil", "x^2+y^2-z^2;(y-z)x"]);
    assert_eq!(out.status.code(), Some(3));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["status"], "error");
    assert_eq!(r["error"]["module"], "solve");
    assert_eq!(r["error"]["kind"], "SingularOrTangent");
    assert_eq!(r["error"]["chart"], "z");
    let bbox = r["error"]["box"].as_array().unwrap();
    // The point (0:1:1) lies in the box.
    let inside = |iv: &Value, v: f64| iv["lo_approx"].as_f64().unwrap() <= v && v <= iv["hi_approx"].as_f64().unwrap();
    assert!(inside(&bbox[0], 0.0) && inside(&bbox[1], 1.0), "{bbox:?}");
}

#[test]
fn input_errors_exit_with_two() {
    for args in [
        vec!["solve", "--pencil", "x^2+;y"],
        vec!["solve", "--pencil", "x^2;y"],
        vec!["link", "--pencil", "x;y", "--line", "1,0,0;2,0,0"],
        vec!["batch", "--degrees", "0-9"],
        vec!["solve"],
        vec!["plot", "--pencil", "x;y", "--window", "1,1,0,1"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
    let out = run(&["solve", "--pencil", "x^2;xy"]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["link", "--pencil", "x;y", "--line", "0,0,1;1,0,0"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn batch_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for p in [&a, &b] {
        let out = run(&["batch", "--seed", "7", "--count", "50", "--out", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
    }
    let (ra, rb) = (report(&a), report(&b));
    let rows = ra["result"]["instances"].as_array().unwrap();
    assert_eq!(rows.len(), 50);
    assert!(rows.iter().all(|r| r["residual"] == "0"));
    assert_eq!(without_timings(ra), without_timings(rb));
}

#[test]
fn plot_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("p.svg");
    let out = run(&["plot", "--pencil", "x;y", "--svg", svg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg") && text.contains("lk = 1/2"));
}
