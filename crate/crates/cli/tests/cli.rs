use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use superring::verdict::Settings;
use superring_cli::{run_script, Report, Session, Status};

fn scripts() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scripts")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superring")).args(args).output().expect("binary runs")
}

fn temp_script(name: &str, body: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("superring-{}-{name}.sr", std::process::id()));
    std::fs::write(&path, body).unwrap();
    path
}

fn session_results(script: &str) -> Report {
    let mut session = Session::new(Settings::default(), false);
    run_script(&mut session, script).unwrap();
    Report::from_session(session)
}

#[test]
fn nonsplit_script_reports_the_expected_results() {
    let out = run(&[scripts().join("nonsplit.sr").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    let results = &report["results"];
    assert_eq!(results["x1^4"], "0");
    assert_eq!(results["x1^2"], "-t1t2");
    assert_eq!(results["split"], "NotSplit");
    assert_eq!(report["status"], "ok");
}

#[test]
fn empty_script_gives_an_empty_report() {
    let path = temp_script("empty", "");
    let out = run(&[path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["results"].as_object().unwrap().len(), 0);
    assert_eq!(report["records"].as_array().unwrap().len(), 0);
}

#[test]
fn unknown_command_exits_with_usage_error() {
    let path = temp_script("unknown", "ring R = C(1|0)\nfrobnicate R\n");
    let out = run(&[path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2") && err.contains("frobnicate"), "{err}");
}

#[test]
fn failed_check_exits_with_one() {
    let path = temp_script("fail", "ring R = C(1|1)\nnf R x1*t1*t1\ncheck x1*t1*t1 == 1\n");
    let out = run(&[path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let script = scripts().join("circle.sr");
    let a = run(&["--seed", "7", script.to_str().unwrap()]);
    let b = run(&["--seed", "7", script.to_str().unwrap()]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn json_and_svg_outputs_are_written() {
    let dir = std::env::temp_dir();
    let json = dir.join(format!("superring-{}-out.json", std::process::id()));
    let svg = dir.join(format!("superring-{}-out.svg", std::process::id()));
    let script = scripts().join("circle.sr");
    let out = run(&[script.to_str().unwrap(), "--json-out", json.to_str().unwrap(), "--svg-out", svg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(report["settings"]["abs"], 1e-12);
    assert!(std::fs::read_to_string(&svg).unwrap().matches("<circle").count() > 10);
}

#[test]
fn repl_applies_smooth_functions() {
    let mut session = Session::new(Settings::default(), false);
    let outcomes = session.execute_line("ring R = C(1|2); elem a = x1 + sin(x1)*t1t2; apply exp a").unwrap();
    let Some(superring_cli::Outcome::Done(record)) = outcomes.last() else { panic!("no record") };
    assert_eq!(record.output, "exp(x1) + exp(x1)*sin(x1)*t1t2");
    assert!(matches!(session.execute("quit").unwrap(), superring_cli::Outcome::Quit));
}

#[test]
fn repl_keeps_state_after_errors() {
    let mut session = Session::new(Settings::default(), false);
    session.execute("ring R = C(1|1)").unwrap();
    assert!(session.execute("ring R = C(2|0)").is_err());
    assert!(session.execute("nf R (x1").is_err());
    assert!(session.execute("nf R x1*t1").is_ok());
}

#[test]
fn points_are_listed_as_json() {
    let mut session = Session::new(Settings::default(), false);
    session.execute("ring R = C(1|0)").unwrap();
    session.execute("quotient Q = R / (x1^2 - 1)").unwrap();
    let superring_cli::Outcome::Done(rec) = session.execute("points Q box=-2..2 grid=50").unwrap() else { panic!() };
    let mut pts: Vec<f64> = serde_json::from_str::<Vec<Vec<f64>>>(&rec.output).unwrap().into_iter().map(|p| p[0]).collect();
    pts.sort_by(f64::total_cmp);
    assert_eq!(pts.len(), 2);
    assert!((pts[0] + 1.0).abs() < 1e-9 && (pts[1] - 1.0).abs() < 1e-9);
}

#[test]
fn morphisms_and_coproducts() {
    let report = session_results(
        "ring A = C(1|0)\nring B = C(0|1)\ncoproduct C = A + B\nring L = C(1|1)\n\
         morph s : L -> L = sin(x1), t1\nmap s x1 + x1*t1\nradical C x1*t1\naxioms L trials=5\n",
    );
    assert_eq!(report.status, Status::Ok);
    assert_eq!(report.results["map s x1 + x1*t1"], "sin(x1) + sin(x1)*t1");
    assert_eq!(report.results["axioms L"], "pass");
}
