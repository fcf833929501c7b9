use std::io::Write;
use std::process::{Command, Output};

use hyperplane_lcs::report::{run, AnalysisRequest, CheckStatus};

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperplane-lcs")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn analyze_builtin() {
    let out = cli(&["analyze", "x3", "--all"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("φ_4 = 9"));
    assert!(!text.contains(" FAIL "));
}

#[test]
fn doc_output_is_byte_identical_across_runs() {
    let args = ["analyze", "k4-braid", "--format", "doc"];
    let (a, b) = (cli(&args), cli(&args));
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let doc: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(doc["schema"], "arrangement-report/v1");
}

#[test]
fn analyze_file() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "# a path on four vertices\n4\n0 1\n1 2\n2 3").unwrap();
    let out = cli(&["analyze", file.path().to_str().unwrap(), "--lcs", "--graphic", "--format", "doc"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["flags"]["koszul"], "koszul");
}

#[test]
fn parse_errors_exit_1_with_position() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "normals: [[1, 0],\n  [0, x]]").unwrap();
    let out = cli(&["analyze", file.path().to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(code(&cli(&[])), 1);
    assert_eq!(code(&cli(&["analyze"])), 1);
    assert_eq!(code(&cli(&["analyze", "no-such-fixture"])), 1);
    assert_eq!(code(&cli(&["analyze", "x3", "--format", "xml"])), 1);
    assert_eq!(code(&cli(&["analyze", "x3", "--imax", "0"])), 1);
    assert_eq!(code(&cli(&["harness"])), 1);
    assert_eq!(code(&cli(&["harness", "--graphs", "4", "--configs", "5"])), 1);
    assert_eq!(code(&cli(&["analyze", "x3", "--graphic"])), 1);
}

#[test]
fn resource_caps_exit_3() {
    assert_eq!(code(&cli(&["harness", "--graphs", "8"])), 3);
    assert_eq!(code(&cli(&["harness", "--configs", "10"])), 3);
    assert_eq!(code(&cli(&["analyze", "pencil(22)"])), 3);
}

#[test]
fn failed_checks_are_inconsistencies() {
    let mut report = run(&AnalysisRequest::builtin("x3")).unwrap();
    report.ensure_consistent().unwrap();
    report.checks[0].status = CheckStatus::Fail;
    assert_eq!(report.ensure_consistent().unwrap_err().exit_code(), 2);
}

#[test]
fn fixtures_list() {
    let out = cli(&["fixtures", "list"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    for name in ["pencil3", "x3", "x2", "fan-a", "fan-b", "pappus-93-1", "pappus-93-2", "k4-braid", "fig5-graph"] {
        assert!(text.lines().any(|l| l.starts_with(name)), "{name} missing");
    }
}

#[test]
fn harness_labels_prediction_only_rows() {
    let out = cli(&["harness", "--graphs", "4", "--kmax", "6"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("prediction-only"));
    let out = cli(&["harness", "--configs", "6", "--format", "doc"]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(doc["summary"].as_array().unwrap().iter().all(|r| r["mismatches"] == 0));
}
