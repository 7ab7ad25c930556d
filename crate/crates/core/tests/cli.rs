use std::io::Write;
use std::process::{Command, Output};

use qkernel::audit::{AuditReport, Status};
use qkernel::cli::{EXIT_DRIFT, EXIT_OK, EXIT_USAGE};

fn qkernel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qkernel")).args(args).output().expect("qkernel runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn beta_one_has_classical_limit() {
    let o = qkernel(&["beta", "--n", "1", "--limit-q1", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    assert_eq!(stdout(&o), "quantity,q,value\nbeta_1,q,(-1)/(1 + q)\nbeta_1,1,-1/2\n");
}

#[test]
fn beta_families() {
    let o = qkernel(&["beta", "--n", "2", "--eval-q", "4", "--format", "csv"]);
    assert!(stdout(&o).ends_with("beta_2,4,4/105\n"), "{}", stdout(&o));
    let o = qkernel(&["beta", "--n", "1", "--inverse", "--order", "1", "--format", "csv"]);
    assert!(stdout(&o).contains("beta^(-1)_1,q,1/2\n"), "{}", stdout(&o));
    let o = qkernel(&["beta", "--n", "1", "--order", "0"]);
    assert_eq!(o.status.code(), Some(EXIT_USAGE));
}

#[test]
fn matrix_formats() {
    let o = qkernel(&["bernstein-matrix", "--n", "2", "--format", "latex"]);
    assert_eq!(
        stdout(&o),
        "\\left(\n\\begin{array}{rrr}\n1 & 0 & 0 \\\\\n-2 & 2 & 0 \\\\\n1 & -2 & 1\n\\end{array}\n\\right)\n"
    );
    let o = qkernel(&["bernstein-matrix", "--n", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rows"], serde_json::json!([["1", "0"], ["-1", "1"]]));
}

#[test]
fn table_of_gaussian_binomials() {
    let o = qkernel(&["table", "--family", "qbinom", "--n-max", "3", "--format", "csv"]);
    assert!(stdout(&o).contains("3,1,1 + q + q^2\n"), "{}", stdout(&o));
}

#[test]
fn single_identity_audit() {
    let o = qkernel(&["audit", "--identities", "EQ14", "--n-max", "6", "--format", "json"]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    let report = AuditReport::from_json(&stdout(&o)).unwrap();
    assert_eq!(report.verdicts.len(), 1);
    assert_eq!(report.verdicts[0].status, Status::Holds);
    assert_eq!(report.summary.total, 1);
}

#[test]
fn drift_against_expectation() {
    let o = qkernel(&["audit", "--identities", "EQ13", "--format", "json"]);
    let mut golden = tempfile::NamedTempFile::new().unwrap();
    golden.write_all(&o.stdout).unwrap();
    let path = golden.path().to_str().unwrap();
    assert_eq!(qkernel(&["audit", "--identities", "EQ13", "--expect", path]).status.code(), Some(EXIT_OK));

    let mut altered = tempfile::NamedTempFile::new().unwrap();
    altered.write_all(stdout(&o).replacen("\"FAILS\"", "\"HOLDS\"", 1).as_bytes()).unwrap();
    let drifted = qkernel(&["audit", "--identities", "EQ13", "--expect", altered.path().to_str().unwrap()]);
    assert_eq!(drifted.status.code(), Some(EXIT_DRIFT));
    assert!(stderr(&drifted).contains("EQ13"), "{}", stderr(&drifted));
}

#[test]
fn audit_guards() {
    let o = qkernel(&["audit", "--n-max", "11"]);
    assert_eq!(o.status.code(), Some(EXIT_USAGE));
    assert!(stderr(&o).contains("range too large"));
    let o = qkernel(&["audit", "--identities", "EQ99"]);
    assert_eq!(o.status.code(), Some(EXIT_USAGE));
    assert!(stderr(&o).contains("EQ99"));
}

#[test]
fn audit_is_independent_of_thread_count() {
    let one = qkernel(&["audit", "--identities", "EQ11,THM5", "--threads", "1", "--format", "json"]);
    let many = Command::new(env!("CARGO_BIN_EXE_qkernel"))
        .args(["audit", "--identities", "EQ11,THM5", "--format", "json"])
        .env("QKERNEL_THREADS", "4")
        .output()
        .unwrap();
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn padic_probe_rows() {
    let o = qkernel(&["padic-probe", "--moment", "2", "--levels", "4", "--format", "csv"]);
    let lines: Vec<String> = stdout(&o).lines().map(|l| l.split(',').take(3).collect::<Vec<_>>().join(",")).collect();
    assert_eq!(lines, ["N,valuation,shadow", "1,1,1", "2,3,3", "3,4,4", "4,5,5"]);
    let o = qkernel(&["padic-probe", "--p", "3", "--q", "2"]);
    assert_eq!(o.status.code(), Some(EXIT_USAGE));
}

#[test]
fn bernstein_eval_from_samples() {
    let mut samples = tempfile::NamedTempFile::new().unwrap();
    writeln!(samples, "0\n1/2\n1").unwrap();
    let path = samples.path().to_str().unwrap();

    let o = qkernel(&["bernstein-eval", "--q", "1/2", "--x", "1", "--samples", path, "--format", "csv"]);
    assert_eq!(stdout(&o), "n,q,x,mode,value\n2,1/2,1,exact,1\n");

    let o = qkernel(&[
        "bernstein-eval",
        "--q",
        "1/2",
        "--x",
        "1/2",
        "--u",
        "3/5",
        "--mode",
        "exact",
        "--samples",
        path,
        "--format",
        "csv",
    ]);
    assert!(stdout(&o).ends_with(",exact,3/5\n"), "{}", stdout(&o));

    let o = qkernel(&["bernstein-eval", "--q", "1/2", "--x", "1/2", "--samples", path, "--format", "csv"]);
    let value: f64 = stdout(&o).lines().nth(1).unwrap().rsplit(',').next().unwrap().parse().unwrap();
    let q: f64 = 0.5;
    assert!((value - (1.0 - q.sqrt()) / (1.0 - q)).abs() < 1e-12);

    let o = qkernel(&["bernstein-eval", "--q", "2", "--x", "1", "--samples", path]);
    assert_eq!(o.status.code(), Some(EXIT_USAGE));
}

#[test]
fn config_file_supplies_flags() {
    let mut config = tempfile::NamedTempFile::new().unwrap();
    writeln!(config, "# defaults\nn = 1\nlimit-q1 = true").unwrap();
    let o = qkernel(&["--config", config.path().to_str().unwrap(), "--format", "csv", "beta"]);
    assert_eq!(o.status.code(), Some(EXIT_OK), "{}", stderr(&o));
    assert!(stdout(&o).ends_with("beta_1,1,-1/2\n"));
}

#[test]
fn usage_errors() {
    assert_eq!(qkernel(&[]).status.code(), Some(EXIT_USAGE));
    let o = qkernel(&["bernstein-matrix"]);
    assert_eq!(o.status.code(), Some(EXIT_USAGE));
    assert!(stderr(&o).contains("usage: qkernel"));
    assert_eq!(qkernel(&["--help"]).status.code(), Some(EXIT_OK));
}
