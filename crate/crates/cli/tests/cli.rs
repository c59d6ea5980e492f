use std::fs;
use std::process::{Command, Output};

use gamma_mult::report::CSV_HEADER;
use gamma_mult::SuiteReport;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gamma-mult"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 output")
}

fn parse_value(out: &Output) -> f64 {
    stdout(out).trim().parse().expect("a number on stdout")
}

#[test]
fn eval_prints_fifteen_significant_digits() {
    let out = run(&["eval", "gamma", "0.5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "1.77245385090552");

    let out = run(&["eval", "beta", "0.5", "0.5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "3.14159265358979");
}

#[test]
fn eval_symbol_by_quadrature() {
    let out = run(&["eval", "symbol", "1", "1", "2", "--engine", "integral"]);
    assert_eq!(out.status.code(), Some(0));
    assert!((parse_value(&out) - std::f64::consts::FRAC_PI_2).abs() < 1e-10);
}

#[test]
fn eval_engines_agree() {
    for (function, args) in [
        ("gamma", vec!["7.3"]),
        ("lgamma", vec!["19.3"]),
        ("beta", vec!["2.5", "0.5"]),
        ("symbol", vec!["2", "3", "4"]),
        ("loggamma_integral", vec!["0.5"]),
    ] {
        let mut reference = vec!["eval", function];
        reference.extend(&args);
        let mut integral = reference.clone();
        integral.extend(["--engine", "integral"]);
        let (a, b) = (run(&reference), run(&integral));
        assert_eq!(a.status.code(), Some(0), "{function}: {}", stderr(&a));
        assert_eq!(b.status.code(), Some(0), "{function}: {}", stderr(&b));
        let (a, b) = (parse_value(&a), parse_value(&b));
        assert!((a - b).abs() <= 1e-9 * a.abs(), "{function}: {a} vs {b}");
    }
}

#[test]
fn eval_usage_errors_exit_2() {
    for args in [
        &["eval", "gamma", "-1"][..],
        &["eval", "gamma", "0"],
        &["eval", "beta", "1"],
        &["eval", "gamma", "1", "2"],
        &["eval", "symbol", "1", "1", "2.5"],
        &["eval", "nope", "1"],
        &["eval", "gamma", "1", "--abs-tol", "-1"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!stderr(&out).is_empty());
        assert!(stdout(&out).is_empty());
    }
}

#[test]
fn eval_non_convergence_exits_1() {
    let out = run(&[
        "eval",
        "gamma",
        "0.3",
        "--engine",
        "integral",
        "--max-refinements",
        "1",
        "--rel-tol",
        "1e-15",
        "--abs-tol",
        "1e-300",
    ]);
    assert_eq!(out.status.code(), Some(1), "{}", stderr(&out));
    assert!(stderr(&out).contains("did not converge"));
}

#[test]
fn verify_passing_identity() {
    let out = run(&["verify", "gauss-multiplication", "--n", "5", "--x", "3.7"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("pass"));
}

#[test]
fn verify_reflection_at_half_gives_pi() {
    let out = run(&["verify", "reflection", "--x", "0.5", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let pi = std::f64::consts::PI;
    assert!((value["lhs"].as_f64().unwrap() - pi).abs() < 1e-13);
    assert!((value["rhs"].as_f64().unwrap() - pi).abs() < 1e-13);
    assert_eq!(value["passed"], true);
}

#[test]
fn verify_domain_error_exits_2() {
    let out = run(&["verify", "reflection", "--x", "1.5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("x must lie in (0,1)"));
}

#[test]
fn verify_unknown_identity_and_missing_param_exit_2() {
    assert_eq!(
        run(&["verify", "no-such-identity", "--x", "0.5"]).status.code(),
        Some(2)
    );
    let out = run(&["verify", "gauss-multiplication", "--x", "3.7"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--n"));
}

#[test]
fn verify_tight_tolerance_fails_with_exit_1() {
    let out = run(&["verify", "gamma-engines", "--x", "0.1", "--tol", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn suite_forced_failure_exits_1() {
    let out = run(&["suite", "--tol", "gauss-multiplication=1e-30", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let report: SuiteReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(report.n_fail() > 0);
    assert!(report
        .failures()
        .all(|r| r.identity_id.as_str() == "gauss-multiplication"));
}

#[test]
fn suite_csv_header_and_rows() {
    let out = run(&["suite", "--format", "csv", "--only", "sine-product"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "identity_id,params,lhs,rhs,abs_residual,rel_residual,tolerance,passed"
    );
    assert_eq!(
        CSV_HEADER.join(","),
        "identity_id,params,lhs,rhs,abs_residual,rel_residual,tolerance,passed"
    );
    let rows: Vec<_> = lines.collect();
    assert_eq!(rows.len(), 29);
    assert!(rows[0].starts_with("sine-product,n=2,"));
}

#[test]
fn suite_writes_json_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&["suite", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).is_empty());
    let report: SuiteReport = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert!(report.all_passed());
    assert_eq!(report.n_pass(), report.reports.len());
}

#[test]
fn suite_unwritable_output_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("report.json");
    let out = run(&["suite", "--only", "sine-product", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("cannot write"));
}

#[test]
fn suite_malformed_flags_exit_2() {
    for args in [
        &["suite", "--format", "xml"][..],
        &["suite", "--tol", "gauss-multiplication"],
        &["suite", "--tol", "nope=1e-3"],
        &["suite", "--n", "12..2"],
        &["suite", "--only", "nope"],
        &["suite", "--rel-tol", "-1"],
        &["suite", "--only", "sine-product", "--n", ""],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", stderr(&out));
    }
}

#[test]
fn suite_grid_flags_override_axes() {
    let out = run(&[
        "suite",
        "--only",
        "gauss-multiplication",
        "--n",
        "2..4",
        "--x",
        "0.5,100",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let report: SuiteReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report.reports.len(), 6);
    assert_eq!(report.reports[0].params["n"], 2.0);
    assert_eq!(report.reports[0].params["x"], 0.5);
}

#[test]
fn suite_output_is_deterministic() {
    let args = ["suite", "--format", "csv"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn suite_timings_are_opt_in() {
    let plain = run(&["suite", "--only", "reflection", "--format", "json"]);
    assert!(!stdout(&plain).contains("wall_time"));
    let timed = run(&["suite", "--only", "reflection", "--format", "json", "--timings"]);
    assert!(stdout(&timed).contains("wall_time"));
}
