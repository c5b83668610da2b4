use std::process::{Command, Output};

fn qcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcalc")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn verify_single_suite_passes() {
    let o = qcalc(&["verify", "--suite", "bralie"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("suite: bralie"));
    assert!(text.contains("16 passed, 0 failed"), "{text}");
}

#[test]
fn verify_json_is_stable() {
    let a = qcalc(&["verify", "--suite", "check-L", "--json"]);
    let b = qcalc(&["verify", "--suite", "check-L", "--json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.contains("\"failed\": 0"), "{text}");
    assert!(text.find("\"checks\"").unwrap() < text.find("\"failed\"").unwrap());
}

#[test]
fn suq2_casimir_reports_numeric_diagnostic() {
    let o = qcalc(&["suq2", "--suite", "casimir"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("numeric:"));
}

#[test]
fn tangent_of_cubic_is_two_jet() {
    let o = qcalc(&["tangent", "--c", "p^3/6"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("dim L = 2"), "{text}");
    assert!(text.contains("e[p^2] = p^2"), "{text}");
}

#[test]
fn tangent_two_dimensional_lattice() {
    let o = qcalc(&["tangent", "--c", "lam^-2*exp(lam*p) + mu^-2*exp(mu*q)", "--vars", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("dim L = 2"));
}

#[test]
fn calculus_omega2_tables() {
    let o = qcalc(&["calculus", "--spec", "jet:2", "--show", "omega2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("d(w) = (dx)^2"), "{text}");
    assert!(text.contains("w ∧ w = 0"), "{text}");
    let o = qcalc(&["calculus", "--spec", "jet:4", "--show", "omega2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn gauge_flatness_sets_exit_code() {
    let flat = qcalc(&["gauge", "--spec", "jet:2", "--alpha", "1/x, -2/x^2", "--op", "flat"]);
    assert_eq!(flat.status.code(), Some(0));
    assert!(stdout(&flat).contains("flat"));
    let curved = qcalc(&["gauge", "--spec", "jet:2", "--alpha", "x, 0", "--op", "flat"]);
    assert_eq!(curved.status.code(), Some(1));
    assert!(stdout(&curved).contains("not flat"));
}

#[test]
fn gauge_lattice_pure_gauge() {
    let o = qcalc(&["gauge", "--spec", "fd:2", "--alpha", "0, 0", "--gamma", "x", "--op", "transform"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("alpha^gamma = dx*(1/(x + lam))"), "{text}");
    assert!(text.contains("F(alpha^gamma) = 0"), "{text}");
}

#[test]
fn gauge_lemmas_symbolic() {
    let o = qcalc(&["gauge", "--spec", "jet:2", "--alpha", "a, b", "--op", "lemmas"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("3 passed, 0 failed"));
}

#[test]
fn usage_and_parse_errors_exit_two() {
    assert_eq!(qcalc(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(qcalc(&["frobnicate"]).status.code(), Some(2));
    let o = qcalc(&["tangent", "--c", "p^3/6 +* 2"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("column 8"), "{err}");
    let o = qcalc(&["gauge", "--spec", "jet:2", "--alpha", "x", "--op", "curvature"]);
    assert_eq!(o.status.code(), Some(2));
    let o = qcalc(&["gauge", "--spec", "jet:2", "--alpha", "x, 0", "--op", "transform"]);
    assert_eq!(o.status.code(), Some(2));
}
