//! End-to-end tests against the built binary: golden outputs, exit codes,
//! file round-trips, and byte determinism.

use std::io::Write;
use std::process::{Command, Output};

fn fpcarry(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fpcarry"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = fpcarry(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn first_line(args: &[&str]) -> String {
    stdout_of(args)
        .lines()
        .next()
        .unwrap_or_default()
        .to_string()
}

fn exit_code(args: &[&str]) -> i32 {
    fpcarry(args).status.code().expect("exit code")
}

#[test]
fn addition_carry_polynomials() {
    assert_eq!(
        first_line(&["carry", "add", "--p", "2", "--n", "2", "--i", "1"]),
        "x1*x2"
    );
    assert_eq!(
        first_line(&["carry", "add", "--p", "3", "--n", "1", "--i", "1"]),
        "0"
    );
    assert_eq!(
        first_line(&["carry", "add", "--p", "3", "--n", "2", "--i", "1"]),
        "2*x1^2*x2 + 2*x1*x2^2 + 2*x1*x2"
    );
}

#[test]
fn multiplication_carry_polynomials() {
    assert_eq!(
        first_line(&["carry", "mul", "--p", "3", "--n", "2"]),
        "x1^2*x2^2 + 2*x1^2*x2 + 2*x1*x2^2 + x1*x2"
    );
    assert_eq!(exit_code(&["carry", "mul", "--p", "2", "--n", "2"]), 2);
}

#[test]
fn auxiliary_polynomial_output() {
    let out = stdout_of(&["carry", "mul-psi", "--p", "5"]);
    assert_eq!(out, "2*t^3 + 3*t^2\nPsi(1) = 0\n");
    let out = stdout_of(&["carry", "mul-psi", "--p", "11"]);
    assert_eq!(out, "5*t^9 + 1*t^8 + 1*t^6 + 10*t^4 + 6*t^2\nPsi(1) = 1\n");
    let json = stdout_of(&["carry", "mul-psi", "--p", "5", "--json"]);
    assert_eq!(
        json,
        "{\"p\":5,\"psi\":\"2*t^3 + 3*t^2\",\"psi_at_one\":0}\n"
    );
    assert_eq!(exit_code(&["carry", "mul-psi", "--p", "2"]), 2);
}

#[test]
fn non_prime_modulus_is_a_usage_error() {
    assert_eq!(
        exit_code(&["carry", "add", "--p", "4", "--n", "2", "--i", "1"]),
        2
    );
    assert_eq!(exit_code(&["bignum", "add", "--p", "9", "1", "2"]), 2);
}

#[test]
fn bignum_golden_runs() {
    assert_eq!(first_line(&["bignum", "add", "--p", "5", "19", "24"]), "43");
    assert_eq!(
        first_line(&["bignum", "mul", "--p", "7", "--algo", "listed", "48", "48"]),
        "2304"
    );
    assert_eq!(first_line(&["bignum", "add", "--p", "3", "0", "0"]), "0");
    assert_eq!(
        first_line(&["bignum", "add", "--p", "3", "--algo", "many", "8", "8", "8"]),
        "24"
    );
    assert_eq!(exit_code(&["bignum", "mul", "--p", "2", "3", "3"]), 2);
    assert_eq!(exit_code(&["bignum", "mul", "--p", "5", "3", "3", "3"]), 2);
}

#[test]
fn radix_literal_mode() {
    assert_eq!(
        first_line(&["bignum", "add", "--p", "5", "--radix-literal", "34", "44"]),
        "133"
    );
    assert_eq!(
        first_line(&["bignum", "mul", "--p", "3", "--radix-literal", "21", "12"]),
        "1022"
    );
    assert_eq!(
        exit_code(&["bignum", "add", "--p", "3", "--radix-literal", "31", "1"]),
        2
    );
}

#[test]
fn tracked_runs_append_cost_reports() {
    let out = stdout_of(&["bignum", "mul", "--p", "5", "--track", "19", "24"]);
    assert!(out.contains("adds = "));
    assert!(out.contains("muls = "));
    assert!(out.contains("max_depth = "));
    let json = stdout_of(&["bignum", "mul", "--p", "5", "--track", "--json", "19", "24"]);
    assert!(json.contains(r#""result":"456""#));
    assert!(json.contains(r#""cost":{"adds":"#));
}

#[test]
fn interp_command() {
    let dir = tempfile::tempdir().unwrap();

    let constant = dir.path().join("one.txt");
    std::fs::write(&constant, "2 1\n0 -> 1\n1 -> 1\n").unwrap();
    assert_eq!(first_line(&["interp", constant.to_str().unwrap()]), "1");

    let and_gate = dir.path().join("and.txt");
    std::fs::write(&and_gate, "2 2\n0 0 -> 0\n0 1 -> 0\n1 0 -> 0\n1 1 -> 1\n").unwrap();
    assert_eq!(first_line(&["interp", and_gate.to_str().unwrap()]), "x1*x2");

    let dup = dir.path().join("dup.txt");
    std::fs::write(&dup, "2 1\n0 -> 0\n0 -> 1\n1 -> 0\n").unwrap();
    let out = fpcarry(&["interp", dup.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("listed twice"));
}

#[test]
fn dumped_tables_reinterpolate_to_the_same_polynomial() {
    let dir = tempfile::tempdir().unwrap();
    let mut case = 0;
    let mut round_trip = |args: &[&str]| {
        let poly = first_line(args);
        let mut with_dump: Vec<&str> = args.to_vec();
        with_dump.push("--dump-table");
        let table = stdout_of(&with_dump);
        let path = dir.path().join(format!("table{case}.txt"));
        case += 1;
        let mut f = std::fs::File::create(&path).unwrap();
        f.write_all(table.as_bytes()).unwrap();
        assert_eq!(
            first_line(&["interp", path.to_str().unwrap()]),
            poly,
            "{args:?}"
        );
    };
    round_trip(&["carry", "add", "--p", "3", "--n", "2", "--i", "1"]);
    round_trip(&["carry", "add", "--p", "5", "--n", "2", "--i", "1"]);
    round_trip(&["carry", "add", "--p", "2", "--n", "3", "--i", "1"]);
    round_trip(&["carry", "mul", "--p", "5", "--n", "2"]);
    round_trip(&["carry", "mul", "--p", "3", "--n", "3"]);
}

#[test]
fn outputs_are_byte_deterministic() {
    for args in [
        vec!["carry", "mul", "--p", "7", "--n", "3"],
        vec!["carry", "add", "--p", "5", "--n", "3", "--i", "1", "--json"],
        vec![
            "bignum",
            "mul",
            "--p",
            "11",
            "--track",
            "123456789",
            "987654321",
        ],
    ] {
        assert_eq!(stdout_of(&args), stdout_of(&args), "{args:?}");
    }
}

#[test]
fn verify_suites_and_exit_codes() {
    let out = stdout_of(&["verify", "--suite", "cocycle", "--p-max", "13"]);
    assert!(out.contains("ok   product-carry cocycle identity"));
    assert!(out.trim_end().ends_with("checks passed"));

    let json = stdout_of(&[
        "verify", "--suite", "bignum", "--p-max", "3", "--pairs", "2", "--json",
    ]);
    assert!(json.contains(r#""pass":true"#));

    assert_eq!(exit_code(&["verify", "--suite", "nope"]), 2);
}

#[test]
fn bernoulli_suite_with_bounds() {
    let out = stdout_of(&[
        "verify",
        "--suite",
        "bernoulli",
        "--l-max",
        "60",
        "--p-max",
        "60",
    ]);
    assert!(out.contains("ok   von Staudt-Clausen denominators"));
    assert!(!out.contains("FAIL"));
}

#[test]
fn remaining_suites_pass_at_default_bounds() {
    for suite in ["add-carry", "mul-carry", "appendix"] {
        let out = stdout_of(&["verify", "--suite", suite]);
        assert!(!out.contains("FAIL"), "{suite}: {out}");
        assert!(out.trim_end().ends_with("checks passed"), "{suite}");
    }
}
