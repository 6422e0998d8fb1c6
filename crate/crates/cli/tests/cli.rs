//! End-to-end checks of the command-line surface: output shapes, exit codes,
//! JSON round-trips, and the π digit-cache file.

use std::process::Command;

use certrig::exact::{format_fixed, parse_rational, pow10, rat, rational_from_decimal};
use num_traits::Signed;
use certrig::piecewise::PiecewiseApprox;
use certrig::pointwise::sin_point;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_certrig"));
    c.env_remove("CERTRIG_PI_CACHE");
    c
}

fn run_ok(args: &[&str]) -> String {
    let out = bin().args(args).output().expect("spawn certrig");
    assert!(
        out.status.success(),
        "`certrig {}` failed: {}",
        args.join(" "),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf8 stdout")
}

fn value_line(output: &str) -> String {
    output
        .lines()
        .find(|l| !l.starts_with('#'))
        .expect("a value line")
        .to_string()
}

#[test]
fn sin_output_is_the_formatted_library_value() {
    let out = run_ok(&["sin", "--y", "5/2", "--r", "12"]);
    assert!(out.starts_with("# sin y=5/2 r=12\n"));
    let expect = format_fixed(&sin_point(&rat(5, 2), 12).unwrap(), 14).to_string();
    assert_eq!(value_line(&out), expect);

    let short = run_ok(&["sin", "--y", "5/2", "--r", "12", "--digits", "6"]);
    assert_eq!(value_line(&short), "0.598472");
}

#[test]
fn negative_and_fraction_arguments_parse() {
    let out = run_ok(&["cos", "--y", "-5/2", "--r", "10"]);
    let v = rational_from_decimal(&value_line(&out)).unwrap();
    let expect = rational_from_decimal("-0.801143615547").unwrap();
    assert!((v - expect).abs() < rat(2, 1) * pow10(-10));
}

#[test]
fn usage_errors_exit_two_and_domain_errors_exit_one() {
    let usage = bin().args(["sin", "--y", "1"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
    let unknown = bin().args(["frobnicate"]).output().unwrap();
    assert_eq!(unknown.status.code(), Some(2));

    let domain = bin().args(["sin", "--y", "0", "--r", "10"]).output().unwrap();
    assert_eq!(domain.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&domain.stderr).contains("error"));

    let bad_r = bin().args(["sin", "--y", "1", "--r", "0"]).output().unwrap();
    assert_eq!(bad_r.status.code(), Some(1));

    let help = bin().args(["--help"]).output().unwrap();
    assert_eq!(help.status.code(), Some(0));
}

#[test]
fn piecewise_json_reloads_and_evaluates_identically() {
    let out = run_ok(&[
        "piecewise", "--a", "-3.1416", "--b", "3.1416", "--r", "12", "--out", "json",
    ]);
    let loaded = PiecewiseApprox::from_json(out.trim()).unwrap();
    let built = certrig::piecewise::piecewise_sin(
        &parse_rational("-3.1416").unwrap(),
        &parse_rational("3.1416").unwrap(),
        12,
    )
    .unwrap();
    assert_eq!(loaded.pieces.len(), built.pieces.len());
    for x in ["-3.1416", "-0.125", "0", "2.5", "3.1416"] {
        let x = parse_rational(x).unwrap();
        assert_eq!(loaded.eval(&x).unwrap(), built.eval(&x).unwrap());
    }
    // the JSON carries its inputs (header-echo invariant for json output)
    assert!(out.contains("\"func\":\"sin\""));
    assert!(out.contains("\"r\":12"));
}

#[test]
fn piecewise_summary_counts_pieces() {
    let out = run_ok(&[
        "piecewise", "--a", "-3.1416", "--b", "3.1416", "--r", "12", "--out", "summary",
    ]);
    assert!(out.contains("8 pieces"));
    assert!(out.contains("breakpoints:"));
}

#[test]
fn expanded_output_lists_coefficients() {
    let out = run_ok(&[
        "piecewise", "--a", "0.9", "--b", "1.2", "--r", "8", "--out", "expanded",
    ]);
    assert!(out.contains("x^0:"));
    assert!(out.contains("x^10:"));
}

#[test]
fn plot_rows_match_samples_and_increase() {
    let out = run_ok(&[
        "plot", "--a", "-1", "--b", "2", "--r", "8", "--samples", "25",
    ]);
    let rows: Vec<&str> = out.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows.len(), 25);
    let mut prev: Option<certrig::Rational> = None;
    for row in rows {
        let (x, v) = row.split_once(',').expect("two columns");
        let x = rational_from_decimal(x).unwrap();
        let _ = rational_from_decimal(v).unwrap();
        if let Some(p) = prev {
            assert!(x > p, "x column must increase strictly");
        }
        prev = Some(x);
    }
}

#[test]
fn degree_table_csv_shape() {
    let out = run_ok(&["degree-table", "--rs", "10,20", "--out", "csv"]);
    let mut lines = out.lines().filter(|l| !l.starts_with('#'));
    assert_eq!(
        lines.next().unwrap(),
        "r,n_triple,deg_triple,n_product,deg_product,n_direct"
    );
    assert_eq!(lines.next().unwrap(), "10,9,27,11,22,12");
    assert_eq!(lines.next().unwrap(), "20,15,45,18,36,20");
}

#[test]
fn verify_reports_pass() {
    let out = run_ok(&[
        "verify", "--a", "-2", "--b", "2", "--r", "9", "--samples", "64", "--func", "sin",
    ]);
    assert!(out.contains("max_error"));
    assert!(out.contains("PASS (tolerance 1e-9)"));
}

#[test]
fn pi_command_and_cache_file_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("pi_cache.txt");
    let cache_str = cache.to_str().unwrap();

    // first run computes and writes the cache
    let out1 = bin()
        .args(["pi", "--digits", "42"])
        .env("CERTRIG_PI_CACHE", cache_str)
        .output()
        .unwrap();
    assert!(out1.status.success());
    let text1 = String::from_utf8(out1.stdout).unwrap();
    assert!(value_line(&text1).starts_with("3.14159265358979323846"));
    let stored = std::fs::read_to_string(&cache).unwrap();
    let mut lines = stored.lines();
    let count: u32 = lines.next().unwrap().parse().unwrap();
    assert!(count >= 42);
    assert!(lines.next().unwrap().starts_with("3.141592653589793"));

    // second run is seeded by the file and must print identical digits
    let out2 = bin()
        .args(["pi", "--digits", "42"])
        .env("CERTRIG_PI_CACHE", cache_str)
        .output()
        .unwrap();
    assert!(out2.status.success());
    assert_eq!(value_line(&String::from_utf8(out2.stdout).unwrap()), value_line(&text1));

    // a corrupted cache is ignored with a warning, output unchanged
    std::fs::write(&cache, "40\n3.24159265358979323846264338327950288420\n").unwrap();
    let out3 = bin()
        .args(["pi", "--digits", "42"])
        .env("CERTRIG_PI_CACHE", cache_str)
        .output()
        .unwrap();
    assert!(out3.status.success());
    assert_eq!(value_line(&String::from_utf8(out3.stdout).unwrap()), value_line(&text1));
    assert!(String::from_utf8_lossy(&out3.stderr).contains("warning"));
}

#[test]
fn run_function_writes_to_caller_buffer() {
    let mut buf = Vec::new();
    let code = certrig_cli::run(
        ["certrig", "pi", "--digits", "10"].map(String::from),
        &mut buf,
    );
    assert_eq!(code, 0);
    assert!(String::from_utf8(buf).unwrap().contains("3.141592654"));
}
