//! End-to-end checks of the installed binary: exit-code contract, report
//! bytes on stdout, and stderr-only timing.

use std::path::Path;
use std::process::{Command, Output};

fn dyndeg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dyndeg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn jobs(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("jobs")
        .join(name)
        .display()
        .to_string()
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

#[test]
fn successful_job_prints_report_and_exits_zero() {
    let out = dyndeg(&["degrees", &jobs("cremona-degrees.toml")]);
    assert_eq!(out.status.code(), Some(0));
    let golden = include_str!("golden/cremona_degrees.txt");
    assert_eq!(String::from_utf8_lossy(&out.stdout), golden);
    // timing and diagnostics stay off the report stream
    assert!(String::from_utf8_lossy(&out.stderr).contains("finished in"));
}

#[test]
fn violated_property_exits_two() {
    let out = dyndeg(&["lattice", &fixture("violated-lattice.toml")]);
    assert_eq!(out.status.code(), Some(2));
    let doc = String::from_utf8_lossy(&out.stdout);
    assert!(doc.contains("verdict: VIOLATED"));
    assert!(doc.contains("status: FAIL"));
}

#[test]
fn truncated_run_exits_three() {
    let out = dyndeg(&["degrees", &fixture("truncating-degrees.toml")]);
    assert_eq!(out.status.code(), Some(3));
    let doc = String::from_utf8_lossy(&out.stdout);
    assert!(doc.contains("truncated: yes"));
    assert!(doc.contains("status: TRUNCATED"));
}

#[test]
fn bad_input_exits_four() {
    // missing file
    let out = dyndeg(&["degrees", "/nonexistent/job.toml"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(out.stdout.is_empty());

    // kind does not match the subcommand
    let out = dyndeg(&["monomial", &jobs("cremona-degrees.toml")]);
    assert_eq!(out.status.code(), Some(4));

    // unknown suite
    let out = dyndeg(&["suite", "no-such-suite"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("available"));
}

#[test]
fn suite_reruns_are_byte_identical_across_processes() {
    let first = dyndeg(&["suite", "product-formula", "--seed", "9"]);
    let second = dyndeg(&["suite", "product-formula", "--seed", "9"]);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn out_flag_writes_the_same_bytes() {
    let dir = std::env::temp_dir().join("dyndeg-out-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.txt");
    let out = dyndeg(&[
        "monomial",
        &jobs("fibonacci-monomial.toml"),
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let written = std::fs::read(&path).unwrap();
    assert_eq!(written, out.stdout);
    std::fs::remove_file(&path).ok();
}
