//! Deterministic structured-text reports.  A report is a sequence of
//! sections holding `key: value` lines; every numeric claim carries one of
//! the provenance flags EXACT, CERTIFIED_INTERVAL or HEURISTIC so readers
//! can audit where each number came from.  Reports never contain
//! wall-clock data or filesystem paths: rerunning a job with the same
//! inputs and seed reproduces the bytes exactly.  Timing goes to stderr,
//! outside any document.

use std::fmt::Display;
use std::fmt::Write as _;

use dyndeg_core::interval::Interval;
use dyndeg_core::intmat::IMat;

pub const EXACT: &str = "EXACT";
pub const CERTIFIED: &str = "CERTIFIED_INTERVAL";
pub const HEURISTIC: &str = "HEURISTIC";

#[derive(Clone, Debug)]
pub struct Doc {
    out: String,
}

impl Doc {
    /// Start a document.  The seed goes in the header because every random
    /// choice downstream must flow from it.
    pub fn new(kind: &str, seed: u64) -> Self {
        let mut out = String::from("dyndeg-report v1\n");
        let _ = writeln!(out, "kind: {kind}");
        let _ = writeln!(out, "seed: {seed}");
        Doc { out }
    }

    pub fn section(&mut self, name: &str) {
        let _ = writeln!(self.out, "\n[{name}]");
    }

    pub fn kv(&mut self, key: &str, value: impl Display) {
        let _ = writeln!(self.out, "{key}: {value}");
    }

    pub fn kv_flagged(&mut self, key: &str, value: impl Display, flag: &str) {
        let _ = writeln!(self.out, "{key}: {value} ({flag})");
    }

    pub fn interval(&mut self, key: &str, iv: &Interval) {
        self.kv_flagged(key, fmt_interval(iv), CERTIFIED);
    }

    pub fn line(&mut self, text: impl Display) {
        let _ = writeln!(self.out, "{text}");
    }

    pub fn check(&mut self, label: &str, ok: bool) {
        self.line(format!("{label}: {}", verdict(ok)));
    }

    pub fn finish(mut self, status: &str) -> String {
        self.section("result");
        self.kv("status", status);
        self.out
    }
}

pub fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Shortest round-tripping decimal form; deterministic for equal bits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x}")
}

pub fn fmt_interval(iv: &Interval) -> String {
    format!("[{}, {}]", fmt_f64(iv.lo), fmt_f64(iv.hi))
}

pub fn fmt_mat(m: &IMat) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| {
            let cells: Vec<String> = m.row(i).iter().map(|c| c.to_string()).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}
