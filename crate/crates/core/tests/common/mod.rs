#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

use boundary_blaschke::blaschke::RationalFunction;
use boundary_blaschke::pick::{p_entry, pick_matrix};
use boundary_blaschke::problem::{BoundaryData, GammaTuple};
use num_complex::Complex64;

/// One CLI invocation with a stored expected transcript.
pub struct GoldenCase {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub exit: i32,
}

pub const GOLDEN_CASES: &[GoldenCase] = &[
    GoldenCase { name: "fixed3_solve", args: &["solve", "fixed3.json", "--gamma", "2,2"], exit: 0 },
    GoldenCase { name: "fixed3_inadmissible", args: &["solve", "fixed3.json", "--gamma", "1,1"], exit: 2 },
    GoldenCase { name: "fixed3_reduce", args: &["reduce", "fixed3.json"], exit: 0 },
    GoldenCase { name: "fixed3_trace", args: &["trace", "fixed3.json", "--gamma", "2,2", "--samples", "64"], exit: 0 },
    GoldenCase { name: "fixed3_mindegree", args: &["mindegree", "fixed3.json"], exit: 0 },
    GoldenCase { name: "generic5_solve", args: &["solve", "generic5.json"], exit: 0 },
    GoldenCase { name: "generic5_reduce", args: &["reduce", "generic5.json"], exit: 0 },
    GoldenCase { name: "generic5_trace", args: &["trace", "generic5.json", "--samples", "64"], exit: 0 },
    GoldenCase { name: "generic5_mindegree", args: &["mindegree", "generic5.json"], exit: 0 },
    GoldenCase { name: "generic5_short_gamma", args: &["solve", "generic5.json", "--gamma", "1,2"], exit: 3 },
    GoldenCase { name: "reversed4_solve", args: &["solve", "reversed4.json"], exit: 0 },
    GoldenCase { name: "reversed4_reduce", args: &["reduce", "reversed4.json"], exit: 4 },
    GoldenCase { name: "reversed4_trace", args: &["trace", "reversed4.json", "--samples", "32"], exit: 0 },
    GoldenCase { name: "reversed4_mindegree", args: &["mindegree", "reversed4.json"], exit: 0 },
    GoldenCase { name: "constant3_solve", args: &["solve", "constant3.json"], exit: 0 },
    GoldenCase { name: "constant3_reduce", args: &["reduce", "constant3.json"], exit: 3 },
    GoldenCase { name: "constant3_trace", args: &["trace", "constant3.json", "--samples", "16"], exit: 0 },
    GoldenCase { name: "constant3_mindegree", args: &["mindegree", "constant3.json"], exit: 0 },
    GoldenCase { name: "fixed4_solve", args: &["solve", "fixed4.json", "--gamma", "3,3,3"], exit: 0 },
    GoldenCase { name: "fixed4_reduce", args: &["reduce", "fixed4.json"], exit: 0 },
    GoldenCase { name: "fixed4_trace", args: &["trace", "fixed4.json", "--gamma", "3,3,3", "--samples", "64"], exit: 0 },
    GoldenCase { name: "fixed4_mindegree", args: &["mindegree", "fixed4.json"], exit: 0 },
    GoldenCase { name: "duplicate_solve", args: &["solve", "duplicate.json"], exit: 3 },
];

pub fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

/// Runs the binary from `tests/data` and returns `(exit, transcript)`.
pub fn run_cli(bin: &Path, args: &[&str]) -> (i32, String) {
    let out = Command::new(bin)
        .args(args)
        .current_dir(manifest_dir().join("tests/data"))
        .output()
        .expect("binary runs");
    let code = out.status.code().unwrap_or(-1);
    let transcript = format!(
        "exit: {code}\n--- stdout\n{}--- stderr\n{}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    (code, transcript)
}

/// Checks one golden case; with `UPDATE_GOLDEN` set the transcript is
/// rewritten instead.
pub fn check_golden(bin: &Path, case: &GoldenCase) -> Result<(), String> {
    let (code, first) = run_cli(bin, case.args);
    let (_, second) = run_cli(bin, case.args);
    if first != second {
        return Err(format!("{}: reruns differ", case.name));
    }
    if code != case.exit {
        return Err(format!("{}: exit {code}, expected {}\n{first}", case.name, case.exit));
    }
    let path = manifest_dir().join("tests/golden").join(format!("{}.txt", case.name));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &first).map_err(|e| e.to_string())?;
        return Ok(());
    }
    let expected = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if expected != first {
        return Err(format!("{}: output differs from {}", case.name, path.display()));
    }
    Ok(())
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `Delta_i = det(P with column i replaced by p_n) / det(P)`.
pub fn cramer_delta(data: &BoundaryData, gamma: &GammaTuple) -> Vec<Complex64> {
    let p = pick_matrix(data, gamma).unwrap().to_general();
    let k = p.rows();
    let pn: Vec<Complex64> = (0..k).map(|i| p_entry(data, i, k)).collect();
    let det = p.det();
    (0..k).map(|i| p.with_column(i, &pn).det() / det).collect()
}

/// `|d/dtheta f(e^{i theta})|` at `t` by the five-point central difference
/// with step `h`; on the circle this equals `|f'(t)|`.
pub fn fd_derivative(f: &RationalFunction, t: Complex64, h: f64) -> f64 {
    let theta = t.arg();
    let at = |k: f64| f.eval(Complex64::from_polar(1.0, theta + k * h)).unwrap();
    ((at(-2.0) - 8.0 * at(-1.0) + 8.0 * at(1.0) - at(2.0)) / (12.0 * h)).norm()
}

/// Points strictly inside the disk, away from the origin-only special case.
pub fn disk_points(count: usize, seed: u64) -> Vec<Complex64> {
    (0..count)
        .map(|k| {
            let a = 0.37 + 2.399963 * (k as f64 + seed as f64);
            let r = 0.1 + 0.8 * ((k as f64 * 0.618034 + seed as f64 * 0.3) % 1.0);
            Complex64::from_polar(r, a)
        })
        .collect()
}
