use std::f64::consts::{FRAC_PI_4, TAU};

use num_complex::Complex64;

use super::{unimodularity_check, RationalFunction};
use crate::error::{Error, Result};
use crate::numerics::ComplexPolynomial;

/// Largest unimodularity deviation accepted by [`winding_degree`].
pub const WINDING_PRECONDITION: f64 = 1e-6;

const COARSE_PER_DEGREE: usize = 512;
const MAX_DEPTH: usize = 60;
const GOLDEN_ITERS: usize = 80;

#[derive(Clone, Copy)]
struct Sample {
    value: Complex64,
    // |d arg f(e^{i theta}) / d theta|
    slope: f64,
}

fn sample(f: &RationalFunction, theta: f64) -> Result<Sample> {
    let z = Complex64::from_polar(1.0, theta);
    let (v, dv) = f.eval_with_derivative(z)?;
    Ok(Sample { value: v, slope: (z * dv / v).re.abs() })
}

/// Winding number of `theta -> f(e^{i theta})` about the origin.
///
/// The argument is accumulated over a grid that starts uniform, is seeded
/// densely around every sharp dip of `|N|` and `|D|` on the circle (zeros or
/// poles close to the circle), and is then bisected until each step turns the
/// argument by less than `pi/4`, both as observed and as bounded by the local
/// angular speed.
pub fn winding_degree(f: &RationalFunction) -> Result<i64> {
    let deviation = unimodularity_check(f, 1024);
    if !(deviation <= WINDING_PRECONDITION) {
        return Err(Error::NotUnimodular { deviation });
    }
    let m = COARSE_PER_DEGREE * (f.formal_degree() + 1);
    let mut grid: Vec<f64> = (0..m).map(|k| TAU * k as f64 / m as f64).collect();
    for p in [f.numerator(), f.denominator()] {
        if p.degree() > 0 {
            for theta in dip_angles(p, m) {
                grid.push(theta);
                for j in 1..=15 {
                    let h = 10f64.powi(-j);
                    grid.push((theta + h).rem_euclid(TAU));
                    grid.push((theta - h).rem_euclid(TAU));
                }
            }
        }
    }
    grid.sort_by(f64::total_cmp);
    grid.dedup_by(|b, a| *b - *a <= 1e-15);

    let samples = grid.iter().map(|&t| sample(f, t)).collect::<Result<Vec<_>>>()?;
    let mut total = 0.0;
    for k in 0..grid.len() {
        let (a, b) = if k + 1 < grid.len() { (grid[k], grid[k + 1]) } else { (grid[k], grid[0] + TAU) };
        let sb = if k + 1 < grid.len() { samples[k + 1] } else { samples[0] };
        total += segment(f, a, samples[k], b, sb, 0)?;
    }
    Ok((total / TAU).round() as i64)
}

fn segment(f: &RationalFunction, a: f64, sa: Sample, b: f64, sb: Sample, depth: usize) -> Result<f64> {
    let turn = (sb.value / sa.value).arg();
    let mid = 0.5 * (a + b);
    let sm = sample(f, mid)?;
    let speed = sa.slope.max(sb.slope).max(sm.slope);
    if depth >= MAX_DEPTH || (turn.abs() < FRAC_PI_4 && (b - a) * speed < FRAC_PI_4) {
        return Ok(turn);
    }
    Ok(segment(f, a, sa, mid, sm, depth + 1)? + segment(f, mid, sm, b, sb, depth + 1)?)
}

/// Angles of sharp local minima of `|p(e^{i theta})|` on an `m`-point grid,
/// each refined by golden-section search.
fn dip_angles(p: &ComplexPolynomial, m: usize) -> Vec<f64> {
    let h = TAU / m as f64;
    let g = |theta: f64| p.eval(Complex64::from_polar(1.0, theta)).norm();
    let v: Vec<f64> = (0..m).map(|k| g(h * k as f64)).collect();
    let mut out = Vec::new();
    for k in 0..m {
        let prev = v[(k + m - 1) % m];
        let next = v[(k + 1) % m];
        if v[k] <= prev && v[k] <= next && v[k] < 0.9 * prev.max(next) {
            let centre = h * k as f64;
            out.push(golden_min(&g, centre - h, centre + h).rem_euclid(TAU));
        }
    }
    out
}

fn golden_min(g: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - r * (hi - lo);
    let mut x2 = lo + r * (hi - lo);
    let (mut g1, mut g2) = (g(x1), g(x2));
    for _ in 0..GOLDEN_ITERS {
        if g1 <= g2 {
            hi = x2;
            x2 = x1;
            g2 = g1;
            x1 = hi - r * (hi - lo);
            g1 = g(x1);
        } else {
            lo = x1;
            x1 = x2;
            g1 = g2;
            x2 = lo + r * (hi - lo);
            g2 = g(x2);
        }
    }
    0.5 * (lo + hi)
}
