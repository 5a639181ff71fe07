use std::cmp::Ordering;

use num_complex::Complex64;

use super::{unimodularity_check, RationalFunction};
use crate::error::{Error, Result};
use crate::numerics::{is_psd, poly_roots, ComplexPolynomial};
use crate::pick::{schwarz_pick_matrix, PSD_TOL};
use crate::problem::{BoundaryData, UnitPoint};

/// Numerator and denominator roots closer than this are cancelled, and a pole
/// matches a zero `a` when `|p conj(a) - 1|` is below it.
pub const CANCEL_TOL: f64 = 1e-7;
/// Zeros must satisfy `|a| <= 1 - INTERIOR_MARGIN`.
pub const INTERIOR_MARGIN: f64 = 1e-12;

const SELF_INVERSIVE_TOL: f64 = 1e-7;
// zeros this close to the origin may lack a (huge) reflected pole
const ORIGIN_TOL: f64 = 1e-6;

/// `c * prod (z - a_i) / (1 - conj(a_i) z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlaschkeFactorization {
    constant: UnitPoint,
    zeros: Vec<Complex64>,
}

impl BlaschkeFactorization {
    pub fn new(constant: UnitPoint, zeros: Vec<Complex64>) -> Result<Self> {
        if let Some(a) = zeros.iter().find(|a| a.norm() > 1.0 - INTERIOR_MARGIN) {
            return Err(Error::NotBlaschke(format!("zero {a} is not inside the open disk")));
        }
        Ok(Self { constant, zeros })
    }

    pub fn constant(&self) -> UnitPoint {
        self.constant
    }

    pub fn zeros(&self) -> &[Complex64] {
        &self.zeros
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    /// Product form multiplied out into a polynomial ratio.
    pub fn expand(&self) -> RationalFunction {
        let one = Complex64::new(1.0, 0.0);
        let num = ComplexPolynomial::from_roots(&self.zeros).scale(self.constant.value());
        let den = self
            .zeros
            .iter()
            .fold(ComplexPolynomial::constant(one), |acc, a| &acc * &ComplexPolynomial::linear(one, -a.conj()));
        RationalFunction::new(num, den).expect("denominator has constant term 1")
    }

    /// Evaluates the product form directly.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.zeros
            .iter()
            .fold(self.constant.value(), |acc, a| acc * (z - a) / (1.0 - a.conj() * z))
    }
}

/// Recovers the product form of `f`, or names the first criterion it fails.
///
/// Common numerator/denominator roots are cancelled first; the remaining
/// zeros must lie in the open disk, every pole must be the reflection
/// `1 / conj(a)` of a zero, and the reduced coefficients must be
/// self-inversive: `d_i = lambda * conj(n_{q-i})` with `|lambda| = 1`.
pub fn factorize(f: &RationalFunction) -> Result<BlaschkeFactorization> {
    let mut num = f.numerator().clone();
    let mut den = f.denominator().clone();
    if num.is_zero() {
        return Err(Error::NotBlaschke("numerator vanishes identically".into()));
    }
    let mut zeros = poly_roots(&num)?;
    let mut poles = poly_roots(&den)?;

    let mut k = 0;
    while k < zeros.len() {
        let z = zeros[k];
        let hit = poles
            .iter()
            .enumerate()
            .map(|(j, p)| (j, (p - z).norm()))
            .filter(|&(j, d)| d <= CANCEL_TOL * z.norm().max(1.0) && !is_reflection_pair(z, poles[j]))
            .min_by(|a, b| a.1.total_cmp(&b.1));
        match hit {
            Some((j, _)) => {
                let r = 0.5 * (z + poles[j]);
                num = num.deflate(r).0;
                den = den.deflate(r).0;
                zeros.swap_remove(k);
                poles.swap_remove(j);
            }
            None => k += 1,
        }
    }

    if let Some(a) = zeros.iter().find(|a| a.norm() > 1.0 - INTERIOR_MARGIN) {
        return Err(Error::NotBlaschke(format!("zero {a} is not inside the open disk")));
    }
    let mut matched = vec![false; zeros.len()];
    for p in &poles {
        let hit = zeros
            .iter()
            .enumerate()
            .filter(|&(i, _)| !matched[i])
            .map(|(i, a)| (i, (p * a.conj() - 1.0).norm()))
            .filter(|&(_, d)| d <= CANCEL_TOL)
            .min_by(|a, b| a.1.total_cmp(&b.1));
        match hit {
            Some((i, _)) => matched[i] = true,
            None => return Err(Error::NotBlaschke(format!("pole {p} is not the reflection of a zero"))),
        }
    }
    if let Some((i, _)) = matched.iter().enumerate().find(|&(i, m)| !m && zeros[i].norm() > ORIGIN_TOL) {
        return Err(Error::NotBlaschke(format!("zero {} has no reflected pole", zeros[i])));
    }

    let q = num.degree().max(den.degree());
    let a = padded(&num, q + 1);
    let b = padded(&den, q + 1);
    let r: Vec<Complex64> = (0..=q).map(|i| a[q - i].conj()).collect();
    let rr: f64 = r.iter().map(|x| x.norm_sqr()).sum();
    let lambda: Complex64 = b.iter().zip(&r).map(|(bi, ri)| bi * ri.conj()).sum::<Complex64>() / rr;
    let scale = b.iter().fold(0.0_f64, |m, x| m.max(x.norm()));
    let resid = b
        .iter()
        .zip(&r)
        .map(|(bi, ri)| (bi - lambda * ri).norm())
        .fold(0.0, f64::max);
    if resid > SELF_INVERSIVE_TOL * scale || (lambda.norm() - 1.0).abs() > SELF_INVERSIVE_TOL {
        return Err(Error::NotBlaschke("coefficients are not self-inversive".into()));
    }

    let c = num.leading() / den.coeffs()[0];
    zeros.sort_by(|x, y| {
        x.arg()
            .partial_cmp(&y.arg())
            .unwrap_or(Ordering::Equal)
            .then(x.norm().total_cmp(&y.norm()))
    });
    BlaschkeFactorization::new(UnitPoint::from_angle(c.arg()), zeros)
}

/// A zero just inside the circle and its reflected pole can sit within the
/// cancellation distance of each other; they are told apart from a genuine
/// common root by `z conj(a) = 1` holding far more tightly than `z = a`.
fn is_reflection_pair(zero: Complex64, pole: Complex64) -> bool {
    zero.norm() < 1.0 && pole.norm() > 1.0 && (pole * zero.conj() - 1.0).norm() < 1e-3 * (pole - zero).norm()
}

fn padded(p: &ComplexPolynomial, len: usize) -> Vec<Complex64> {
    let mut v = p.coeffs().to_vec();
    v.resize(len, Complex64::new(0.0, 0.0));
    v
}

/// Blaschke test through the boundary Schwarz-Pick matrix at the problem's
/// nodes: `true` iff `f` is unimodular and that matrix is positive semidefinite.
pub fn is_blaschke_certificate(f: &RationalFunction, data: &BoundaryData) -> Result<bool> {
    if unimodularity_check(f, 1024) > super::WINDING_PRECONDITION {
        return Ok(false);
    }
    let points: Vec<Complex64> = data.nodes().iter().map(|p| p.value()).collect();
    let h = schwarz_pick_matrix(f, &points)?;
    Ok(is_psd(&h, PSD_TOL))
}
