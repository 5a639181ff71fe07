//! Complex polynomials in ascending-coefficient form and their roots.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Trailing coefficients with `|c| <= DROP_TOL * max |c_k|` are dropped.
pub const DROP_TOL: f64 = 1e-13;

/// Iteration cap for the simultaneous root iteration.
pub const ABERTH_MAX_ITER: usize = 500;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Polynomial `c_0 + c_1 z + ... + c_d z^d`.
///
/// The zero polynomial is stored as `[0]` and reports degree 0.
#[derive(Clone, PartialEq)]
pub struct ComplexPolynomial {
    coeffs: Vec<Complex64>,
}

impl fmt::Debug for ComplexPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.coeffs).finish()
    }
}

impl ComplexPolynomial {
    /// Builds a polynomial, trimming trailing coefficients below [`DROP_TOL`]
    /// relative to the largest one.
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        let mut p = Self { coeffs };
        p.trim(DROP_TOL);
        p
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![ZERO] }
    }

    /// The polynomial `z`.
    pub fn identity() -> Self {
        Self::new(vec![ZERO, ONE])
    }

    /// `a + b z`.
    pub fn linear(a: Complex64, b: Complex64) -> Self {
        Self::new(vec![a, b])
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        roots.iter().fold(Self::constant(ONE), |acc, &r| &acc * &Self::linear(-r, ONE))
    }

    fn trim(&mut self, rel_tol: f64) {
        let scale = self.coeffs.iter().fold(0.0_f64, |m, c| m.max(c.norm()));
        while self.coeffs.len() > 1 && self.coeffs.last().map_or(false, |c| c.norm() <= rel_tol * scale) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.coeffs.push(ZERO);
        }
        if scale == 0.0 {
            self.coeffs.truncate(1);
        }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == ZERO)
    }

    pub fn leading(&self) -> Complex64 {
        *self.coeffs.last().expect("nonempty")
    }

    /// Largest coefficient modulus.
    pub fn norm_inf(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.norm()))
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
    }

    /// `(p(z), p'(z))` in one Horner pass.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = ZERO;
        let mut dp = ZERO;
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        self.scale(ONE / self.leading())
    }

    /// Synthetic division by `(z - root)`: returns quotient and remainder.
    pub fn deflate(&self, root: Complex64) -> (Self, Complex64) {
        let d = self.degree();
        if d == 0 {
            return (Self::zero(), self.coeffs[0]);
        }
        let mut q = vec![ZERO; d];
        let mut carry = ZERO;
        for k in (0..=d).rev() {
            let v = self.coeffs[k] + carry * root;
            if k == 0 {
                return (Self { coeffs: q }, v);
            }
            q[k - 1] = v;
            carry = v;
        }
        unreachable!()
    }

    /// `z^d conj(p(1/conj z))` where `d = len - 1`: the coefficient list reversed
    /// and conjugated, padded to `len` entries.
    pub fn reflected(&self, len: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.resize(len.max(c.len()), ZERO);
        Self::new(c.iter().rev().map(|z| z.conj()).collect())
    }
}

impl Add for &ComplexPolynomial {
    type Output = ComplexPolynomial;
    fn add(self, rhs: Self) -> ComplexPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ComplexPolynomial::new(
            (0..n)
                .map(|k| self.coeffs.get(k).copied().unwrap_or(ZERO) + rhs.coeffs.get(k).copied().unwrap_or(ZERO))
                .collect(),
        )
    }
}

impl Sub for &ComplexPolynomial {
    type Output = ComplexPolynomial;
    fn sub(self, rhs: Self) -> ComplexPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &ComplexPolynomial {
    type Output = ComplexPolynomial;
    fn neg(self) -> ComplexPolynomial {
        ComplexPolynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &ComplexPolynomial {
    type Output = ComplexPolynomial;
    fn mul(self, rhs: Self) -> ComplexPolynomial {
        let mut out = vec![ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ComplexPolynomial::new(out)
    }
}

/// All `deg p` roots of `p`.
///
/// Aberth-Ehrlich simultaneous iteration, falling back to the eigenvalues of
/// the companion matrix when the iteration stagnates; either way the roots are
/// finished with a few Newton steps.
pub fn poly_roots(p: &ComplexPolynomial) -> Result<Vec<Complex64>> {
    if p.is_zero() {
        return Err(Error::DegenerateInput);
    }
    let d = p.degree();
    match d {
        0 => return Ok(Vec::new()),
        1 => return Ok(vec![-p.coeffs[0] / p.coeffs[1]]),
        _ => {}
    }
    let monic = p.monic();
    let mut roots = aberth(&monic).unwrap_or_else(|| companion_roots(&monic));
    for r in roots.iter_mut() {
        *r = newton_polish(&monic, *r);
    }
    Ok(roots)
}

fn aberth(p: &ComplexPolynomial) -> Option<Vec<Complex64>> {
    let d = p.degree();
    let c = p.coeffs();
    // Fujiwara-type bound on the root moduli
    let bound = (1..=d)
        .map(|k| (c[d - k].norm() / c[d].norm()).powf(1.0 / k as f64))
        .fold(0.0_f64, f64::max)
        * 2.0;
    let radius = (bound / 2.0).max(1e-3);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * k as f64 / d as f64 + 0.4))
        .collect();
    let abs_coeffs: Vec<f64> = c.iter().map(|x| x.norm()).collect();
    for _ in 0..ABERTH_MAX_ITER {
        let mut done = true;
        for k in 0..d {
            let (pv, dpv) = p.eval_with_derivative(z[k]);
            let r = z[k].norm();
            let floor = 8.0 * f64::EPSILON * abs_coeffs.iter().rev().fold(0.0, |acc, &a| acc * r + a);
            if pv.norm() <= floor {
                continue;
            }
            let ratio = pv / dpv;
            let repulsion: Complex64 = (0..d).filter(|&j| j != k).map(|j| ONE / (z[k] - z[j])).sum();
            let step = ratio / (ONE - ratio * repulsion);
            if !(step.re.is_finite() && step.im.is_finite()) {
                return None;
            }
            z[k] -= step;
            if step.norm() > 4.0 * f64::EPSILON * z[k].norm() {
                done = false;
            }
        }
        if done {
            return Some(z);
        }
    }
    None
}

fn companion_roots(p: &ComplexPolynomial) -> Vec<Complex64> {
    let d = p.degree();
    let c = p.coeffs();
    let mut m = DMatrix::<Complex64>::zeros(d, d);
    for i in 1..d {
        m[(i, i - 1)] = ONE;
    }
    for i in 0..d {
        m[(i, d - 1)] = -c[i] / c[d];
    }
    m.eigenvalues()
        .map(|ev| ev.iter().copied().collect())
        .unwrap_or_else(|| vec![ZERO; d])
}

fn newton_polish(p: &ComplexPolynomial, mut z: Complex64) -> Complex64 {
    for _ in 0..3 {
        let (pv, dpv) = p.eval_with_derivative(z);
        if dpv == ZERO {
            break;
        }
        let next = z - pv / dpv;
        if p.eval(next).norm() < pv.norm() {
            z = next;
        } else {
            break;
        }
    }
    z
}
