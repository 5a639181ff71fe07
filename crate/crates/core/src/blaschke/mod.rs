//! Rational functions that are unimodular on the circle: evaluation, the
//! winding-number degree, and factorization into Blaschke form.

mod factor;
mod winding;

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::ComplexPolynomial;

pub use factor::{factorize, is_blaschke_certificate, BlaschkeFactorization, CANCEL_TOL, INTERIOR_MARGIN};
pub use winding::{winding_degree, WINDING_PRECONDITION};

/// Denominators with `|D(z)|` at or below this multiple of `sum |d_k| |z|^k`
/// are treated as vanishing.
pub const POLE_TOL: f64 = 1e-13;

/// `N(z) / D(z)` with complex polynomial numerator and denominator.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalFunction {
    numerator: ComplexPolynomial,
    denominator: ComplexPolynomial,
}

impl RationalFunction {
    pub fn new(numerator: ComplexPolynomial, denominator: ComplexPolynomial) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::DegenerateInput);
        }
        Ok(Self { numerator, denominator })
    }

    pub fn constant(c: Complex64) -> Self {
        Self {
            numerator: ComplexPolynomial::constant(c),
            denominator: ComplexPolynomial::constant(Complex64::new(1.0, 0.0)),
        }
    }

    /// `f(z) = z`.
    pub fn identity() -> Self {
        Self {
            numerator: ComplexPolynomial::identity(),
            denominator: ComplexPolynomial::constant(Complex64::new(1.0, 0.0)),
        }
    }

    /// The single factor `(z - a) / (1 - conj(a) z)`.
    pub fn blaschke_factor(a: Complex64) -> Self {
        let one = Complex64::new(1.0, 0.0);
        Self {
            numerator: ComplexPolynomial::linear(-a, one),
            denominator: ComplexPolynomial::linear(one, -a.conj()),
        }
    }

    pub fn numerator(&self) -> &ComplexPolynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &ComplexPolynomial {
        &self.denominator
    }

    /// Formal degree `max(deg N, deg D)`; common factors are not removed.
    pub fn formal_degree(&self) -> usize {
        self.numerator.degree().max(self.denominator.degree())
    }

    fn check_pole(&self, z: Complex64, d: Complex64) -> Result<()> {
        let r = z.norm();
        let scale = self
            .denominator
            .coeffs()
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * r + c.norm());
        if d.norm() <= POLE_TOL * scale {
            return Err(Error::PoleAtPoint { re: z.re, im: z.im });
        }
        Ok(())
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let d = self.denominator.eval(z);
        self.check_pole(z, d)?;
        Ok(self.numerator.eval(z) / d)
    }

    /// `(f(z), f'(z))`.
    pub fn eval_with_derivative(&self, z: Complex64) -> Result<(Complex64, Complex64)> {
        let (n, dn) = self.numerator.eval_with_derivative(z);
        let (d, dd) = self.denominator.eval_with_derivative(z);
        self.check_pole(z, d)?;
        Ok((n / d, (dn * d - n * dd) / (d * d)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            numerator: &self.numerator * &other.numerator,
            denominator: &self.denominator * &other.denominator,
        }
    }

    /// Same function with numerator and denominator divided by the
    /// denominator's constant term (or its largest coefficient if that is zero).
    pub fn normalized(&self) -> Self {
        let d0 = self.denominator.coeffs()[0];
        let s = if d0.norm() > 1e-300 {
            d0
        } else {
            *self
                .denominator
                .coeffs()
                .iter()
                .max_by(|a, b| a.norm().total_cmp(&b.norm()))
                .expect("nonempty")
        };
        let inv = Complex64::new(1.0, 0.0) / s;
        Self { numerator: self.numerator.scale(inv), denominator: self.denominator.scale(inv) }
    }
}

/// Largest `||f(e^{i theta})| - 1|` over `samples` equally spaced angles.
///
/// A sample that lands on a pole is nudged forward until it does not.
pub fn unimodularity_check(f: &RationalFunction, samples: usize) -> f64 {
    let samples = samples.max(16);
    let mut worst: f64 = 0.0;
    for k in 0..samples {
        let mut theta = TAU * k as f64 / samples as f64;
        for _ in 0..8 {
            match f.eval(Complex64::from_polar(1.0, theta)) {
                Ok(v) => {
                    worst = worst.max((v.norm() - 1.0).abs());
                    break;
                }
                Err(_) => theta += 1e-7,
            }
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eval_examples() {
        assert!((RationalFunction::identity().eval(c(0.0, 1.0)).unwrap() - c(0.0, 1.0)).norm() < 1e-15);
        let b = RationalFunction::blaschke_factor(c(0.5, 0.0));
        assert!((b.eval(c(1.0, 0.0)).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
        let k = RationalFunction::constant(c(0.6, 0.8));
        assert_eq!(k.eval(c(0.3, -2.0)).unwrap(), c(0.6, 0.8));
    }

    #[test]
    fn pole_is_reported() {
        let b = RationalFunction::blaschke_factor(c(0.5, 0.0));
        assert!(matches!(b.eval(c(2.0, 0.0)), Err(Error::PoleAtPoint { .. })));
    }

    #[test]
    fn unimodularity_examples() {
        let b = RationalFunction::blaschke_factor(c(0.3, 0.4)).mul(&RationalFunction::blaschke_factor(c(-0.7, 0.1)));
        assert!(unimodularity_check(&b, 256) < 1e-12);
        let half = RationalFunction::new(
            ComplexPolynomial::from_real(&[0.0, 0.5]),
            ComplexPolynomial::from_real(&[1.0]),
        )
        .unwrap();
        assert!((unimodularity_check(&half, 64) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn derivative_matches_quotient_rule() {
        let b = RationalFunction::blaschke_factor(c(0.5, 0.0));
        let (_, d) = b.eval_with_derivative(c(0.0, 0.0)).unwrap();
        // (1 - |a|^2) / (1 - conj(a) z)^2 at 0
        assert!((d - c(0.75, 0.0)).norm() < 1e-15);
    }
}
