//! The parametrization of all interpolants of degree at most `n - 1` by
//! admissible tuples: the coefficients `Delta`, the matrix function `Theta`,
//! the interpolant itself, derivative attainment and the converse map.

mod theta;

use num_complex::Complex64;

use crate::blaschke::{factorize, RationalFunction};
use crate::error::{Error, Result};
use crate::numerics::ComplexPolynomial;
use crate::pick::{admissible_factor, boundary_derivative};
use crate::problem::{is_constant_problem, BoundaryData, GammaTuple};

pub use crate::pick::pn_column;
pub use theta::{ThetaFunction, ThetaValue, J, POLE_EXCLUSION};

/// Default zero threshold: `|Delta_i| <= DEFAULT_DELTA_TOL * max(1, ||Delta||_inf)`.
pub const DEFAULT_DELTA_TOL: f64 = 1e-8;
/// Interpolation residual accepted by [`recover_gamma`].
pub const RECOVER_RESIDUAL_TOL: f64 = 1e-8;

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// `Delta = P^{-1} p_n` and the indices where it vanishes numerically.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaVector {
    values: Vec<Complex64>,
    zero_set: Vec<usize>,
    tol: f64,
}

impl DeltaVector {
    pub fn from_values(values: Vec<Complex64>, tol: f64) -> Self {
        let scale = values.iter().fold(1.0_f64, |m, v| m.max(v.norm()));
        let zero_set = (0..values.len()).filter(|&i| values[i].norm() <= tol * scale).collect();
        Self { values, zero_set, tol }
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// 0-based indices with `Delta_i` declared zero.
    pub fn zero_set(&self) -> &[usize] {
        &self.zero_set
    }

    pub fn is_zero(&self, i: usize) -> bool {
        self.zero_set.contains(&i)
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }
}

pub fn delta(data: &BoundaryData, gamma: &GammaTuple) -> Result<DeltaVector> {
    delta_with_tol(data, gamma, DEFAULT_DELTA_TOL)
}

pub fn delta_with_tol(data: &BoundaryData, gamma: &GammaTuple, tol: f64) -> Result<DeltaVector> {
    let (_, chol) = admissible_factor(data, gamma)?;
    Ok(DeltaVector::from_values(chol.solve(&pn_column(data)), tol))
}

pub fn theta(data: &BoundaryData, gamma: &GammaTuple, z: Complex64) -> Result<ThetaValue> {
    ThetaFunction::new(data, gamma)?.eval(z)
}

/// One member `f_gamma` of the family of interpolants.
#[derive(Debug, Clone)]
pub struct InterpolantFamily {
    pub data: BoundaryData,
    pub gamma: GammaTuple,
    pub delta: DeltaVector,
    pub f: RationalFunction,
    pub predicted_degree: usize,
}

impl InterpolantFamily {
    /// `max_i |f(t_i) - w_i|` over all `n` nodes.
    pub fn max_residual(&self) -> Result<f64> {
        node_residuals(&self.f, &self.data).map(|r| r.into_iter().fold(0.0, f64::max))
    }
}

/// `|f(t_i) - w_i|` for every node.
pub fn node_residuals(f: &RationalFunction, data: &BoundaryData) -> Result<Vec<f64>> {
    (0..data.n()).map(|i| Ok((f.eval(data.t(i))? - data.w(i)).norm())).collect()
}

pub fn interpolant(data: &BoundaryData, gamma: &GammaTuple) -> Result<InterpolantFamily> {
    interpolant_with_tol(data, gamma, DEFAULT_DELTA_TOL)
}

/// Builds
/// `f = w_n [1 - (1 - z conj(t_n)) sum Delta_i / (1 - z conj(t_i))]
///        / [1 - (1 - z conj(t_n)) sum conj(w_i) w_n Delta_i / (1 - z conj(t_i))]`
/// with denominators cleared by `prod (1 - z conj(t_i))`. Entries of the zero
/// set are taken as exactly zero and the factor `(z - t_i)` they leave in both
/// polynomials is divided out.
pub fn interpolant_with_tol(data: &BoundaryData, gamma: &GammaTuple, tol: f64) -> Result<InterpolantFamily> {
    let delta = delta_with_tol(data, gamma, tol)?;
    assemble(data, gamma, delta)
}

/// The interpolant formula evaluated with coefficients supplied by the caller,
/// e.g. from a closed form.
pub fn assemble(data: &BoundaryData, gamma: &GammaTuple, delta: DeltaVector) -> Result<InterpolantFamily> {
    let k = data.n() - 1;
    let tn = data.t(k);
    let wn = data.w(k);
    let factors: Vec<ComplexPolynomial> =
        (0..k).map(|i| ComplexPolynomial::linear(ONE, -data.t(i).conj())).collect();
    let product = |skip: Option<usize>| {
        factors
            .iter()
            .enumerate()
            .filter(|&(j, _)| Some(j) != skip)
            .fold(ComplexPolynomial::constant(ONE), |acc, (_, p)| &acc * p)
    };
    let upsilon = product(None);
    let mut sum_n = ComplexPolynomial::zero();
    let mut sum_d = ComplexPolynomial::zero();
    for i in 0..k {
        if delta.is_zero(i) {
            continue;
        }
        let d = delta.values()[i];
        let ui = product(Some(i));
        sum_n = &sum_n + &ui.scale(d);
        sum_d = &sum_d + &ui.scale(data.w(i).conj() * wn * d);
    }
    let lead = ComplexPolynomial::linear(ONE, -tn.conj());
    let mut num = (&upsilon - &(&lead * &sum_n)).scale(wn);
    let mut den = &upsilon - &(&lead * &sum_d);
    for &i in delta.zero_set() {
        num = num.deflate(data.t(i)).0;
        den = den.deflate(data.t(i)).0;
    }
    let predicted_degree = k - delta.zero_set().len();
    Ok(InterpolantFamily {
        data: data.clone(),
        gamma: gamma.clone(),
        delta,
        f: RationalFunction::new(num, den)?,
        predicted_degree,
    })
}

/// Derivative report at one node `t_i`, `i <= n - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Attainment {
    /// 1-based node index.
    pub index: usize,
    pub attained: bool,
    /// `|f'(t_i)|`.
    pub derivative: f64,
    /// `gamma_i` when attained, otherwise `gamma_i - 1 / [P^{-1}]_{ii}`.
    pub expected: f64,
}

pub fn attainment(family: &InterpolantFamily) -> Result<Vec<Attainment>> {
    let (_, chol) = admissible_factor(&family.data, &family.gamma)?;
    let inv_diag = chol.inverse_diagonal();
    let g = family.gamma.values();
    (0..g.len())
        .map(|i| {
            let attained = !family.delta.is_zero(i);
            Ok(Attainment {
                index: i + 1,
                attained,
                derivative: boundary_derivative(&family.f, family.data.t(i))?,
                expected: if attained { g[i] } else { g[i] - 1.0 / inv_diag[i] },
            })
        })
        .collect()
}

/// Parameter tuple recovered from an interpolant.
#[derive(Debug, Clone, PartialEq)]
pub struct RecoveredGamma {
    pub gamma: GammaTuple,
    pub degree: usize,
    /// `true` exactly when the degree is `n - 1`, the only case where the
    /// representing tuple is unique.
    pub unique: bool,
}

/// Reads `gamma_i = |f'(t_i)|` off a Blaschke interpolant of degree at most
/// `n - 1`. When the degree `k` is smaller, the last `n - 1 - k` entries are
/// raised by one and the result is flagged as non-unique.
pub fn recover_gamma(f: &RationalFunction, data: &BoundaryData) -> Result<RecoveredGamma> {
    if is_constant_problem(data).is_some() {
        return Err(Error::ConstantProblem);
    }
    for (i, r) in node_residuals(f, data)?.into_iter().enumerate() {
        if !(r <= RECOVER_RESIDUAL_TOL) {
            return Err(Error::NotASolution { index: i + 1, residual: r });
        }
    }
    let degree = factorize(f)?.degree();
    let k = data.n() - 1;
    if degree > k {
        return Err(Error::NotBlaschke(format!("degree {degree} exceeds n - 1 = {k}")));
    }
    let mut g = (0..k)
        .map(|i| boundary_derivative(f, data.t(i)))
        .collect::<Result<Vec<f64>>>()?;
    for v in g.iter_mut().skip(degree) {
        *v += 1.0;
    }
    Ok(RecoveredGamma { gamma: GammaTuple::new(g)?, degree, unique: degree == k })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::UnitPoint;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sample_problem() -> (BoundaryData, GammaTuple) {
        let d = BoundaryData::from_angles(&[0.1, 1.3, 2.2, 3.9, 5.0], &[0.4, 2.9, 1.1, 5.5, 0.2]).unwrap();
        (d, GammaTuple::new(vec![9.0, 11.0, 8.5, 10.0]).unwrap())
    }

    #[test]
    fn fixed_point_pn_is_all_ones() {
        let nodes: Vec<UnitPoint> = [0.0, 1.0, 2.0, 4.0].iter().map(|&a| UnitPoint::from_angle(a)).collect();
        let d = BoundaryData::fixed_points(&nodes).unwrap();
        for v in pn_column(&d) {
            assert!((v - ONE).norm() < 1e-14);
        }
    }

    #[test]
    fn theta_is_identity_at_last_node() {
        let (d, g) = sample_problem();
        let th = theta(&d, &g, d.t(4)).unwrap();
        assert!((th.t11 - ONE).norm() < 1e-12 && th.t12.norm() < 1e-12);
        assert!(th.t21.norm() < 1e-12 && (th.t22 - ONE).norm() < 1e-12);
    }

    #[test]
    fn theta_det_and_identities() {
        let (d, g) = sample_problem();
        let tf = ThetaFunction::new(&d, &g).unwrap();
        for z in [c(0.3, -0.2), c(1.5, 0.7), c(-0.9, 0.1)] {
            assert!((tf.eval(z).unwrap().det() - ONE).norm() < 1e-9);
            assert!(tf.j_identity_residual(z, c(0.2, 0.5)).unwrap() < 1e-9);
            assert!(tf.dual_j_identity_residual(z, c(-0.4, 0.1)).unwrap() < 1e-9);
        }
        assert_eq!(tf.eval(d.t(2)), Err(Error::PoleAtNode { index: 3 }));
    }

    #[test]
    fn interpolates_and_matches_theta_path() {
        let (d, g) = sample_problem();
        let fam = interpolant(&d, &g).unwrap();
        assert!(fam.max_residual().unwrap() < 1e-10);
        assert_eq!(fam.predicted_degree, 4);
        let tf = ThetaFunction::new(&d, &g).unwrap();
        for z in [c(0.3, -0.2), c(0.0, 0.9), c(-0.6, -0.6)] {
            let a = fam.f.eval(z).unwrap();
            assert!((a - tf.interpolant_value(z).unwrap()).norm() < 1e-10);
        }
    }

    #[test]
    fn attainment_on_generic_member() {
        let (d, g) = sample_problem();
        let fam = interpolant(&d, &g).unwrap();
        for a in attainment(&fam).unwrap() {
            assert!(a.attained);
            assert!((a.derivative - a.expected).abs() < 1e-7 * a.expected);
        }
    }

    #[test]
    fn recover_round_trip() {
        let (d, g) = sample_problem();
        let fam = interpolant(&d, &g).unwrap();
        let r = recover_gamma(&fam.f, &d).unwrap();
        assert!(r.unique);
        for (a, b) in r.gamma.values().iter().zip(g.values()) {
            assert!((a - b).abs() < 1e-7 * b);
        }
    }

    #[test]
    fn identity_on_fixed_points_is_not_unique() {
        let nodes: Vec<UnitPoint> = [0.0, 2.0, 4.0].iter().map(|&a| UnitPoint::from_angle(a)).collect();
        let d = BoundaryData::fixed_points(&nodes).unwrap();
        let r = recover_gamma(&RationalFunction::identity(), &d).unwrap();
        assert_eq!(r.degree, 1);
        assert!(!r.unique);
        assert_eq!(r.gamma.values(), &[1.0, 2.0]);
    }
}
