//! Closed-form families: three points, targets equal at all but one node
//! (and the matching Clark-measure construction), and boundary fixed points.

use num_complex::Complex64;

use crate::blaschke::RationalFunction;
use crate::error::{Error, Result};
use crate::numerics::ComplexPolynomial;
use crate::parametrization::{assemble, node_residuals, DeltaVector, InterpolantFamily, DEFAULT_DELTA_TOL};
use crate::pick::{admissible_factor, boundary_derivative, p_entry};
use crate::problem::{is_constant_problem, BoundaryData, GammaTuple, UnitPoint, CONSTANT_TOL};

/// Relative gap below which the two sides of the fixed-point inequality are
/// reported equal.
pub const EQUALITY_TOL: f64 = 1e-7;

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

fn factor(t: Complex64) -> ComplexPolynomial {
    ComplexPolynomial::linear(ONE, -t.conj())
}

/// `prod_{j != skip} (1 - z conj(t_j))`.
fn upsilon(nodes: &[Complex64], skip: Option<usize>) -> ComplexPolynomial {
    nodes
        .iter()
        .enumerate()
        .filter(|&(j, _)| Some(j) != skip)
        .fold(ComplexPolynomial::constant(ONE), |acc, (_, &t)| &acc * &factor(t))
}

fn require_n(data: &BoundaryData, n: usize) -> Result<()> {
    if data.n() != n {
        return Err(Error::PatternMismatch(format!("expected {n} points, got {}", data.n())));
    }
    Ok(())
}

/// Three-point family with the coefficients in closed form:
/// `Delta_1 = (gamma_2 p_13 - p_12 p_23) / det`,
/// `Delta_2 = (gamma_1 p_23 - p_21 p_13) / det`, `det = gamma_1 gamma_2 - |p_12|^2`.
pub fn three_point(data: &BoundaryData, gamma: &GammaTuple) -> Result<InterpolantFamily> {
    require_n(data, 3)?;
    if is_constant_problem(data).is_some() {
        return Err(Error::ConstantProblem);
    }
    admissible_factor(data, gamma)?;
    let g = gamma.values();
    let p = |i: usize, j: usize| p_entry(data, i, j);
    let det = g[0] * g[1] - p(0, 1).norm_sqr();
    let d1 = (g[1] * p(0, 2) - p(0, 1) * p(1, 2)) / det;
    let d2 = (g[0] * p(1, 2) - p(1, 0) * p(0, 2)) / det;
    assemble(data, gamma, DeltaVector::from_values(vec![d1, d2], DEFAULT_DELTA_TOL))
}

/// `(gamma~_1, gamma~_2) = (p_21 p_13 / p_23, p_12 p_23 / p_13)`: the values of
/// `gamma_1` (resp. `gamma_2`) making `Delta_2` (resp. `Delta_1`) vanish.
/// Both are real; positive exactly when targets and nodes share orientation.
pub fn tilde_gammas(data: &BoundaryData) -> Result<(f64, f64)> {
    require_n(data, 3)?;
    let p = |i: usize, j: usize| p_entry(data, i, j);
    Ok(((p(1, 0) * p(0, 2) / p(1, 2)).re, (p(0, 1) * p(1, 2) / p(0, 2)).re))
}

/// Degree-one solution
/// `[(1 - z conj t_2) p_12 - (1 - z conj t_3) p_13] / [(1 - z conj t_2) conj(w_3) p_12 - (1 - z conj t_3) conj(w_2) p_13]`.
pub fn degree_one_via_first(data: &BoundaryData) -> Result<RationalFunction> {
    degree_one(data, 0, 1)
}

/// Degree-one solution
/// `[(1 - z conj t_1) p_21 - (1 - z conj t_3) p_23] / [(1 - z conj t_1) conj(w_3) p_21 - (1 - z conj t_3) conj(w_1) p_23]`.
pub fn degree_one_via_second(data: &BoundaryData) -> Result<RationalFunction> {
    degree_one(data, 1, 0)
}

fn degree_one(data: &BoundaryData, a: usize, b: usize) -> Result<RationalFunction> {
    require_n(data, 3)?;
    let (pab, pac) = (p_entry(data, a, b), p_entry(data, a, 2));
    let (fb, fc) = (factor(data.t(b)), factor(data.t(2)));
    let num = &fb.scale(pab) - &fc.scale(pac);
    let den = &fb.scale(data.w(2).conj() * pab) - &fc.scale(data.w(b).conj() * pac);
    RationalFunction::new(num, den)
}

/// The common value of `w_1..w_{n-1}` when it differs from `w_n`.
fn uniform_value(data: &BoundaryData) -> Result<UnitPoint> {
    let k = data.n() - 1;
    let w = data.targets()[0];
    if (1..k).any(|i| (data.w(i) - w.value()).norm() > CONSTANT_TOL) {
        return Err(Error::PatternMismatch("targets 1..n-1 are not all equal".into()));
    }
    Ok(w)
}

/// Family for targets `w_1 = ... = w_{n-1} = w`.
///
/// After rotating by `conj(w)` the Pick matrix is diagonal and
/// `Delta_i = (1 - conj(w_n)) / (gamma_i (1 - t_i conj(t_n)))`; the result is
/// rotated back. If `w_n = w` as well the constant `w` is returned.
pub fn uniform_target(data: &BoundaryData, gamma: &GammaTuple) -> Result<InterpolantFamily> {
    gamma.check_for(data)?;
    let w = uniform_value(data)?;
    let k = data.n() - 1;
    let nodes: Vec<Complex64> = (0..data.n()).map(|i| data.t(i)).collect();
    let tn = nodes[k];
    let wn = data.w(k) * w.value().conj();
    let deltas: Vec<Complex64> = (0..k)
        .map(|i| (ONE - wn.conj()) / (gamma.values()[i] * (ONE - nodes[i] * tn.conj())))
        .collect();
    let delta = DeltaVector::from_values(deltas, DEFAULT_DELTA_TOL);
    let ups = upsilon(&nodes[..k], None);
    let mut sum = ComplexPolynomial::zero();
    for i in 0..k {
        if !delta.is_zero(i) {
            sum = &sum + &upsilon(&nodes[..k], Some(i)).scale(delta.values()[i]);
        }
    }
    let lead = factor(tn);
    let mut num = (&ups - &(&lead * &sum)).scale(wn * w.value());
    let mut den = &ups - &(&lead * &sum).scale(wn);
    for &i in delta.zero_set() {
        num = num.deflate(nodes[i]).0;
        den = den.deflate(nodes[i]).0;
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

/// The Herglotz-side description of a uniform-target interpolant: point
/// masses `1 / gamma_i` at `t_i`, the real constant `c`, and `f` itself.
#[derive(Debug, Clone)]
pub struct ClarkForm {
    pub nodes: Vec<UnitPoint>,
    pub masses: Vec<f64>,
    pub phase_constant: f64,
    /// `E = (i c - 1) / (i c + 1)`.
    pub e: Complex64,
    pub f: RationalFunction,
}

/// `Phi(z) = 1/2 sum gamma_i^{-1} (t_i + z) / (t_i - z)`.
pub fn clark_phi(gamma: &[f64], nodes: &[Complex64], z: Complex64) -> Complex64 {
    gamma
        .iter()
        .zip(nodes)
        .map(|(&g, &t)| 0.5 / g * (t + z) / (t - z))
        .sum()
}

/// Builds `f = ((1 - Phi) E + Phi) / (-Phi E + 1 + Phi)` with `E` fixed by
/// `f(t_n) = w_n`, for targets equal at the first `n - 1` nodes.
pub fn clark_form(data: &BoundaryData, gamma: &GammaTuple) -> Result<ClarkForm> {
    gamma.check_for(data)?;
    let w = uniform_value(data)?;
    let k = data.n() - 1;
    let nodes: Vec<Complex64> = (0..k).map(|i| data.t(i)).collect();
    let tn = data.t(k);
    let wn = data.w(k) * w.value().conj();
    let g = gamma.values();
    let phin = clark_phi(g, &nodes, tn);
    let e = ((ONE + phin) * wn - phin) / (phin * wn + ONE - phin);

    // Phi = A / V with V = prod (t_i - z)
    let v = nodes
        .iter()
        .fold(ComplexPolynomial::constant(ONE), |acc, &t| &acc * &ComplexPolynomial::linear(t, -ONE));
    let mut a = ComplexPolynomial::zero();
    for i in 0..k {
        let rest = nodes
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .fold(ComplexPolynomial::constant(ONE), |acc, (_, &t)| &acc * &ComplexPolynomial::linear(t, -ONE));
        a = &a + &(&ComplexPolynomial::linear(nodes[i], ONE) * &rest).scale(Complex64::new(0.5 / g[i], 0.0));
    }
    let num = &(&v - &a).scale(e) + &a;
    let den = &(&v + &a) - &a.scale(e);
    let c = (ONE + e) / (Complex64::new(0.0, 1.0) * (ONE - e));
    Ok(ClarkForm {
        nodes: data.nodes()[..k].to_vec(),
        masses: g.iter().map(|x| 1.0 / x).collect(),
        phase_constant: c.re,
        e,
        f: RationalFunction::new(num.scale(w.value()), den)?,
    })
}

/// `|Phi(z) - Phi(t_n) - sum (1 - z conj t_n) / (gamma_i (1 - z conj t_i)(1 - t_i conj t_n))|`.
pub fn clark_phi_identity_residual(data: &BoundaryData, gamma: &GammaTuple, z: Complex64) -> f64 {
    let k = data.n() - 1;
    let nodes: Vec<Complex64> = (0..k).map(|i| data.t(i)).collect();
    let tn = data.t(k);
    let g = gamma.values();
    let lhs = clark_phi(g, &nodes, z) - clark_phi(g, &nodes, tn);
    let rhs: Complex64 = (0..k)
        .map(|i| (ONE - z * tn.conj()) / (g[i] * (ONE - z * nodes[i].conj()) * (ONE - nodes[i] * tn.conj())))
        .sum();
    (lhs - rhs).norm()
}

/// Which admissible regime a fixed-point tuple falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixedPointCaseId {
    /// Every `gamma_i > 1`.
    AllAboveOne,
    /// One `gamma_l = 1`, the rest above one; the interpolant is `f(z) = z`.
    OneEqualOne,
    /// One `gamma_l < 1`, the rest above one, and `sum 1 / (gamma_i - 1) < -1`.
    OneBelowOne,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FixedPointCase {
    pub case_id: FixedPointCaseId,
    pub gamma: GammaTuple,
    /// `f'(t_n)`.
    pub gamma_n: f64,
    /// `sum_{i=1}^{n} 1 / (gamma_i - 1)`, which equals `-1` outside the
    /// identity case.
    pub identity_sum: f64,
    /// 1-based index of the Denjoy-Wolff point; `None` for the identity.
    pub denjoy_wolff_index: Option<usize>,
    /// Whether the derivative at the Denjoy-Wolff point was checked to be
    /// below one.
    pub denjoy_wolff_verified: bool,
}

const CASE_TOL: f64 = 1e-12;

/// Interpolants of the fixed-point problem `f(t_i) = t_i`:
/// `f = [t_n + sum z a_i / (1 - z conj t_i)] / [1 + sum a_i / (1 - z conj t_i)]`
/// with `a_i = (1 - t_n conj t_i) / (gamma_i - 1)`.
pub fn fixed_point_family(nodes: &[UnitPoint], gamma: &GammaTuple) -> Result<(InterpolantFamily, FixedPointCase)> {
    let data = BoundaryData::fixed_points(nodes)?;
    gamma.check_for(&data)?;
    let g = gamma.values();
    let k = g.len();
    let below: Vec<usize> = (0..k).filter(|&i| g[i] < 1.0 - CASE_TOL).collect();
    let equal: Vec<usize> = (0..k).filter(|&i| (g[i] - 1.0).abs() <= CASE_TOL).collect();
    let s: f64 = g.iter().map(|&x| 1.0 / (x - 1.0)).sum();
    let closed_form = match (below.len(), equal.len()) {
        (0, 0) => Some(FixedPointCaseId::AllAboveOne),
        (0, 1) => Some(FixedPointCaseId::OneEqualOne),
        (1, 0) if s < -1.0 => Some(FixedPointCaseId::OneBelowOne),
        _ => None,
    };
    let cholesky = admissible_factor(&data, gamma);
    let case_id = match (closed_form, cholesky) {
        (Some(c), Ok(_)) => c,
        (None, Err(e)) => return Err(e),
        (None, Ok(_)) => {
            return Err(Error::NumericalFailure("Cholesky accepts a tuple the case analysis rejects".into()))
        }
        (Some(_), Err(e)) => return Err(e),
    };

    let t: Vec<Complex64> = nodes.iter().map(|p| p.value()).collect();
    let tn = t[k];
    if case_id == FixedPointCaseId::OneEqualOne {
        let l = equal[0];
        let mut d = vec![Complex64::new(0.0, 0.0); k];
        d[l] = ONE;
        let fam = InterpolantFamily {
            data,
            gamma: gamma.clone(),
            delta: DeltaVector::from_values(d, DEFAULT_DELTA_TOL),
            f: RationalFunction::identity(),
            predicted_degree: 1,
        };
        let case = FixedPointCase {
            case_id,
            gamma: gamma.clone(),
            gamma_n: 1.0,
            identity_sum: f64::INFINITY,
            denjoy_wolff_index: None,
            denjoy_wolff_verified: false,
        };
        return Ok((fam, case));
    }

    let a: Vec<Complex64> = (0..k).map(|i| (ONE - tn * t[i].conj()) / (g[i] - 1.0)).collect();
    let ups = upsilon(&t[..k], None);
    let mut sum = ComplexPolynomial::zero();
    for i in 0..k {
        sum = &sum + &upsilon(&t[..k], Some(i)).scale(a[i]);
    }
    let num = &ups.scale(tn) + &(&ComplexPolynomial::identity() * &sum);
    let den = &ups + &sum;
    let f = RationalFunction::new(num, den)?;
    let deltas = g.iter().map(|&x| Complex64::new(1.0 / ((1.0 + s) * (x - 1.0)), 0.0)).collect();
    let gamma_n = boundary_derivative(&f, tn)?;
    let identity_sum = s + 1.0 / (gamma_n - 1.0);
    let (dw, verified) = match case_id {
        FixedPointCaseId::AllAboveOne => (k, gamma_n < 1.0),
        _ => (below[0], boundary_derivative(&f, t[below[0]])? < 1.0),
    };
    let fam = InterpolantFamily {
        data,
        gamma: gamma.clone(),
        delta: DeltaVector::from_values(deltas, DEFAULT_DELTA_TOL),
        f,
        predicted_degree: k,
    };
    let case = FixedPointCase {
        case_id,
        gamma: gamma.clone(),
        gamma_n,
        identity_sum,
        denjoy_wolff_index: Some(dw + 1),
        denjoy_wolff_verified: verified,
    };
    Ok((fam, case))
}

/// `det P = (1 + sum 1/(gamma_i - 1)) prod (gamma_i - 1)` for fixed-point data,
/// written without dividing so it also covers `gamma_i = 1`.
pub fn fixed_point_det(gamma: &[f64]) -> f64 {
    let prod: f64 = gamma.iter().map(|x| x - 1.0).product();
    let mut total = prod;
    for i in 0..gamma.len() {
        total += gamma
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, x)| x - 1.0)
            .product::<f64>();
    }
    total
}

/// Both sides of the boundary fixed-point inequality.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CowenPommerenke {
    /// `sum_{i != h} 1 / (f'(t_i) - 1)`.
    pub lhs: f64,
    /// `f'(t_h) / (1 - f'(t_h))`.
    pub rhs: f64,
    pub equality: bool,
    /// 1-based index of the node with derivative below one.
    pub hyperbolic_index: usize,
}

/// Evaluates the inequality at boundary fixed points of `f`, taking the node
/// with the smallest derivative below one as the hyperbolic point.
pub fn cowen_pommerenke_check(f: &RationalFunction, nodes: &[UnitPoint]) -> Result<CowenPommerenke> {
    let data = BoundaryData::fixed_points(nodes)?;
    for (i, r) in node_residuals(f, &data)?.into_iter().enumerate() {
        if !(r <= 1e-8) {
            return Err(Error::NotASolution { index: i + 1, residual: r });
        }
    }
    let d = nodes
        .iter()
        .map(|p| boundary_derivative(f, p.value()))
        .collect::<Result<Vec<f64>>>()?;
    let (h, &dh) = d
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("at least two nodes");
    if !(dh < 1.0 - CASE_TOL) {
        return Err(Error::NoHyperbolicPoint);
    }
    let lhs: f64 = d.iter().enumerate().filter(|&(i, _)| i != h).map(|(_, &x)| 1.0 / (x - 1.0)).sum();
    let rhs = dh / (1.0 - dh);
    Ok(CowenPommerenke {
        lhs,
        rhs,
        equality: (lhs - rhs).abs() <= EQUALITY_TOL * rhs.abs().max(1.0),
        hyperbolic_index: h + 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parametrization::interpolant;
    use crate::pick::pick_matrix;
    use crate::numerics::hermitian_det;

    fn pts(angles: &[f64]) -> Vec<UnitPoint> {
        angles.iter().map(|&a| UnitPoint::from_angle(a)).collect()
    }

    fn circle(k: usize) -> impl Iterator<Item = Complex64> {
        (0..k).map(move |j| Complex64::from_polar(1.0, 0.05 + std::f64::consts::TAU * j as f64 / k as f64))
    }

    #[test]
    fn fixed_point_two_two() {
        let (fam, case) = fixed_point_family(&pts(&[0.0, 2.0, 4.0]), &GammaTuple::new(vec![2.0, 2.0]).unwrap()).unwrap();
        assert_eq!(case.case_id, FixedPointCaseId::AllAboveOne);
        assert!((case.gamma_n - 2.0 / 3.0).abs() < 1e-10);
        assert!((case.identity_sum + 1.0).abs() < 1e-8);
        assert_eq!(case.denjoy_wolff_index, Some(3));
        assert!(fam.max_residual().unwrap() < 1e-12);
        assert!((fixed_point_det(&[2.0, 2.0]) - 3.0).abs() < 1e-15);
    }

    #[test]
    fn fixed_point_case_two_is_identity() {
        let (fam, case) = fixed_point_family(&pts(&[0.0, 2.0, 4.0, 5.0]), &GammaTuple::new(vec![3.0, 1.0, 2.0]).unwrap())
            .unwrap();
        assert_eq!(case.case_id, FixedPointCaseId::OneEqualOne);
        assert_eq!(fam.f, RationalFunction::identity());
        let general = interpolant(&fam.data, &fam.gamma).unwrap();
        assert_eq!(general.predicted_degree, 1);
        for z in circle(16) {
            assert!((general.f.eval(z).unwrap() - z).norm() < 1e-10);
        }
    }

    #[test]
    fn fixed_point_case_three() {
        let (fam, case) = fixed_point_family(&pts(&[0.0, 2.0, 4.0]), &GammaTuple::new(vec![0.5, 3.0]).unwrap()).unwrap();
        assert_eq!(case.case_id, FixedPointCaseId::OneBelowOne);
        assert_eq!(case.denjoy_wolff_index, Some(1));
        assert!(case.denjoy_wolff_verified);
        assert!((case.identity_sum + 1.0).abs() < 1e-8);
        let cp = cowen_pommerenke_check(&fam.f, &pts(&[0.0, 2.0, 4.0])).unwrap();
        assert!(cp.equality);
        assert_eq!(cp.hyperbolic_index, 1);
        let det = hermitian_det(&pick_matrix(&fam.data, &fam.gamma).unwrap());
        assert!((det - fixed_point_det(&[0.5, 3.0])).abs() < 1e-9 * det.abs());
    }

    #[test]
    fn fixed_point_rejects_two_small_entries() {
        let r = fixed_point_family(&pts(&[0.0, 1.5, 3.0, 4.5]), &GammaTuple::new(vec![0.9, 1.0, 3.0]).unwrap());
        assert!(matches!(r, Err(Error::NotAdmissible { .. })));
    }

    #[test]
    fn cowen_pommerenke_identity_has_no_hyperbolic_point() {
        assert_eq!(
            cowen_pommerenke_check(&RationalFunction::identity(), &pts(&[0.0, 2.0, 4.0])),
            Err(Error::NoHyperbolicPoint)
        );
    }

    #[test]
    fn cowen_pommerenke_strict_on_subset() {
        let nodes = pts(&[0.0, 1.5, 3.0, 4.5]);
        let (fam, _) = fixed_point_family(&nodes, &GammaTuple::new(vec![2.0, 3.0, 4.0]).unwrap()).unwrap();
        assert!(cowen_pommerenke_check(&fam.f, &nodes).unwrap().equality);
        let sub = [nodes[0], nodes[2], nodes[3]];
        let cp = cowen_pommerenke_check(&fam.f, &sub).unwrap();
        assert!(!cp.equality);
        assert!(cp.lhs < cp.rhs);
    }

    #[test]
    fn three_point_oriented_degree_one() {
        let d = BoundaryData::from_angles(&[0.0, 2.0, 4.0], &[0.3, 1.0, 2.5]).unwrap();
        let (t1, t2) = tilde_gammas(&d).unwrap();
        assert!(t1 > 0.0 && t2 > 0.0);
        assert!((t1 * t2 - p_entry(&d, 0, 1).norm_sqr()).abs() < 1e-10);
        let gamma = GammaTuple::new(vec![t1 + 2.0, t2]).unwrap();
        let fam = three_point(&d, &gamma).unwrap();
        assert_eq!(fam.delta.zero_set(), &[0]);
        assert_eq!(fam.predicted_degree, 1);
        let a = degree_one_via_first(&d).unwrap();
        let b = degree_one_via_second(&d).unwrap();
        for z in circle(64) {
            let fa = a.eval(z).unwrap();
            assert!((fa - b.eval(z).unwrap()).norm() < 1e-10);
            assert!((fa - fam.f.eval(z).unwrap()).norm() < 1e-9);
        }
    }

    #[test]
    fn three_point_non_oriented_full_degree() {
        let d = BoundaryData::from_angles(&[0.0, 2.0, 4.0], &[2.5, 1.0, 0.3]).unwrap();
        let fam = three_point(&d, &GammaTuple::new(vec![5.0, 6.0]).unwrap()).unwrap();
        assert!(fam.delta.zero_set().is_empty());
        let general = interpolant(&d, &fam.gamma).unwrap();
        for z in circle(32) {
            assert!((fam.f.eval(z).unwrap() - general.f.eval(z).unwrap()).norm() < 1e-10);
        }
    }

    #[test]
    fn uniform_target_matches_general_and_clark() {
        let d = BoundaryData::from_angles(&[0.2, 1.1, 2.9, 4.0, 5.3], &[0.7, 0.7, 0.7, 0.7, 2.2]).unwrap();
        let gamma = GammaTuple::new(vec![1.5, 0.4, 2.2, 0.9]).unwrap();
        let u = uniform_target(&d, &gamma).unwrap();
        assert_eq!(u.predicted_degree, 4);
        let g = interpolant(&d, &gamma).unwrap();
        let c = clark_form(&d, &gamma).unwrap();
        for z in circle(128) {
            let v = u.f.eval(z).unwrap();
            assert!((v - g.f.eval(z).unwrap()).norm() < 1e-10);
            assert!((v - c.f.eval(z).unwrap()).norm() < 1e-9);
        }
        assert!(clark_phi_identity_residual(&d, &gamma, Complex64::new(0.3, -0.4)) < 1e-10);
    }

    #[test]
    fn uniform_target_constant_limit() {
        let d = BoundaryData::from_angles(&[0.2, 1.1, 2.9], &[0.0, 0.0, 0.0]).unwrap();
        let u = uniform_target(&d, &GammaTuple::new(vec![1.0, 2.0]).unwrap()).unwrap();
        assert_eq!(u.predicted_degree, 0);
        assert!((u.f.eval(Complex64::new(0.1, 0.2)).unwrap() - ONE).norm() < 1e-12);
    }

    #[test]
    fn clark_two_points() {
        let d = BoundaryData::from_angles(&[0.0, 2.0], &[0.0, 1.0]).unwrap();
        let c = clark_form(&d, &GammaTuple::new(vec![0.8]).unwrap()).unwrap();
        assert!(node_residuals(&c.f, &d).unwrap().iter().all(|&r| r < 1e-12));
    }
}
