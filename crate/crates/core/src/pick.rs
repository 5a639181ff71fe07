//! Pick and Schwarz-Pick matrices, admissibility of the parameter tuple, the
//! Stein identities and the matrix classes they feed.

use num_complex::Complex64;

use crate::blaschke::RationalFunction;
use crate::error::{Error, Result};
use crate::numerics::{cholesky, numerical_rank, CholeskyFactor, HermitianMatrix, DEFAULT_RANK_TOL};
use crate::problem::{BoundaryData, GammaTuple};

/// Eigenvalues down to `-PSD_TOL * max |lambda|` count as nonnegative.
pub const PSD_TOL: f64 = 1e-9;
/// Imaginary residue tolerated in `t f'(t) conj(f(t))`.
pub const BOUNDARY_IM_TOL: f64 = 1e-9;
/// Largest order [`classify`] will enumerate principal submatrices for.
pub const CLASSIFY_MAX_ORDER: usize = 14;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// `(1 - w_i conj(w_j)) / (1 - t_i conj(t_j))` for distinct 0-based `i`, `j`.
pub fn p_entry(data: &BoundaryData, i: usize, j: usize) -> Complex64 {
    (ONE - data.w(i) * data.w(j).conj()) / (ONE - data.t(i) * data.t(j).conj())
}

/// Pick matrix on the first `n - 1` points with an arbitrary real diagonal.
pub fn pick_matrix_raw(data: &BoundaryData, diagonal: &[f64]) -> HermitianMatrix {
    assert_eq!(diagonal.len() + 1, data.n(), "diagonal must have n - 1 entries");
    HermitianMatrix::from_lower(diagonal.len(), |i, j| {
        if i == j {
            Complex64::new(diagonal[i], 0.0)
        } else {
            p_entry(data, i, j)
        }
    })
}

/// The matrix `P^gamma_{n-1}`: off-diagonal Pick entries on the first `n - 1`
/// points and `gamma` on the diagonal.
pub fn pick_matrix(data: &BoundaryData, gamma: &GammaTuple) -> Result<HermitianMatrix> {
    gamma.check_for(data)?;
    Ok(pick_matrix_raw(data, gamma.values()))
}

/// Pick matrix together with its Cholesky factor; `NotAdmissible` when the
/// factorization breaks down.
pub fn admissible_factor(data: &BoundaryData, gamma: &GammaTuple) -> Result<(HermitianMatrix, CholeskyFactor)> {
    let p = pick_matrix(data, gamma)?;
    match cholesky(&p) {
        Ok(f) => Ok((p, f)),
        Err(Error::NotPositiveDefinite { pivot }) => Err(Error::NotAdmissible { pivot }),
        Err(e) => Err(e),
    }
}

pub fn is_admissible(data: &BoundaryData, gamma: &GammaTuple) -> bool {
    admissible_factor(data, gamma).is_ok()
}

/// The diagonal node matrix `T` and the columns `E` (all ones) and `M`
/// (targets) built from the first `n - 1` points.
#[derive(Debug, Clone, PartialEq)]
pub struct SteinData {
    pub t: Vec<Complex64>,
    pub e: Vec<Complex64>,
    pub m: Vec<Complex64>,
}

impl SteinData {
    pub fn new(data: &BoundaryData) -> Self {
        let k = data.n() - 1;
        Self {
            t: (0..k).map(|i| data.t(i)).collect(),
            e: vec![ONE; k],
            m: (0..k).map(|i| data.w(i)).collect(),
        }
    }
}

/// Largest absolute row sum of a square row-major matrix given by `f`.
fn norm_inf(order: usize, f: impl Fn(usize, usize) -> Complex64) -> f64 {
    (0..order)
        .map(|i| (0..order).map(|j| f(i, j).norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// `||P - T P T* - (E E* - M M*)||_inf` for any real diagonal.
pub fn stein_residual(data: &BoundaryData, diagonal: &[f64]) -> f64 {
    let p = pick_matrix_raw(data, diagonal);
    let s = SteinData::new(data);
    norm_inf(p.order(), |i, j| {
        p.get(i, j) - s.t[i] * p.get(i, j) * s.t[j].conj() - (s.e[i] * s.e[j].conj() - s.m[i] * s.m[j].conj())
    })
}

/// The columns `X`, `Y` with `P^{-1} - T* P^{-1} T = X X* - Y Y*`.
#[derive(Debug, Clone, PartialEq)]
pub struct XYColumns {
    pub x: Vec<Complex64>,
    pub y: Vec<Complex64>,
}

/// `X = (I - t_n T*) P^{-1} (t_n I - T)^{-1} E`, and `Y` likewise with `M`.
pub fn xy_columns(data: &BoundaryData, gamma: &GammaTuple) -> Result<XYColumns> {
    let (_, chol) = admissible_factor(data, gamma)?;
    Ok(xy_from_factor(data, &chol))
}

pub(crate) fn xy_from_factor(data: &BoundaryData, chol: &CholeskyFactor) -> XYColumns {
    let k = data.n() - 1;
    let tn = data.t(k);
    let u: Vec<Complex64> = (0..k).map(|i| ONE / (tn - data.t(i))).collect();
    let v: Vec<Complex64> = (0..k).map(|i| data.w(i) / (tn - data.t(i))).collect();
    let pu = chol.solve(&u);
    let pv = chol.solve(&v);
    let scale = |i: usize| ONE - tn * data.t(i).conj();
    XYColumns {
        x: (0..k).map(|i| scale(i) * pu[i]).collect(),
        y: (0..k).map(|i| scale(i) * pv[i]).collect(),
    }
}

/// Dense `P^{-1}` from a Cholesky factor, row-major.
pub fn inverse_from_factor(chol: &CholeskyFactor) -> Vec<Complex64> {
    let k = chol.order();
    let mut inv = vec![ZERO; k * k];
    for j in 0..k {
        let mut e = vec![ZERO; k];
        e[j] = ONE;
        let col = chol.solve(&e);
        for i in 0..k {
            inv[i * k + j] = col[i];
        }
    }
    inv
}

/// `(||P^{-1} - T* P^{-1} T - (X X* - Y Y*)||_inf, ||P^{-1}||_inf)`.
pub fn inverse_stein_residual(data: &BoundaryData, gamma: &GammaTuple) -> Result<(f64, f64)> {
    let (_, chol) = admissible_factor(data, gamma)?;
    let xy = xy_from_factor(data, &chol);
    let inv = inverse_from_factor(&chol);
    let s = SteinData::new(data);
    let k = s.t.len();
    let r = norm_inf(k, |i, j| {
        let pij = inv[i * k + j];
        pij - s.t[i].conj() * pij * s.t[j] - (xy.x[i] * xy.x[j].conj() - xy.y[i] * xy.y[j].conj())
    });
    Ok((r, norm_inf(k, |i, j| inv[i * k + j])))
}

/// Ratio of extreme eigenvalues of the Pick matrix.
pub fn condition_estimate(p: &HermitianMatrix) -> f64 {
    let ev = p.eigenvalues();
    match (ev.first(), ev.last()) {
        (Some(&lo), Some(&hi)) if lo > 0.0 => hi / lo,
        _ => f64::INFINITY,
    }
}

fn on_circle(z: Complex64) -> bool {
    (z.norm() - 1.0).abs() <= 1e-10
}

/// Schwarz-Pick matrix of `f` at distinct points of the closed disk.
///
/// Off-diagonal entries are `(1 - f(z_i) conj(f(z_j))) / (1 - z_i conj(z_j))`;
/// a diagonal entry is `(1 - |f(z)|^2) / (1 - |z|^2)` inside the disk and
/// `Re(z f'(z) conj(f(z)))` on the circle.
pub fn schwarz_pick_matrix(f: &RationalFunction, points: &[Complex64]) -> Result<HermitianMatrix> {
    let mut vals = Vec::with_capacity(points.len());
    let mut diag = Vec::with_capacity(points.len());
    for &z in points {
        let (v, dv) = f.eval_with_derivative(z)?;
        vals.push(v);
        diag.push(if on_circle(z) {
            (z * dv * v.conj()).re
        } else {
            (1.0 - v.norm_sqr()) / (1.0 - z.norm_sqr())
        });
    }
    Ok(HermitianMatrix::from_lower(points.len(), |i, j| {
        if i == j {
            Complex64::new(diag[i], 0.0)
        } else {
            (ONE - vals[i] * vals[j].conj()) / (ONE - points[i] * points[j].conj())
        }
    }))
}

/// `|f'(t)|` for unimodular `f`, computed as `t f'(t) conj(f(t))`.
pub fn boundary_derivative(f: &RationalFunction, t: Complex64) -> Result<f64> {
    let (v, dv) = f.eval_with_derivative(t)?;
    let d = t * dv * v.conj();
    if d.re < -BOUNDARY_IM_TOL * d.norm().max(1.0) {
        return Err(Error::NegativeDerivative { value: d.re });
    }
    Ok(d.re.max(0.0))
}

/// Positivity classes of a Hermitian matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixClass {
    PositiveDefinite,
    /// Singular, positive semidefinite, and every principal submatrix of
    /// order equal to the rank is positive definite. For positive
    /// semidefinite matrices this is the same as being minimally positive.
    SingularSaturated,
    SingularNotSaturated,
    Indefinite,
}

/// Sorts a Hermitian matrix into [`MatrixClass`].
///
/// Saturation is decided by enumerating all principal submatrices of order
/// `rank`, so orders above [`CLASSIFY_MAX_ORDER`] are refused.
pub fn classify(h: &HermitianMatrix) -> Result<MatrixClass> {
    let n = h.order();
    if n > CLASSIFY_MAX_ORDER {
        return Err(Error::TooLarge { order: n });
    }
    let ev = h.eigenvalues();
    let scale = ev.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    if ev.first().is_some_and(|&lo| lo < -PSD_TOL * scale) {
        return Ok(MatrixClass::Indefinite);
    }
    let r = numerical_rank(h, DEFAULT_RANK_TOL);
    if r == n {
        return Ok(MatrixClass::PositiveDefinite);
    }
    if r == 0 {
        return Ok(MatrixClass::SingularSaturated);
    }
    let floor = DEFAULT_RANK_TOL * scale;
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        let sub = h.principal(&idx);
        if sub.eigenvalues().first().is_none_or(|&lo| lo <= floor) {
            return Ok(MatrixClass::SingularNotSaturated);
        }
        if !next_combination(&mut idx, n) {
            return Ok(MatrixClass::SingularSaturated);
        }
    }
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let r = idx.len();
    for pos in (0..r).rev() {
        if idx[pos] < n - r + pos {
            idx[pos] += 1;
            for q in pos + 1..r {
                idx[q] = idx[q - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// The column `(p_{1,n}, ..., p_{n-1,n})`.
pub fn pn_column(data: &BoundaryData) -> Vec<Complex64> {
    let n = data.n();
    (0..n - 1).map(|i| p_entry(data, i, n - 1)).collect()
}

/// The diagonal entry `gamma_n = F P^{-1} F*`, `F = (p_{n,1}, ..., p_{n,n-1})`,
/// that makes the bordered Pick matrix singular.
pub fn singular_extension_gamma_n(data: &BoundaryData, gamma: &GammaTuple) -> Result<f64> {
    let (_, chol) = admissible_factor(data, gamma)?;
    let col = pn_column(data);
    let sol = chol.solve(&col);
    Ok(col.iter().zip(&sol).map(|(c, s)| c.conj() * s).sum::<Complex64>().re)
}
