//! Dense complex Hermitian matrices and the factorizations built on them.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::dense::GeneralMatrix;
use crate::error::{Error, Result};

/// Absolute tolerance on `|h_ij - conj(h_ji)|` accepted by [`HermitianMatrix::new`].
pub const HERMITIAN_TOL: f64 = 1e-12;

/// A Cholesky pivot at or below `PIVOT_TOL * max_diagonal` is a failure.
pub const PIVOT_TOL: f64 = 1e-12;

/// Default relative eigenvalue cutoff for [`numerical_rank`].
pub const DEFAULT_RANK_TOL: f64 = 1e-9;

/// Dense complex Hermitian matrix stored row-major.
///
/// The stored entries are exactly Hermitian: the upper triangle mirrors the
/// lower one and the diagonal is real.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    order: usize,
    entries: Vec<Complex64>,
}

impl HermitianMatrix {
    /// Builds a matrix from row-major entries, rejecting anything further than
    /// [`HERMITIAN_TOL`] from Hermitian and then symmetrizing exactly.
    pub fn new(order: usize, entries: Vec<Complex64>) -> Result<Self> {
        assert_eq!(entries.len(), order * order, "entry count does not match order");
        for i in 0..order {
            let d = entries[i * order + i];
            if d.im.abs() > HERMITIAN_TOL || !d.re.is_finite() {
                return Err(Error::NotHermitian { row: i + 1, col: i + 1 });
            }
            for j in 0..i {
                let a = entries[i * order + j];
                let b = entries[j * order + i];
                if !(a.re.is_finite() && a.im.is_finite()) || (a - b.conj()).norm() > HERMITIAN_TOL {
                    return Err(Error::NotHermitian { row: i + 1, col: j + 1 });
                }
            }
        }
        Ok(Self::from_lower(order, |i, j| entries[i * order + j]))
    }

    /// Builds a matrix from its lower triangle `f(i, j)` with `j <= i`.
    /// The imaginary part of diagonal values is dropped.
    pub fn from_lower(order: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut entries = vec![Complex64::new(0.0, 0.0); order * order];
        for i in 0..order {
            for j in 0..=i {
                let v = f(i, j);
                if i == j {
                    entries[i * order + i] = Complex64::new(v.re, 0.0);
                } else {
                    entries[i * order + j] = v;
                    entries[j * order + i] = v.conj();
                }
            }
        }
        Self { order, entries }
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let n = rows.len();
        let entries = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), n, "rows must be square");
                r.iter().map(|&x| Complex64::new(x, 0.0))
            })
            .collect();
        Self::new(n, entries)
    }

    pub fn identity(order: usize) -> Self {
        Self::from_lower(order, |i, j| if i == j { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) })
    }

    pub fn zeros(order: usize) -> Self {
        Self::from_lower(order, |_, _| Complex64::new(0.0, 0.0))
    }

    /// Outer product `v v*`.
    pub fn outer(v: &[Complex64]) -> Self {
        Self::from_lower(v.len(), |i, j| v[i] * v[j].conj())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.order + j]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.order).map(|i| self.get(i, i).re).collect()
    }

    /// Induced infinity norm (largest absolute row sum).
    pub fn norm_inf(&self) -> f64 {
        (0..self.order)
            .map(|i| (0..self.order).map(|j| self.get(i, j).norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn matvec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.order);
        (0..self.order)
            .map(|i| (0..self.order).map(|j| self.get(i, j) * x[j]).sum())
            .collect()
    }

    /// Principal submatrix on the given (0-based) index set.
    pub fn principal(&self, idx: &[usize]) -> Self {
        Self::from_lower(idx.len(), |a, b| self.get(idx[a], idx[b]))
    }

    /// `self + diag(shift)`.
    pub fn add_diagonal(&self, shift: &[f64]) -> Self {
        assert_eq!(shift.len(), self.order);
        Self::from_lower(self.order, |i, j| {
            if i == j {
                self.get(i, i) + shift[i]
            } else {
                self.get(i, j)
            }
        })
    }

    /// Bordered matrix `[[self, col], [col*, corner]]`.
    pub fn bordered(&self, col: &[Complex64], corner: f64) -> Self {
        assert_eq!(col.len(), self.order);
        let n = self.order;
        Self::from_lower(n + 1, |i, j| {
            if i < n {
                self.get(i, j)
            } else if j < n {
                col[j].conj()
            } else {
                Complex64::new(corner, 0.0)
            }
        })
    }

    pub fn to_general(&self) -> GeneralMatrix {
        GeneralMatrix::new(self.order, self.order, self.entries.clone())
    }

    pub fn to_dmatrix(&self) -> DMatrix<Complex64> {
        DMatrix::from_row_slice(self.order, self.order, &self.entries)
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        if self.order == 0 {
            return Vec::new();
        }
        let mut ev: Vec<f64> = SymmetricEigen::new(self.to_dmatrix()).eigenvalues.iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    /// Largest absolute difference against another matrix of the same order.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.order, other.order);
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Lower-triangular factor `L` with `L L* = H` and positive real diagonal.
#[derive(Debug, Clone)]
pub struct CholeskyFactor {
    order: usize,
    l: Vec<Complex64>,
}

impl CholeskyFactor {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn lower(&self, i: usize, j: usize) -> Complex64 {
        self.l[i * self.order + j]
    }

    /// Squared diagonal of `L`, i.e. the pivots of the elimination.
    pub fn pivots(&self) -> Vec<f64> {
        (0..self.order).map(|i| self.lower(i, i).re.powi(2)).collect()
    }

    pub fn det(&self) -> f64 {
        self.pivots().iter().product()
    }

    /// Reassembles `L L*`.
    pub fn reconstruct(&self) -> HermitianMatrix {
        let n = self.order;
        HermitianMatrix::from_lower(n, |i, j| (0..=j).map(|k| self.lower(i, k) * self.lower(j, k).conj()).sum())
    }

    pub fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.order;
        assert_eq!(b.len(), n);
        let mut y = b.to_vec();
        for i in 0..n {
            let mut s = y[i];
            for k in 0..i {
                s -= self.lower(i, k) * y[k];
            }
            y[i] = s / self.lower(i, i);
        }
        for i in (0..n).rev() {
            let mut s = y[i];
            for k in i + 1..n {
                s -= self.lower(k, i).conj() * y[k];
            }
            y[i] = s / self.lower(i, i);
        }
        y
    }

    /// Diagonal of `H^{-1}`.
    pub fn inverse_diagonal(&self) -> Vec<f64> {
        let n = self.order;
        (0..n)
            .map(|i| {
                let mut e = vec![Complex64::new(0.0, 0.0); n];
                e[i] = Complex64::new(1.0, 0.0);
                self.solve(&e)[i].re
            })
            .collect()
    }
}

pub fn cholesky(h: &HermitianMatrix) -> Result<CholeskyFactor> {
    let n = h.order();
    let max_diag = h.diagonal().into_iter().fold(f64::NEG_INFINITY, f64::max);
    if n > 0 && !(max_diag > 0.0) {
        return Err(Error::NotPositiveDefinite { pivot: 1 });
    }
    let floor = PIVOT_TOL * max_diag;
    let mut l = vec![Complex64::new(0.0, 0.0); n * n];
    for j in 0..n {
        let mut d = h.get(j, j).re;
        for k in 0..j {
            d -= l[j * n + k].norm_sqr();
        }
        if !(d > floor) {
            return Err(Error::NotPositiveDefinite { pivot: j + 1 });
        }
        let ljj = d.sqrt();
        l[j * n + j] = Complex64::new(ljj, 0.0);
        for i in j + 1..n {
            let mut s = h.get(i, j);
            for k in 0..j {
                s -= l[i * n + k] * l[j * n + k].conj();
            }
            l[i * n + j] = s / ljj;
        }
    }
    Ok(CholeskyFactor { order: n, l })
}

/// Solves `H x = b`, through Cholesky when `H` is positive definite and
/// through partially pivoted LU otherwise.
pub fn solve_hermitian(h: &HermitianMatrix, b: &[Complex64]) -> Result<Vec<Complex64>> {
    assert_eq!(b.len(), h.order(), "right-hand side length mismatch");
    match cholesky(h) {
        Ok(f) => Ok(f.solve(b)),
        Err(_) => h.to_general().lu()?.solve(b),
    }
}

/// Real determinant of a Hermitian matrix, computed from a factorization.
pub fn hermitian_det(h: &HermitianMatrix) -> f64 {
    if h.order() == 0 {
        return 1.0;
    }
    if let Ok(f) = cholesky(h) {
        return f.det();
    }
    let d = h.to_general().det();
    debug_assert!(d.im.abs() <= 1e-10 * d.norm().max(f64::MIN_POSITIVE) || d.norm() < 1e-300);
    d.re
}

/// Number of eigenvalues with `|lambda| > rel_tol * max |lambda|`.
pub fn numerical_rank(h: &HermitianMatrix, rel_tol: f64) -> usize {
    let ev = h.eigenvalues();
    let scale = ev.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    if scale == 0.0 {
        return 0;
    }
    ev.iter().filter(|x| x.abs() > rel_tol * scale).count()
}

/// Positive semidefiniteness with eigenvalues `>= -rel_tol * max(1, max |lambda|)`.
/// The floor of one keeps rounding noise in a numerically zero matrix from
/// counting as a negative eigenvalue.
pub fn is_psd(h: &HermitianMatrix, rel_tol: f64) -> bool {
    let ev = h.eigenvalues();
    let scale = ev.iter().fold(1.0_f64, |m, x| m.max(x.abs()));
    ev.first().map_or(true, |&min| min >= -rel_tol * scale)
}
