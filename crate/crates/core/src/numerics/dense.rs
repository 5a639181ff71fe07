//! General (non-Hermitian) dense complex matrices: LU with partial pivoting,
//! and singular-value based rank and null space.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl GeneralMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count does not match shape");
        Self { rows, cols, entries }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    pub fn matvec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * x[j]).sum())
            .collect()
    }

    /// Copy with column `col` replaced by `v`.
    pub fn with_column(&self, col: usize, v: &[Complex64]) -> Self {
        assert_eq!(v.len(), self.rows);
        let mut m = self.clone();
        for (i, &vi) in v.iter().enumerate() {
            m.set(i, col, vi);
        }
        m
    }

    pub fn to_dmatrix(&self) -> DMatrix<Complex64> {
        DMatrix::from_row_slice(self.rows, self.cols, &self.entries)
    }

    /// LU factorization with partial pivoting; `Singular` when every candidate
    /// pivot in some column is at or below `1e-12 * max |a_ij|`.
    pub fn lu(&self) -> Result<Lu> {
        assert_eq!(self.rows, self.cols, "LU needs a square matrix");
        let n = self.rows;
        let tol = 1e-12 * self.max_abs();
        let mut a = self.entries.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        for k in 0..n {
            let (p, best) = (k..n)
                .map(|i| (i, a[i * n + k].norm()))
                .fold((k, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            if !(best > tol) {
                return Err(Error::Singular);
            }
            if p != k {
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
                sign = -sign;
            }
            let pivot = a[k * n + k];
            for i in k + 1..n {
                let m = a[i * n + k] / pivot;
                a[i * n + k] = m;
                for j in k + 1..n {
                    let akj = a[k * n + j];
                    a[i * n + j] -= m * akj;
                }
            }
        }
        Ok(Lu { n, a, perm, sign })
    }

    /// Determinant through LU; zero when elimination finds no usable pivot.
    pub fn det(&self) -> Complex64 {
        match self.lu() {
            Ok(lu) => lu.det(),
            Err(_) => Complex64::new(0.0, 0.0),
        }
    }

    /// Singular values, descending.
    pub fn singular_values(&self) -> Vec<f64> {
        if self.rows == 0 || self.cols == 0 {
            return Vec::new();
        }
        let mut sv: Vec<f64> = self.to_dmatrix().singular_values().iter().copied().collect();
        sv.sort_by(|a, b| b.total_cmp(a));
        sv
    }

    /// Number of singular values above `rel_tol * sigma_max`.
    pub fn rank(&self, rel_tol: f64) -> usize {
        let sv = self.singular_values();
        let top = sv.first().copied().unwrap_or(0.0);
        if top == 0.0 {
            return 0;
        }
        sv.iter().filter(|&&s| s > rel_tol * top).count()
    }

    /// Orthonormal basis of the numerical null space, columns as vectors.
    ///
    /// Wide matrices are padded with zero rows so every right singular
    /// direction is represented.
    pub fn null_space(&self, rel_tol: f64) -> Vec<Vec<Complex64>> {
        let (m, n) = (self.rows, self.cols);
        let padded = if m < n {
            let mut e = self.entries.clone();
            e.resize(n * n, Complex64::new(0.0, 0.0));
            GeneralMatrix::new(n, n, e)
        } else {
            self.clone()
        };
        let svd = padded.to_dmatrix().svd(false, true);
        let v_t = svd.v_t.expect("requested right singular vectors");
        let top = svd.singular_values.iter().fold(0.0_f64, |a, &b| a.max(b));
        let mut basis = Vec::new();
        for (k, &s) in svd.singular_values.iter().enumerate() {
            if top == 0.0 || s <= rel_tol * top {
                basis.push((0..n).map(|j| v_t[(k, j)].conj()).collect());
            }
        }
        basis
    }
}

/// Packed LU factors with row permutation.
#[derive(Debug, Clone)]
pub struct Lu {
    n: usize,
    a: Vec<Complex64>,
    perm: Vec<usize>,
    sign: f64,
}

impl Lu {
    pub fn det(&self) -> Complex64 {
        (0..self.n).fold(Complex64::new(self.sign, 0.0), |d, i| d * self.a[i * self.n + i])
    }

    pub fn solve(&self, b: &[Complex64]) -> Result<Vec<Complex64>> {
        let n = self.n;
        assert_eq!(b.len(), n);
        let mut y: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for k in 0..i {
                let m = self.a[i * n + k];
                let yk = y[k];
                y[i] -= m * yk;
            }
        }
        for i in (0..n).rev() {
            for k in i + 1..n {
                let u = self.a[i * n + k];
                let yk = y[k];
                y[i] -= u * yk;
            }
            y[i] /= self.a[i * n + i];
        }
        if y.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::Singular);
        }
        Ok(y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn lu_det_and_solve() {
        let m = GeneralMatrix::new(2, 2, vec![c(0.0, 0.0), c(2.0, 0.0), c(1.0, 1.0), c(3.0, 0.0)]);
        let d = m.det();
        assert!((d - c(-2.0, -2.0)).norm() < 1e-15);
        let x = m.lu().unwrap().solve(&[c(2.0, 0.0), c(4.0, 1.0)]).unwrap();
        let r = m.matvec(&x);
        assert!((r[0] - c(2.0, 0.0)).norm() < 1e-14 && (r[1] - c(4.0, 1.0)).norm() < 1e-14);
    }

    #[test]
    fn null_space_of_wide_matrix() {
        // x + y - z = 0: two-dimensional kernel
        let m = GeneralMatrix::new(1, 3, vec![c(1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)]);
        let ns = m.null_space(1e-9);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(m.matvec(&v)[0].norm() < 1e-14);
        }
        assert_eq!(m.rank(1e-9), 1);
    }
}
