//! Small dense complex linear algebra and polynomial arithmetic.
//!
//! Everything here works on matrices of order at most a few dozen; nothing is
//! tuned for large or sparse problems.

mod dense;
mod hermitian;
mod poly;

pub use dense::{GeneralMatrix, Lu};
pub use hermitian::{
    cholesky, hermitian_det, is_psd, numerical_rank, solve_hermitian, CholeskyFactor, HermitianMatrix,
    DEFAULT_RANK_TOL, HERMITIAN_TOL, PIVOT_TOL,
};
pub use poly::{poly_roots, ComplexPolynomial, ABERTH_MAX_ITER, DROP_TOL};

/// Chordal distance `|a - b|` between two complex numbers.
pub fn chordal(a: num_complex::Complex64, b: num_complex::Complex64) -> f64 {
    (a - b).norm()
}
