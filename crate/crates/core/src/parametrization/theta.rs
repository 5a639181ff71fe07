use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::CholeskyFactor;
use crate::pick::{admissible_factor, inverse_from_factor, xy_from_factor, XYColumns};
use crate::problem::{BoundaryData, GammaTuple};

/// Points within this distance of a node `t_1..t_{n-1}` are refused as poles.
pub const POLE_EXCLUSION: f64 = 1e-10;

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };
const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// The signature matrix `J = diag(1, -1)`.
pub const J: [[f64; 2]; 2] = [[1.0, 0.0], [0.0, -1.0]];

type M2 = [[Complex64; 2]; 2];

/// Value of the 2x2 matrix function at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaValue {
    pub t11: Complex64,
    pub t12: Complex64,
    pub t21: Complex64,
    pub t22: Complex64,
}

impl ThetaValue {
    pub fn det(&self) -> Complex64 {
        self.t11 * self.t22 - self.t12 * self.t21
    }

    /// The linear fractional map `e -> (t11 e + t12) / (t21 e + t22)`.
    pub fn apply(&self, e: Complex64) -> Complex64 {
        (self.t11 * e + self.t12) / (self.t21 * e + self.t22)
    }

    fn matrix(&self) -> M2 {
        [[self.t11, self.t12], [self.t21, self.t22]]
    }
}

fn star(a: M2) -> M2 {
    [[a[0][0].conj(), a[1][0].conj()], [a[0][1].conj(), a[1][1].conj()]]
}

fn mul(a: M2, b: M2) -> M2 {
    let mut out = [[ZERO; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

fn jm() -> M2 {
    [[Complex64::new(J[0][0], 0.0), ZERO], [ZERO, Complex64::new(J[1][1], 0.0)]]
}

/// `Theta(z) = I + sum_i c_i(z) [1; conj(w_i)] [x_i, -y_i]` with
/// `c_i(z) = (z - t_n) / ((1 - z conj(t_i)) (1 - t_n conj(t_i)))`.
///
/// Built once per admissible tuple; evaluation is then `O(n)`.
#[derive(Debug, Clone)]
pub struct ThetaFunction {
    t: Vec<Complex64>,
    w: Vec<Complex64>,
    tn: Complex64,
    wn: Complex64,
    xy: XYColumns,
    pick: Vec<Complex64>,
    inverse: Vec<Complex64>,
}

impl ThetaFunction {
    pub fn new(data: &BoundaryData, gamma: &GammaTuple) -> Result<Self> {
        let (p, chol) = admissible_factor(data, gamma)?;
        Ok(Self::from_parts(data, p.entries().to_vec(), &chol))
    }

    pub(crate) fn from_parts(data: &BoundaryData, pick: Vec<Complex64>, chol: &CholeskyFactor) -> Self {
        let k = data.n() - 1;
        Self {
            t: (0..k).map(|i| data.t(i)).collect(),
            w: (0..k).map(|i| data.w(i)).collect(),
            tn: data.t(k),
            wn: data.w(k),
            xy: xy_from_factor(data, chol),
            pick,
            inverse: inverse_from_factor(chol),
        }
    }

    pub fn columns(&self) -> &XYColumns {
        &self.xy
    }

    fn guard(&self, z: Complex64) -> Result<()> {
        match self.t.iter().position(|t| (z - t).norm() <= POLE_EXCLUSION) {
            Some(i) => Err(Error::PoleAtNode { index: i + 1 }),
            None => Ok(()),
        }
    }

    pub fn eval(&self, z: Complex64) -> Result<ThetaValue> {
        self.guard(z)?;
        let mut v = ThetaValue { t11: ONE, t12: ZERO, t21: ZERO, t22: ONE };
        for i in 0..self.t.len() {
            let ti = self.t[i].conj();
            let c = (z - self.tn) / ((ONE - z * ti) * (ONE - self.tn * ti));
            let (x, y, wb) = (self.xy.x[i], self.xy.y[i], self.w[i].conj());
            v.t11 += c * x;
            v.t12 -= c * y;
            v.t21 += c * wb * x;
            v.t22 -= c * wb * y;
        }
        Ok(v)
    }

    /// The interpolant through the linear fractional form with the constant
    /// parameter `w_n`.
    pub fn interpolant_value(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.eval(z)?.apply(self.wn))
    }

    /// Relative residual of
    /// `(J - Theta(z) J Theta(zeta)*) / (1 - z conj(zeta)) = R_z P^{-1} R_zeta*`
    /// where `R_z` has rows `1 / (1 - z conj(t_i))` and `conj(w_i) / (1 - z conj(t_i))`.
    pub fn j_identity_residual(&self, z: Complex64, zeta: Complex64) -> Result<f64> {
        let tz = self.eval(z)?.matrix();
        let tw = self.eval(zeta)?.matrix();
        let lhs = mul(mul(tz, jm()), star(tw));
        let den = ONE - z * zeta.conj();
        let k = self.t.len();
        let r = |u: Complex64| -> Vec<[Complex64; 2]> {
            (0..k)
                .map(|i| {
                    let s = ONE / (ONE - u * self.t[i].conj());
                    [s, self.w[i].conj() * s]
                })
                .collect()
        };
        let (rz, rw) = (r(z), r(zeta));
        let mut worst: f64 = 0.0;
        let mut scale: f64 = 1.0;
        for a in 0..2 {
            for b in 0..2 {
                let mut rhs = ZERO;
                for i in 0..k {
                    for j in 0..k {
                        rhs += rz[i][a] * self.inverse[i * k + j] * rw[j][b].conj();
                    }
                }
                let l = (jm()[a][b] - lhs[a][b]) / den;
                worst = worst.max((l - rhs).norm());
                scale = scale.max(rhs.norm());
            }
        }
        Ok(worst / scale)
    }

    /// Relative residual of
    /// `(J - Theta(zeta)* J Theta(z)) / (1 - z conj(zeta)) = B_zeta* P B_z`
    /// where `B_z` has columns `x_j / (1 - z conj(t_j))` and `-y_j / (1 - z conj(t_j))`.
    pub fn dual_j_identity_residual(&self, z: Complex64, zeta: Complex64) -> Result<f64> {
        let tz = self.eval(z)?.matrix();
        let tw = self.eval(zeta)?.matrix();
        let lhs = mul(mul(star(tw), jm()), tz);
        let den = ONE - z * zeta.conj();
        let k = self.t.len();
        let b = |u: Complex64| -> Vec<[Complex64; 2]> {
            (0..k)
                .map(|j| {
                    let s = ONE / (ONE - u * self.t[j].conj());
                    [self.xy.x[j] * s, -self.xy.y[j] * s]
                })
                .collect()
        };
        let (bz, bw) = (b(z), b(zeta));
        let mut worst: f64 = 0.0;
        let mut scale: f64 = 1.0;
        for a in 0..2 {
            for c in 0..2 {
                let mut rhs = ZERO;
                for i in 0..k {
                    for j in 0..k {
                        rhs += bw[i][a].conj() * self.pick[i * k + j] * bz[j][c];
                    }
                }
                let l = (jm()[a][c] - lhs[a][c]) / den;
                worst = worst.max((l - rhs).norm());
                scale = scale.max(rhs.norm());
            }
        }
        Ok(worst / scale)
    }
}
