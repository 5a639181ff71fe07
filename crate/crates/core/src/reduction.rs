//! Orientation of triples, construction of interpolants of degree at most
//! `n - 2`, and the rank lower bound on the degree of any rational solution.

use num_complex::Complex64;

use crate::blaschke::{is_blaschke_certificate, RationalFunction};
use crate::error::{Error, Result};
use crate::numerics::{cholesky, ComplexPolynomial, GeneralMatrix, HermitianMatrix, DEFAULT_RANK_TOL};
use crate::parametrization::{delta, node_residuals};
use crate::pick::{is_admissible, p_entry};
use crate::problem::{is_constant_problem, permuted, BoundaryData, GammaTuple, UnitPoint, DISTINCT_TOL};

/// Largest factor by which the free diagonal may grow during the doubling.
pub const MAX_SCALE_DOUBLINGS: i32 = 60;
/// Interpolation residual accepted for a minimal-degree candidate.
pub const CANDIDATE_RESIDUAL_TOL: f64 = 1e-8;

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

fn g_raw(z1: Complex64, z2: Complex64, z3: Complex64) -> f64 {
    let v = Complex64::new(0.0, -1.0) * (ONE - z1 * z2.conj()) * (ONE - z2 * z3.conj()) * (ONE - z3 * z1.conj());
    debug_assert!(v.im.abs() <= 1e-12 * v.norm().max(1.0));
    v.re
}

/// `G = -i (1 - z1 conj(z2)) (1 - z2 conj(z3)) (1 - z3 conj(z1))`, real and
/// positive exactly when the three points run counter-clockwise.
pub fn orientation_g(z1: UnitPoint, z2: UnitPoint, z3: UnitPoint) -> Result<f64> {
    let z = [z1.value(), z2.value(), z3.value()];
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        if (z[i] - z[j]).norm() <= DISTINCT_TOL {
            return Err(Error::DuplicatePoint(i + 1, j + 1));
        }
    }
    Ok(g_raw(z[0], z[1], z[2]))
}

/// Orientation of one triple of nodes against its targets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrientationReport {
    /// 1-based indices `i < j < k`.
    pub triple: (usize, usize, usize),
    pub g_nodes: f64,
    pub g_targets: f64,
    pub same_orientation: bool,
}

fn report(data: &BoundaryData, i: usize, j: usize, k: usize) -> OrientationReport {
    let g_nodes = g_raw(data.t(i), data.t(j), data.t(k));
    let w = [data.w(i), data.w(j), data.w(k)];
    let distinct = (w[0] - w[1]).norm() > DISTINCT_TOL
        && (w[0] - w[2]).norm() > DISTINCT_TOL
        && (w[1] - w[2]).norm() > DISTINCT_TOL;
    let g_targets = g_raw(w[0], w[1], w[2]);
    OrientationReport {
        triple: (i + 1, j + 1, k + 1),
        g_nodes,
        g_targets,
        same_orientation: distinct && g_nodes != 0.0 && g_targets / g_nodes > 0.0,
    }
}

/// Orientation reports for every triple, lexicographically.
pub fn orientation_evidence(data: &BoundaryData) -> Vec<OrientationReport> {
    let n = data.n();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                out.push(report(data, i, j, k));
            }
        }
    }
    out
}

/// First triple (lexicographic) whose distinct targets share the orientation
/// of their nodes; `None` when there is none, which is exactly when every
/// solution of degree at most `n - 1` has degree `n - 1`.
pub fn exists_degree_n_minus_2(data: &BoundaryData) -> Result<Option<OrientationReport>> {
    if is_constant_problem(data).is_some() {
        return Err(Error::ConstantProblem);
    }
    Ok(orientation_evidence(data).into_iter().find(|r| r.same_orientation))
}

/// Admissible tuple whose interpolant has degree at most `n - 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct Reduction {
    /// The problem re-enumerated so the oriented triple occupies the last
    /// three positions.
    pub data: BoundaryData,
    /// Tuple for the re-enumerated problem.
    pub gamma: GammaTuple,
    /// `data[k] = original[perm[k]]` (0-based).
    pub perm: Vec<usize>,
    /// The triple used, in the caller's indexing.
    pub triple: OrientationReport,
    /// Final scale of the free diagonal entries.
    pub scale: f64,
}

impl Reduction {
    /// The tuple listed by original index. The node moved to the last
    /// position carries no parameter and reads `None`.
    pub fn original_gamma(&self) -> Vec<Option<f64>> {
        let n = self.perm.len();
        let mut out = vec![None; n];
        for (k, &p) in self.perm.iter().enumerate().take(n - 1) {
            out[p] = Some(self.gamma.values()[k]);
        }
        out
    }
}

/// Picks an oriented triple, moves it to the end, and assigns the diagonal so
/// the second-to-last coefficient `Delta_{n-1}` vanishes.
///
/// With `P` the Pick block on the first `n - 3` points (diagonal `s`), `b, c, d`
/// the columns of Pick entries against the triple, and
/// `q = p_{n-1,n-2} p_{n-2,n} / p_{n-1,n} > 0`, the scale `s` doubles until
/// `P > 0`, `K = P - d c* / p_{n-1,n}` is invertible, `b* P^{-1} b < q/3` and
/// `|X| < q/3` with `X = (b* - (p_{n-2,n}/p_{n-1,n}) c*) K^{-1} (b - d p_{n-1,n-2}/p_{n-1,n})`.
/// Then `gamma_{n-2} = q + X` and
/// `gamma_{n-1} = c* P^{-1} c + (3/q) |p_{n-1,n-2} - c* P^{-1} b|^2 + 1`.
pub fn reducing_gamma(data: &BoundaryData) -> Result<Reduction> {
    let triple = exists_degree_n_minus_2(data)?.ok_or(Error::NoOrientedTriple)?;
    let n = data.n();
    let (ti, tj, tk) = (triple.triple.0 - 1, triple.triple.1 - 1, triple.triple.2 - 1);
    let mut perm: Vec<usize> = (0..n).filter(|&x| x != ti && x != tj && x != tk).collect();
    perm.extend([ti, tj, tk]);
    let d = permuted(data, &perm);

    let m = n - 3;
    let (a, bb, cc) = (n - 3, n - 2, n - 1);
    let p = |i: usize, j: usize| p_entry(&d, i, j);
    let q_c = p(bb, a) * p(a, cc) / p(bb, cc);
    if !(q_c.re > 0.0) || q_c.im.abs() > 1e-8 * q_c.norm() {
        return Err(Error::NumericalFailure(format!("triple quotient {q_c} is not positive")));
    }
    let q = q_c.re;
    let col_b: Vec<Complex64> = (0..m).map(|i| p(i, a)).collect();
    let col_c: Vec<Complex64> = (0..m).map(|i| p(i, bb)).collect();
    let col_d: Vec<Complex64> = (0..m).map(|i| p(i, cc)).collect();
    let ratio_ac = p(a, cc) / p(bb, cc);
    let ratio_ba = p(bb, a) / p(bb, cc);

    let max_p = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .map(|(i, j)| p(i, j).norm())
        .fold(0.0_f64, f64::max);
    let s0 = 10.0 * max_p.max(1.0);
    let dot = |u: &[Complex64], v: &[Complex64]| u.iter().zip(v).map(|(x, y)| x.conj() * y).sum::<Complex64>();

    let mut s = s0;
    for _ in 0..=MAX_SCALE_DOUBLINGS {
        let block = HermitianMatrix::from_lower(m, |i, j| if i == j { Complex64::new(s, 0.0) } else { p(i, j) });
        let accepted = (|| -> Option<(Complex64, f64)> {
            let chol = cholesky(&block).ok()?;
            let pinv_b = chol.solve(&col_b);
            let pinv_c = chol.solve(&col_c);
            let bpb = dot(&col_b, &pinv_b).re;
            if !(bpb < q / 3.0) {
                return None;
            }
            let k_mat = GeneralMatrix::from_fn(m, m, |i, j| block.get(i, j) - col_d[i] * col_c[j].conj() / p(bb, cc));
            let rhs: Vec<Complex64> = (0..m).map(|i| col_b[i] - col_d[i] * ratio_ba).collect();
            let sol = if m == 0 { Vec::new() } else { k_mat.lu().ok()?.solve(&rhs).ok()? };
            let left: Vec<Complex64> = (0..m).map(|i| col_b[i] - col_c[i] * ratio_ac.conj()).collect();
            let x = dot(&left, &sol);
            if !(x.norm() < q / 3.0) {
                return None;
            }
            let cpc = dot(&col_c, &pinv_c).re;
            let cpb = dot(&col_c, &pinv_b);
            Some((x, cpc + 3.0 / q * (p(bb, a) - cpb).norm_sqr() + 1.0))
        })();
        if let Some((x, g_b)) = accepted {
            let mut g = vec![s; m];
            g.push(q + x.re);
            g.push(g_b);
            let gamma = GammaTuple::new(g)?;
            if !is_admissible(&d, &gamma) {
                return Err(Error::NumericalFailure("constructed tuple is not admissible".into()));
            }
            if !delta(&d, &gamma)?.is_zero(bb) {
                return Err(Error::NumericalFailure("constructed tuple leaves Delta_{n-1} nonzero".into()));
            }
            return Ok(Reduction { data: d, gamma, perm, triple, scale: s });
        }
        s *= 2.0;
    }
    Err(Error::NumericalFailure(format!("diagonal scale exceeded 2^{MAX_SCALE_DOUBLINGS} times its start")))
}

/// Rank of the `r x r` block `[(1 - w_i conj(w_{r+j})) / (1 - t_i conj(t_{r+j}))]`,
/// `r = floor(n/2)`: no rational function of smaller degree interpolates.
///
/// The block is not Hermitian, so its rank is read from singular values with
/// the same relative cutoff used for eigenvalue ranks.
pub fn min_degree_lower_bound(data: &BoundaryData) -> usize {
    let r = data.n() / 2;
    GeneralMatrix::from_fn(r, r, |i, j| p_entry(data, i, r + j)).rank(DEFAULT_RANK_TOL)
}

/// A candidate solution of the minimal degree `q`.
#[derive(Debug, Clone)]
pub struct Candidate {
    pub q: usize,
    pub f: RationalFunction,
    /// Whether the boundary Schwarz-Pick test certifies a Blaschke product.
    pub certified: bool,
}

/// Solves `a(t_i) = w_i b(t_i)` for polynomials `a`, `b` of degree `q` from
/// the null space of the `n x (2q + 2)` coefficient system.
///
/// Returns `None` when `2q > n - 1`, when the null space is not
/// one-dimensional, when `b` vanishes at a node, or when the ratio fails to
/// reinterpolate. A rational solution of degree `q` is unique when it exists,
/// but it need not be a Blaschke product; `certified` reports which.
pub fn min_degree_candidate(data: &BoundaryData) -> Result<Option<Candidate>> {
    let n = data.n();
    let q = min_degree_lower_bound(data);
    if 2 * q > n - 1 {
        return Ok(None);
    }
    let sys = GeneralMatrix::from_fn(n, 2 * q + 2, |i, col| {
        let (k, sign) = if col <= q { (col, ONE) } else { (col - q - 1, -data.w(i)) };
        sign * data.t(i).powu(k as u32)
    });
    let ns = sys.null_space(DEFAULT_RANK_TOL);
    if ns.len() != 1 {
        return Ok(None);
    }
    let v = &ns[0];
    let a = ComplexPolynomial::new(v[..=q].to_vec());
    let b = ComplexPolynomial::new(v[q + 1..].to_vec());
    let b_scale = b.coeffs().iter().map(|c| c.norm()).sum::<f64>();
    if b.is_zero() || (0..n).any(|i| b.eval(data.t(i)).norm() <= 1e-8 * b_scale) {
        return Ok(None);
    }
    let f = RationalFunction::new(a, b)?.normalized();
    match node_residuals(&f, data) {
        Ok(r) if r.iter().all(|&x| x <= CANDIDATE_RESIDUAL_TOL) => {}
        _ => return Ok(None),
    }
    let certified = is_blaschke_certificate(&f, data).unwrap_or(false);
    Ok(Some(Candidate { q, f, certified }))
}
