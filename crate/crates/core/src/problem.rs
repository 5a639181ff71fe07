//! The interpolation problem: unimodular nodes and targets, the free
//! parameter tuple, validation and counter-clockwise ordering.

use std::cmp::Ordering;
use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Allowed deviation of `|z|` from 1 before a point is rejected.
pub const UNIT_TOL: f64 = 1e-10;
/// Nodes closer than this (chordally) count as duplicates.
pub const DISTINCT_TOL: f64 = 1e-9;
/// Targets within this distance of each other count as equal.
pub const CONSTANT_TOL: f64 = 1e-10;

/// A point of the unit circle, stored with exact unit modulus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitPoint(Complex64);

impl UnitPoint {
    pub const ONE: UnitPoint = UnitPoint(Complex64 { re: 1.0, im: 0.0 });

    /// `None` unless `z` is finite and `||z| - 1| <= UNIT_TOL`.
    pub fn new(z: Complex64) -> Option<Self> {
        let r = z.norm();
        if !r.is_finite() || (r - 1.0).abs() > UNIT_TOL {
            return None;
        }
        Some(Self(z / r))
    }

    pub fn from_angle(theta: f64) -> Self {
        Self(Complex64::from_polar(1.0, theta))
    }

    pub fn value(self) -> Complex64 {
        self.0
    }

    pub fn conj(self) -> Self {
        Self(self.0.conj())
    }

    /// Argument in `[0, 2pi)`.
    pub fn angle(self) -> f64 {
        let a = self.0.arg();
        if a < 0.0 {
            (a + TAU) % TAU
        } else {
            a
        }
    }
}

impl From<UnitPoint> for Complex64 {
    fn from(p: UnitPoint) -> Self {
        p.0
    }
}

/// Which list a validation problem refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointList {
    Nodes,
    Targets,
}

impl fmt::Display for PointList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PointList::Nodes => "nodes",
            PointList::Targets => "targets",
        })
    }
}

/// A single reason the problem data is invalid. Indices are 1-based.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    DuplicateNode(usize, usize),
    NotUnimodular { index: usize, list: PointList },
    LengthMismatch { nodes: usize, targets: usize },
    TooFewPoints(usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateNode(i, j) => write!(f, "nodes {i} and {j} coincide"),
            Violation::NotUnimodular { index, list } => write!(f, "{list} entry {index} is not on the unit circle"),
            Violation::LengthMismatch { nodes, targets } => {
                write!(f, "{nodes} nodes but {targets} targets")
            }
            Violation::TooFewPoints(n) => write!(f, "need at least 2 points, got {n}"),
        }
    }
}

/// Every violation found in a candidate problem.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub struct ValidationError {
    pub violations: Vec<Violation>,
}

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("invalid problem: ")?;
        for (k, v) in self.violations.iter().enumerate() {
            if k > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Distinct unimodular nodes `t_1..t_n` with unimodular targets `w_1..w_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryData {
    nodes: Vec<UnitPoint>,
    targets: Vec<UnitPoint>,
}

/// Checks the raw problem and returns it in normalized form, or every
/// violation found.
pub fn validate(nodes: &[Complex64], targets: &[Complex64]) -> std::result::Result<BoundaryData, ValidationError> {
    let mut violations = Vec::new();
    if nodes.len() != targets.len() {
        violations.push(Violation::LengthMismatch { nodes: nodes.len(), targets: targets.len() });
    }
    if nodes.len().min(targets.len()) < 2 {
        violations.push(Violation::TooFewPoints(nodes.len().min(targets.len())));
    }
    let mut check = |list: &[Complex64], which: PointList| -> Vec<UnitPoint> {
        let mut out = Vec::with_capacity(list.len());
        for (i, &z) in list.iter().enumerate() {
            match UnitPoint::new(z) {
                Some(p) => out.push(p),
                None => {
                    violations.push(Violation::NotUnimodular { index: i + 1, list: which });
                    out.push(UnitPoint::ONE);
                }
            }
        }
        out
    };
    let t = check(nodes, PointList::Nodes);
    let w = check(targets, PointList::Targets);
    for i in 0..nodes.len() {
        for j in i + 1..nodes.len() {
            if (nodes[i] - nodes[j]).norm() <= DISTINCT_TOL {
                violations.push(Violation::DuplicateNode(i + 1, j + 1));
            }
        }
    }
    if violations.is_empty() {
        Ok(BoundaryData { nodes: t, targets: w })
    } else {
        Err(ValidationError { violations })
    }
}

impl BoundaryData {
    pub fn new(nodes: &[Complex64], targets: &[Complex64]) -> Result<Self> {
        Ok(validate(nodes, targets)?)
    }

    /// Nodes and targets given by their arguments in radians.
    pub fn from_angles(nodes: &[f64], targets: &[f64]) -> Result<Self> {
        let n: Vec<Complex64> = nodes.iter().map(|&a| Complex64::from_polar(1.0, a)).collect();
        let w: Vec<Complex64> = targets.iter().map(|&a| Complex64::from_polar(1.0, a)).collect();
        Self::new(&n, &w)
    }

    pub fn n(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[UnitPoint] {
        &self.nodes
    }

    pub fn targets(&self) -> &[UnitPoint] {
        &self.targets
    }

    /// Node `t_{i+1}` (0-based index).
    pub fn t(&self, i: usize) -> Complex64 {
        self.nodes[i].value()
    }

    /// Target `w_{i+1}` (0-based index).
    pub fn w(&self, i: usize) -> Complex64 {
        self.targets[i].value()
    }

    /// Same problem with every target multiplied by `u`.
    pub fn rotate_targets(&self, u: UnitPoint) -> Self {
        Self {
            nodes: self.nodes.clone(),
            targets: self.targets.iter().map(|w| UnitPoint(w.0 * u.0)).collect(),
        }
    }

    /// The problem with `f(t) = t` at every node.
    pub fn fixed_points(nodes: &[UnitPoint]) -> Result<Self> {
        let z: Vec<Complex64> = nodes.iter().map(|p| p.value()).collect();
        Self::new(&z, &z)
    }
}

/// Reorders so node arguments in `[0, 2pi)` strictly increase.
///
/// Returns the sorted data and `perm` with `sorted[k] = original[perm[k]]`.
pub fn sort_ccw(data: &BoundaryData) -> (BoundaryData, Vec<usize>) {
    let mut perm: Vec<usize> = (0..data.n()).collect();
    perm.sort_by(|&a, &b| {
        data.nodes[a]
            .angle()
            .partial_cmp(&data.nodes[b].angle())
            .unwrap_or(Ordering::Equal)
    });
    (permuted(data, &perm), perm)
}

/// `result[k] = data[perm[k]]` for nodes and targets alike.
pub fn permuted(data: &BoundaryData, perm: &[usize]) -> BoundaryData {
    BoundaryData {
        nodes: perm.iter().map(|&p| data.nodes[p]).collect(),
        targets: perm.iter().map(|&p| data.targets[p]).collect(),
    }
}

/// The common target when all targets agree.
pub fn is_constant_problem(data: &BoundaryData) -> Option<UnitPoint> {
    let w0 = data.targets[0];
    data.targets
        .iter()
        .all(|w| (w.0 - w0.0).norm() <= CONSTANT_TOL)
        .then_some(w0)
}

/// Positive parameters `gamma_1..gamma_{n-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaTuple(Vec<f64>);

impl GammaTuple {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        for (i, &v) in values.iter().enumerate() {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::NonPositiveGamma { index: i + 1, value: v });
            }
        }
        Ok(Self(values))
    }

    /// Same value in all `len` slots.
    pub fn uniform(len: usize, value: f64) -> Result<Self> {
        Self::new(vec![value; len])
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Errors unless the tuple fits a problem with `n` points.
    pub fn check_for(&self, data: &BoundaryData) -> Result<()> {
        if self.0.len() + 1 != data.n() {
            return Err(Error::GammaLength { expected: data.n() - 1, got: self.0.len() });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-14
    }

    #[test]
    fn validate_accepts_simple_problem() {
        let z = [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0)];
        assert!(validate(&z, &z).is_ok());
    }

    #[test]
    fn validate_rejects_off_circle_node() {
        let t = [c(1.0, 0.0), c(0.0, 1.0000000002), c(-1.0, 0.0)];
        let err = validate(&t, &t).unwrap_err();
        assert!(err.violations.contains(&Violation::NotUnimodular { index: 2, list: PointList::Nodes }));
        assert!(err.violations.contains(&Violation::NotUnimodular { index: 2, list: PointList::Targets }));
    }

    #[test]
    fn validate_reports_duplicates_and_lengths() {
        let t = [c(1.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)];
        let err = validate(&t, &t).unwrap_err();
        assert_eq!(err.violations, vec![Violation::DuplicateNode(1, 2)]);
        let err = validate(&t, &t[..2]).unwrap_err();
        assert!(err.violations.contains(&Violation::LengthMismatch { nodes: 3, targets: 2 }));
    }

    #[test]
    fn sort_ccw_examples() {
        let t = [c(-1.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)];
        let d = BoundaryData::new(&t, &t).unwrap();
        let (s, perm) = sort_ccw(&d);
        assert_eq!(perm, vec![1, 2, 0]);
        assert!(close(s.t(0), c(1.0, 0.0)) && close(s.t(1), c(0.0, 1.0)) && close(s.t(2), c(-1.0, 0.0)));
        assert!(close(s.w(2), c(-1.0, 0.0)));

        let (_, perm) = sort_ccw(&s);
        assert_eq!(perm, vec![0, 1, 2]);

        let d = BoundaryData::from_angles(&[0.0, 0.1, 6.0], &[0.0, 0.0, 1.0]).unwrap();
        let (s, perm) = sort_ccw(&d);
        assert_eq!(perm, vec![0, 1, 2]);
        assert_eq!(s, d);
    }

    #[test]
    fn constant_detection() {
        let t = [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0)];
        let i = c(0.0, 1.0);
        let d = BoundaryData::new(&t, &[i, i, i]).unwrap();
        assert!(close(is_constant_problem(&d).unwrap().value(), i));
        let d = BoundaryData::new(&t[..2], &[c(1.0, 0.0), i]).unwrap();
        assert!(is_constant_problem(&d).is_none());
        let near = c(1.0, 1e-12) / c(1.0, 1e-12).norm();
        let d = BoundaryData::new(&t[..2], &[c(1.0, 0.0), near]).unwrap();
        assert!(close(is_constant_problem(&d).unwrap().value(), c(1.0, 0.0)));
    }

    #[test]
    fn gamma_rejects_nonpositive() {
        assert_eq!(
            GammaTuple::new(vec![1.0, 0.0]),
            Err(Error::NonPositiveGamma { index: 2, value: 0.0 })
        );
    }
}
