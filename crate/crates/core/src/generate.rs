//! Seeded random problem instances, shared by the CLI and the test suites.

use std::f64::consts::TAU;

use rand::Rng;

use crate::pick::{is_admissible, p_entry};
use crate::problem::{BoundaryData, GammaTuple, UnitPoint};

/// Smallest angular gap between generated nodes.
pub const MIN_GAP: f64 = 0.05;

/// Which kind of instance to draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemKind {
    /// Independent random nodes and targets.
    Random,
    /// Targets equal to the nodes.
    FixedPoint,
    /// Targets run clockwise while nodes run counter-clockwise, so no
    /// triple shares orientation.
    Reversed,
}

/// `n` sorted angles in `[0, 2pi)` pairwise at least [`MIN_GAP`] apart
/// (cyclically).
pub fn separated_angles<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    assert!(n as f64 * MIN_GAP < TAU, "too many points for the minimum gap");
    loop {
        let mut a: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..TAU)).collect();
        a.sort_by(f64::total_cmp);
        let ok = a.windows(2).all(|w| w[1] - w[0] >= MIN_GAP) && (n < 2 || a[0] + TAU - a[n - 1] >= MIN_GAP);
        if ok {
            return a;
        }
    }
}

/// A problem with `n` counter-clockwise nodes.
pub fn random_problem<R: Rng>(rng: &mut R, n: usize, kind: ProblemKind) -> BoundaryData {
    let nodes = separated_angles(rng, n);
    let targets = match kind {
        ProblemKind::Random => (0..n).map(|_| rng.random_range(0.0..TAU)).collect(),
        ProblemKind::FixedPoint => nodes.clone(),
        ProblemKind::Reversed => {
            let mut t = separated_angles(rng, n);
            t.reverse();
            t
        }
    };
    BoundaryData::from_angles(&nodes, &targets).expect("generated nodes are separated")
}

/// `1 + max_i sum_{j != i} |p_ij|` over the first `n - 1` points: a diagonal
/// that makes the Pick matrix strictly diagonally dominant.
pub fn dominant_diagonal(data: &BoundaryData) -> f64 {
    let k = data.n() - 1;
    let row = |i: usize| (0..k).filter(|&j| j != i).map(|j| p_entry(data, i, j).norm()).sum::<f64>();
    1.0 + (0..k).map(row).fold(0.0, f64::max)
}

/// A random admissible tuple: each entry is the dominant diagonal scaled by a
/// factor in `[0.2, 3)`, redrawn until the Pick matrix is positive definite.
pub fn random_admissible_gamma<R: Rng>(rng: &mut R, data: &BoundaryData) -> GammaTuple {
    let base = dominant_diagonal(data);
    let k = data.n() - 1;
    loop {
        let g = GammaTuple::new((0..k).map(|_| base * rng.random_range(0.2..3.0)).collect()).expect("positive");
        if is_admissible(data, &g) {
            return g;
        }
    }
}

/// Unit points at the given angles.
pub fn unit_points(angles: &[f64]) -> Vec<UnitPoint> {
    angles.iter().map(|&a| UnitPoint::from_angle(a)).collect()
}
