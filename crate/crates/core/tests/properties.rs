mod common;

use std::f64::consts::TAU;

use boundary_blaschke::blaschke::{factorize, is_blaschke_certificate, unimodularity_check, winding_degree, BlaschkeFactorization};
use boundary_blaschke::generate::{random_admissible_gamma, random_problem, ProblemKind};
use boundary_blaschke::numerics::{cholesky, numerical_rank, poly_roots, ComplexPolynomial, HermitianMatrix};
use boundary_blaschke::parametrization::{interpolant, ThetaFunction};
use boundary_blaschke::pick::{
    inverse_stein_residual, p_entry, pick_matrix, pn_column, schwarz_pick_matrix, singular_extension_gamma_n,
    stein_residual, xy_columns,
};
use boundary_blaschke::problem::{sort_ccw, BoundaryData, GammaTuple, UnitPoint};
use boundary_blaschke::reduction::{exists_degree_n_minus_2, orientation_g, reducing_gamma};
use boundary_blaschke::special::{three_point, uniform_target};
use common::{cramer_delta, disk_points};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn instance(seed: u64, n: usize) -> (BoundaryData, GammaTuple) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = random_problem(&mut rng, n, ProblemKind::Random);
    let g = random_admissible_gamma(&mut rng, &d);
    (d, g)
}

fn cx() -> impl Strategy<Value = Complex64> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(a, b)| Complex64::new(a, b))
}

fn unit() -> impl Strategy<Value = UnitPoint> {
    (0.0..TAU).prop_map(UnitPoint::from_angle)
}

/// Distinct points with a minimum chordal gap.
fn separated(p: &[UnitPoint]) -> bool {
    (0..p.len()).all(|i| (i + 1..p.len()).all(|j| (p[i].value() - p[j].value()).norm() > 0.05))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cholesky_reconstructs_and_solves(order in 1usize..7, entries in prop::collection::vec(cx(), 49), rhs in prop::collection::vec(cx(), 7)) {
        let b = |i: usize, j: usize| entries[i * 7 + j];
        let a = HermitianMatrix::from_lower(order, |i, j| {
            let s: Complex64 = (0..order).map(|k| b(i, k) * b(j, k).conj()).sum();
            if i == j { s + 1.0 } else { s }
        });
        let chol = cholesky(&a).unwrap();
        prop_assert!(chol.reconstruct().max_abs_diff(&a) <= 1e-12 * a.norm_inf());
        let x = chol.solve(&rhs[..order]);
        let ax = a.matvec(&x);
        for (u, v) in ax.iter().zip(&rhs[..order]) {
            prop_assert!((u - v).norm() <= 1e-11 * a.norm_inf());
        }
        let eig_product: f64 = a.eigenvalues().iter().product();
        prop_assert!((chol.det() - eig_product).abs() <= 1e-10 * eig_product.abs());
    }

    #[test]
    fn roots_reexpand(roots in prop::collection::vec(cx(), 1..8)) {
        let p = ComplexPolynomial::from_roots(&roots);
        let found = poly_roots(&p).unwrap();
        prop_assert_eq!(found.len(), roots.len());
        let q = ComplexPolynomial::from_roots(&found);
        for (a, b) in p.coeffs().iter().zip(q.coeffs()) {
            prop_assert!((a - b).norm() <= 1e-8 * p.norm_inf());
        }
    }

    #[test]
    fn sort_ccw_is_idempotent(seed in any::<u64>(), n in 2usize..9) {
        let (d, _) = instance(seed, n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            perm.swap(i, rng.random_range(0..=i));
        }
        let shuffled = boundary_blaschke::problem::permuted(&d, &perm);
        let (s1, p1) = sort_ccw(&shuffled);
        let (s2, p2) = sort_ccw(&s1);
        prop_assert_eq!(&s1, &s2);
        prop_assert_eq!(p2, (0..n).collect::<Vec<_>>());
        for k in 0..n {
            prop_assert_eq!(s1.t(k), shuffled.t(p1[k]));
        }
    }

    #[test]
    fn stein_identity_holds_for_any_diagonal(seed in any::<u64>(), n in 2usize..9, diag in prop::collection::vec(-5.0..5.0f64, 8)) {
        let (d, _) = instance(seed, n);
        prop_assert!(stein_residual(&d, &diag[..n - 1]) <= 1e-12);
    }

    #[test]
    fn inverse_stein_and_xy_moduli(seed in any::<u64>(), n in 2usize..9) {
        let (d, g) = instance(seed, n);
        let (r, inv) = inverse_stein_residual(&d, &g).unwrap();
        let xy = xy_columns(&d, &g).unwrap();
        let xx = xy.x.iter().map(|x| x.norm_sqr()).fold(1.0, f64::max);
        prop_assert!(r <= 1e-12 * inv.max(xx));
        for (x, y) in xy.x.iter().zip(&xy.y) {
            prop_assert!((x.norm() - y.norm()).abs() <= 1e-12 * x.norm().max(1.0));
        }
    }

    #[test]
    fn interpolant_interpolates_with_predicted_degree(seed in any::<u64>(), n in 2usize..9) {
        let (d, g) = instance(seed, n);
        let fam = interpolant(&d, &g).unwrap();
        prop_assert!(fam.max_residual().unwrap() <= 1e-9);
        prop_assert!(unimodularity_check(&fam.f, 512) <= 1e-9);
        prop_assert_eq!(winding_degree(&fam.f).unwrap(), fam.predicted_degree as i64);
        prop_assert_eq!(factorize(&fam.f).unwrap().degree(), fam.predicted_degree);
        prop_assert!(is_blaschke_certificate(&fam.f, &d).unwrap());
    }

    #[test]
    fn schwarz_pick_matrix_extends_pick_matrix(seed in any::<u64>(), n in 2usize..8) {
        let (d, g) = instance(seed, n);
        let fam = interpolant(&d, &g).unwrap();
        let nodes: Vec<Complex64> = (0..n).map(|i| d.t(i)).collect();
        let sp = schwarz_pick_matrix(&fam.f, &nodes).unwrap();
        let p = pick_matrix(&d, &g).unwrap();
        let idx: Vec<usize> = (0..n - 1).collect();
        let block = sp.principal(&idx);
        prop_assert!(block.max_abs_diff(&p) <= 1e-7 * p.norm_inf());
        prop_assert_eq!(numerical_rank(&sp, 1e-9), fam.predicted_degree);
        let corner = singular_extension_gamma_n(&d, &g).unwrap();
        prop_assert!((sp.get(n - 1, n - 1).re - corner).abs() <= 1e-7 * corner.abs().max(1.0));
    }

    #[test]
    fn singular_extension_has_rank_n_minus_one(seed in any::<u64>(), n in 2usize..8) {
        let (d, g) = instance(seed, n);
        let p = pick_matrix(&d, &g).unwrap();
        let ext = p.bordered(&pn_column(&d), singular_extension_gamma_n(&d, &g).unwrap());
        prop_assert_eq!(numerical_rank(&ext, 1e-9), n - 1);
    }

    #[test]
    fn theta_identities(seed in any::<u64>(), n in 2usize..8) {
        let (d, g) = instance(seed, n);
        let th = ThetaFunction::new(&d, &g).unwrap();
        let fam = interpolant(&d, &g).unwrap();
        let pts = disk_points(4, seed % 97);
        for (k, &z) in pts.iter().enumerate() {
            let zeta = pts[(k + 1) % pts.len()];
            prop_assert!((th.eval(z).unwrap().det() - 1.0).norm() <= 1e-9);
            prop_assert!(th.j_identity_residual(z, zeta).unwrap() <= 1e-9);
            prop_assert!(th.dual_j_identity_residual(z, zeta).unwrap() <= 1e-9);
            prop_assert!((th.interpolant_value(z).unwrap() - fam.f.eval(z).unwrap()).norm() <= 1e-10);
        }
    }

    #[test]
    fn delta_bridge_and_cramer(seed in any::<u64>(), n in 2usize..8) {
        let (d, g) = instance(seed, n);
        let fam = interpolant(&d, &g).unwrap();
        let xy = xy_columns(&d, &g).unwrap();
        let (tn, wn) = (d.t(n - 1), d.w(n - 1));
        let cr = cramer_delta(&d, &g);
        let scale = cr.iter().map(|x| x.norm()).fold(0.0, f64::max);
        for i in 0..n - 1 {
            let di = fam.delta.values()[i];
            let bridge = xy.x[i] * wn - xy.y[i] - (tn.conj() - d.t(i).conj()) * di * wn;
            prop_assert!(bridge.norm() <= 1e-10 * xy.x[i].norm().max(1.0));
            prop_assert!((cr[i] - di).norm() <= 1e-8 * scale);
        }
    }

    #[test]
    fn factorize_inverts_expand(c in unit(), radii in prop::collection::vec(0.0..0.9f64, 0..7), angles in prop::collection::vec(0.0..TAU, 7)) {
        let zeros: Vec<Complex64> = radii.iter().zip(&angles).map(|(&r, &a)| Complex64::from_polar(r, a)).collect();
        prop_assume!((0..zeros.len()).all(|i| (i + 1..zeros.len()).all(|j| (zeros[i] - zeros[j]).norm() > 0.05)));
        let b = BlaschkeFactorization::new(c, zeros.clone()).unwrap();
        let f = b.expand();
        prop_assert_eq!(winding_degree(&f).unwrap(), zeros.len() as i64);
        let back = factorize(&f).unwrap();
        prop_assert_eq!(back.degree(), zeros.len());
        prop_assert!((back.constant().value() - c.value()).norm() <= 1e-8);
        for z in &zeros {
            prop_assert!(back.zeros().iter().any(|y| (y - z).norm() <= 1e-7));
        }
    }

    #[test]
    fn orientation_symmetries(a in unit(), b in unit(), c in unit(), u in unit()) {
        prop_assume!(separated(&[a, b, c]));
        let g = orientation_g(a, b, c).unwrap();
        prop_assert!((orientation_g(b, a, c).unwrap() + g).abs() <= 1e-12);
        prop_assert!((orientation_g(b, c, a).unwrap() - g).abs() <= 1e-12);
        let rot = |p: UnitPoint| UnitPoint::from_angle(p.angle() + u.angle());
        prop_assert!((orientation_g(rot(a), rot(b), rot(c)).unwrap() - g).abs() <= 1e-12);
    }

    #[test]
    fn pick_product_is_orientation_ratio(seed in any::<u64>()) {
        let (d, _) = instance(seed, 3);
        prop_assume!(separated(d.targets()));
        let prod = p_entry(&d, 0, 1) * p_entry(&d, 1, 2) * p_entry(&d, 2, 0);
        let gt = orientation_g(d.nodes()[0], d.nodes()[1], d.nodes()[2]).unwrap();
        let gw = orientation_g(d.targets()[0], d.targets()[1], d.targets()[2]).unwrap();
        prop_assert!((prod - gw / gt).norm() <= 1e-10 * prod.norm().max(1.0));
    }

    #[test]
    fn reduction_lowers_degree(seed in any::<u64>(), n in 3usize..8) {
        let (d, _) = instance(seed, n);
        prop_assume!(exists_degree_n_minus_2(&d).unwrap().is_some());
        let red = reducing_gamma(&d).unwrap();
        let fam = interpolant(&red.data, &red.gamma).unwrap();
        prop_assert!(fam.predicted_degree <= n - 2);
        prop_assert_eq!(winding_degree(&fam.f).unwrap(), fam.predicted_degree as i64);
    }

    #[test]
    fn special_cases_agree_with_general(seed in any::<u64>(), n in 2usize..7, w in 0.0..TAU, wn in 0.3..TAU - 0.3) {
        let (d3, g3) = instance(seed, 3);
        let a = three_point(&d3, &g3).unwrap();
        let b = interpolant(&d3, &g3).unwrap();
        for z in disk_points(4, seed % 31) {
            prop_assert!((a.f.eval(z).unwrap() - b.f.eval(z).unwrap()).norm() <= 1e-10);
        }

        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let nodes = boundary_blaschke::generate::separated_angles(&mut rng, n);
        let mut targets = vec![w; n];
        targets[n - 1] = w + wn;
        let d = BoundaryData::from_angles(&nodes, &targets).unwrap();
        let g = GammaTuple::new((0..n - 1).map(|_| rng.random_range(0.2..5.0)).collect()).unwrap();
        let u = uniform_target(&d, &g).unwrap();
        let gen = interpolant(&d, &g).unwrap();
        for z in disk_points(4, seed % 29) {
            prop_assert!((u.f.eval(z).unwrap() - gen.f.eval(z).unwrap()).norm() <= 1e-10);
        }
    }
}
