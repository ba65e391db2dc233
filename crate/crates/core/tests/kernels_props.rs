mod common;

use common::*;
use neil_core::kernels::*;
use neil_core::linalg::{herm_eig, op_norm};
use neil_core::{Complex64, ComplexMatrix};
use proptest::prelude::*;

fn random_phi(seed: u64) -> MatrixBlaschke {
    let mut r = rng(seed);
    loop {
        let l1 = random_disk_point(&mut r, 0.9);
        let l2 = random_disk_point(&mut r, 0.9);
        let u = random_unitary(&mut r, 2);
        if l1.norm() < 0.05 || l2.norm() < 0.05 || (l1 - l2).norm() < 0.05 {
            continue;
        }
        if let Ok(phi) = MatrixBlaschke::new(l1, l2, u) {
            return phi;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn blaschke_is_unimodular_on_circle(seed in any::<u64>(), t in 0.0..std::f64::consts::TAU) {
        let mut r = rng(seed);
        let l = random_disk_point(&mut r, 0.99);
        let z = Complex64::from_polar(1.0, t);
        prop_assert!((blaschke(l, z).unwrap().norm() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn test_fn_bounded_by_square(seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = random_disk_point(&mut r, 0.999);
        let lam = random_disk_point(&mut r, 0.999);
        for p in [ExtendedPoint::Disk(lam), ExtendedPoint::Infinity] {
            prop_assert!(test_fn(&p, x).norm() <= x.norm_sqr() * (1.0 + 1e-12));
        }
    }

    #[test]
    fn szego_factorization(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (x, y, l) = (random_disk_point(&mut r, 0.95), random_disk_point(&mut r, 0.95), random_disk_point(&mut r, 0.95));
        let lhs = (1.0 - blaschke(l, x).unwrap() * blaschke(l, y).unwrap().conj()) * szego(x, y);
        let rhs = norm_szego(l, x) * norm_szego(l, y).conj();
        prop_assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + rhs.norm()));
    }

    #[test]
    fn szego_gram_is_invertible(seed in any::<u64>(), n in 1usize..=8) {
        let mut r = rng(seed);
        let pts: Vec<Complex64> = (0..n).map(|_| random_disk_point(&mut r, 0.9)).collect();
        prop_assume!(SampleSet::new(pts.clone()).is_ok());
        let g = ComplexMatrix::from_fn(n, n, |i, j| szego(pts[i], pts[j]));
        let e = herm_eig(&neil_core::HermitianMatrix::symmetrize(&g).unwrap()).unwrap();
        prop_assert!(e.min() > 0.0);
    }

    #[test]
    fn defect_kernel_rank_two(seed in any::<u64>()) {
        let phi = random_phi(seed);
        prop_assume!(!diagonality_test(&phi));
        let k = defect_kernel(&phi, &SampleSet::default_six());
        let e = herm_eig(k.flat()).unwrap();
        let n = e.dim();
        prop_assert!(e.min() >= -1e-10 * e.max());
        prop_assert!(e.values[n - 3] <= 1e-9 * e.values[n - 1]);
    }

    #[test]
    fn f_norm_on_disk_and_circle(seed in any::<u64>(), t in 0.0..std::f64::consts::TAU, rad in 0.0..1.0f64) {
        let phi = random_phi(seed);
        prop_assert!(op_norm(&phi.f_eval(Complex64::from_polar(rad, t))).unwrap() <= 1.0 + 1e-12);
        prop_assert!((op_norm(&phi.f_eval(Complex64::from_polar(1.0, t))).unwrap() - 1.0).abs() <= 1e-12);
    }
}
