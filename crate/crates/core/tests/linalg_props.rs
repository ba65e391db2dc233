mod common;

use common::*;
use neil_core::linalg::{herm_eig, min_eig, op_norm, psd_project, rank_factor};
use neil_core::{Complex64, ComplexMatrix};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn eig_reconstructs(seed in any::<u64>(), n in 1usize..=64) {
        let mut r = rng(seed);
        let h = random_hermitian(&mut r, n);
        let e = herm_eig(&h).unwrap();
        let err = e.reconstruct().as_matrix().distance(h.as_matrix());
        prop_assert!(err <= 1e-10 * (1.0 + h.frobenius_norm()), "err {err}");
        let lam: Vec<Complex64> = e.values.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        let res = h.as_matrix().matmul(&e.vectors).distance(&e.vectors.diag_mul_right(&lam));
        prop_assert!(res <= 1e-11 * (1.0 + h.frobenius_norm()), "res {res}");
        let vv = e.vectors.adjoint().matmul(&e.vectors);
        prop_assert!(vv.distance(&ComplexMatrix::identity(n)) <= 1e-11);
        prop_assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn op_norm_invariances(seed in any::<u64>(), m in 1usize..8, n in 1usize..8) {
        let mut r = rng(seed);
        let a = random_matrix(&mut r, m, n);
        let base = op_norm(&a).unwrap();
        prop_assert!((op_norm(&a.adjoint()).unwrap() - base).abs() <= 1e-10 * (1.0 + base));
        let u = random_unitary(&mut r, m);
        let v = random_unitary(&mut r, n);
        let rotated = op_norm(&u.matmul(&a).matmul(&v)).unwrap();
        prop_assert!((rotated - base).abs() <= 1e-10 * (1.0 + base));
    }

    #[test]
    fn psd_project_is_idempotent(seed in any::<u64>(), n in 1usize..12) {
        let mut r = rng(seed);
        let p = psd_project(&random_hermitian(&mut r, n)).unwrap();
        prop_assert!(min_eig(&p).unwrap() >= -1e-12);
        let pp = psd_project(&p).unwrap();
        prop_assert!(pp.as_matrix().distance(p.as_matrix()) <= 1e-12 * (1.0 + p.frobenius_norm()));
    }

    #[test]
    fn rank_factor_round_trip(seed in any::<u64>(), n in 1usize..12, k in 0usize..12) {
        let rank = k.min(n);
        let mut r = rng(seed);
        let h = random_psd(&mut r, n, rank);
        let tol = 1e-9 * (1.0 + h.frobenius_norm());
        let e = rank_factor(&h, tol).unwrap();
        prop_assert_eq!(e.cols(), rank);
        let err = e.matmul(&e.adjoint()).distance(h.as_matrix());
        prop_assert!(err <= tol * n as f64, "err {err}");
    }
}
