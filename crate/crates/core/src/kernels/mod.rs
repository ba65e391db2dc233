//! Blaschke factors, test functions, Szegő kernels and the block kernels built from them.

mod functions;
mod points;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, HermitianMatrix};

pub use functions::{blaschke, norm_szego, szego, test_fn, MatrixBlaschke};
pub use points::{ExtendedPoint, SampleSet, DISK_MARGIN, MIN_SEPARATION};

/// Zero threshold used by [`diagonality_test`].
pub const DIAGONAL_TOL: f64 = 1e-10;

/// Block kernel on a sample set, stored flat: block `(i, j)` sits at rows
/// `i*d..(i+1)*d`, columns `j*d..(j+1)*d`.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixKernel {
    sample_set: SampleSet,
    block_dim: usize,
    flat: HermitianMatrix,
}

impl MatrixKernel {
    pub fn new(sample_set: SampleSet, block_dim: usize, flat: HermitianMatrix) -> Result<Self> {
        if block_dim == 0 || flat.dim() != sample_set.len() * block_dim {
            return Err(Error::DimensionMismatch(format!(
                "kernel of dim {} on {} points with block size {}",
                flat.dim(),
                sample_set.len(),
                block_dim
            )));
        }
        Ok(MatrixKernel { sample_set, block_dim, flat })
    }

    /// Kernel whose `(i, j)` block is `f(i, j)`; only `i >= j` is queried.
    pub fn from_blocks(
        sample_set: SampleSet,
        block_dim: usize,
        mut f: impl FnMut(usize, usize) -> ComplexMatrix,
    ) -> Self {
        let n = sample_set.len();
        let d = block_dim;
        let mut m = ComplexMatrix::zeros(n * d, n * d);
        for i in 0..n {
            for j in 0..=i {
                let b = f(i, j);
                for a in 0..d {
                    for c in 0..d {
                        m[(i * d + a, j * d + c)] = b[(a, c)];
                        m[(j * d + c, i * d + a)] = b[(a, c)].conj();
                    }
                }
            }
        }
        let flat = HermitianMatrix::from_lower(&m).expect("square by construction");
        MatrixKernel { sample_set, block_dim, flat }
    }

    pub fn zeros(sample_set: SampleSet, block_dim: usize) -> Self {
        let n = sample_set.len() * block_dim;
        MatrixKernel { sample_set, block_dim, flat: HermitianMatrix::zeros(n) }
    }

    pub fn sample_set(&self) -> &SampleSet {
        &self.sample_set
    }

    pub fn block_dim(&self) -> usize {
        self.block_dim
    }

    pub fn flat(&self) -> &HermitianMatrix {
        &self.flat
    }

    pub fn dim(&self) -> usize {
        self.flat.dim()
    }

    pub fn block(&self, i: usize, j: usize) -> ComplexMatrix {
        self.flat.block(i, j, self.block_dim)
    }
}

/// `I - F(x_i) F(x_j)*` for square `d x d` values `F(x_i)`.
pub fn sigma_kernel(f_values: &[ComplexMatrix], sample_set: &SampleSet) -> Result<MatrixKernel> {
    if f_values.len() != sample_set.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} values for {} sample points",
            f_values.len(),
            sample_set.len()
        )));
    }
    let d = f_values[0].rows();
    if f_values.iter().any(|f| f.rows() != d || f.cols() != d) {
        return Err(Error::DimensionMismatch("values must be square of equal size".into()));
    }
    if f_values.iter().any(|f| !f.is_finite()) {
        return Err(Error::NonFinite);
    }
    let id = ComplexMatrix::identity(d);
    Ok(MatrixKernel::from_blocks(sample_set.clone(), d, |i, j| {
        &id - &f_values[i].matmul(&f_values[j].adjoint())
    }))
}

/// Scalar kernel `1 - w_i conj(w_j)`.
pub fn scalar_sigma_kernel(values: &[Complex64], sample_set: &SampleSet) -> Result<MatrixKernel> {
    let f: Vec<ComplexMatrix> = values.iter().map(|&w| ComplexMatrix::from_diag(&[w])).collect();
    sigma_kernel(&f, sample_set)
}

/// Diagonal of `D_lambda`: entry `i*d + a` equals `test_fn(lambda, x_i)`.
pub fn generator_diag_values(lambda: &ExtendedPoint, sample_set: &SampleSet, d: usize) -> Vec<Complex64> {
    sample_set
        .points()
        .iter()
        .flat_map(|&x| std::iter::repeat_n(test_fn(lambda, x), d))
        .collect()
}

pub fn generator_diag(lambda: &ExtendedPoint, sample_set: &SampleSet, d: usize) -> ComplexMatrix {
    ComplexMatrix::from_diag(&generator_diag_values(lambda, sample_set, d))
}

/// `(I - Phi(x_i) Phi(x_j)*) / (1 - x_i conj(x_j))`.
pub fn defect_kernel(phi: &MatrixBlaschke, sample_set: &SampleSet) -> MatrixKernel {
    let values: Vec<ComplexMatrix> = sample_set.points().iter().map(|&x| phi.phi_eval(x)).collect();
    let xs = sample_set.points();
    let id = ComplexMatrix::identity(2);
    MatrixKernel::from_blocks(sample_set.clone(), 2, |i, j| {
        (&id - &values[i].matmul(&values[j].adjoint())).scale(szego(xs[i], xs[j]))
    })
}

/// True when `U` is diagonal or anti-diagonal.
pub fn diagonality_test(phi: &MatrixBlaschke) -> bool {
    let u = phi.u();
    let small = |a: usize, b: usize| u[(a, b)].norm() < DIAGONAL_TOL;
    (small(0, 1) && small(1, 0)) || (small(0, 0) && small(1, 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{herm_eig, min_eig, op_norm};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn diag_phi() -> MatrixBlaschke {
        MatrixBlaschke::new(c(0.5, 0.0), c(-0.5, 0.0), ComplexMatrix::identity(2)).unwrap()
    }

    #[test]
    fn blaschke_examples() {
        assert_eq!(blaschke(c(0.0, 0.0), c(0.5, 0.0)).unwrap(), c(0.5, 0.0));
        assert_eq!(blaschke(c(0.5, 0.0), c(0.5, 0.0)).unwrap(), c(0.0, 0.0));
        let z = Complex64::from_polar(1.0, std::f64::consts::PI / 7.0);
        assert!((blaschke(c(0.3, 0.0), z).unwrap().norm() - 1.0).abs() < 1e-12);
        assert!(matches!(blaschke(c(1.0, 0.0), z), Err(Error::OutsideDisk { .. })));
    }

    #[test]
    fn test_fn_examples() {
        let half = c(0.5, 0.0);
        assert!((test_fn(&ExtendedPoint::Disk(c(0.0, 0.0)), half) - c(0.125, 0.0)).norm() < 1e-15);
        assert_eq!(test_fn(&ExtendedPoint::Infinity, half), c(0.25, 0.0));
        assert_eq!(test_fn(&ExtendedPoint::Disk(c(0.2, 0.4)), c(0.0, 0.0)), c(0.0, 0.0));
    }

    #[test]
    fn szego_examples() {
        assert_eq!(szego(c(0.0, 0.0), c(0.3, -0.7)), c(1.0, 0.0));
        assert_eq!(norm_szego(c(0.0, 0.0), c(0.3, 0.1)), c(1.0, 0.0));
    }

    #[test]
    fn extended_point_rejects_boundary() {
        assert!(ExtendedPoint::real(0.999_999_999_5).is_err());
        assert!(ExtendedPoint::real(0.999).is_ok());
    }

    #[test]
    fn sample_set_validation() {
        assert!(SampleSet::new(vec![c(0.1, 0.0), c(0.1, 0.0)]).is_err());
        assert!(SampleSet::new(vec![c(1.0, 0.0)]).is_err());
        assert_eq!(SampleSet::default_six().len(), 6);
    }

    #[test]
    fn phi_examples() {
        let phi = MatrixBlaschke::counterexample();
        for k in 0..16 {
            let z = Complex64::from_polar(1.0, k as f64 * 0.4);
            let p = phi.phi_eval(z);
            assert!(p.adjoint().matmul(&p).distance(&ComplexMatrix::identity(2)) < 1e-12);
        }
        for l in [phi.lambda1(), phi.lambda2()] {
            let p = phi.phi_eval(l);
            let det = p[(0, 0)] * p[(1, 1)] - p[(0, 1)] * p[(1, 0)];
            assert!(det.norm() < 1e-12);
        }
        assert_eq!(phi.f_eval(c(0.0, 0.0)).max_abs(), 0.0);
    }

    #[test]
    fn phi_rejects_bad_parameters() {
        assert!(MatrixBlaschke::with_default_u(c(0.5, 0.0), c(0.5, 0.0)).is_err());
        assert!(MatrixBlaschke::with_default_u(c(0.0, 0.0), c(0.5, 0.0)).is_err());
        let bad = ComplexMatrix::from_real(&[&[1.0, 1.0], &[0.0, 1.0]]).unwrap();
        assert!(matches!(MatrixBlaschke::new(c(0.5, 0.0), c(-0.5, 0.0), bad), Err(Error::NotUnitary { .. })));
    }

    #[test]
    fn sigma_of_zero_is_identity_blocks() {
        let set = SampleSet::default_six();
        let k = sigma_kernel(&vec![ComplexMatrix::zeros(2, 2); 6], &set).unwrap();
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(k.block(i, j), ComplexMatrix::identity(2));
            }
        }
    }

    #[test]
    fn sigma_rows_at_origin_are_identity() {
        let set = SampleSet::default_six();
        let phi = MatrixBlaschke::counterexample();
        let f: Vec<_> = set.points().iter().map(|&x| phi.f_eval(x)).collect();
        let k = sigma_kernel(&f, &set).unwrap();
        for j in 0..6 {
            assert!(k.block(0, j).distance(&ComplexMatrix::identity(2)) < 1e-15);
        }
    }

    #[test]
    fn sigma_of_diagonal_f_splits() {
        let set = SampleSet::default_six();
        let phi = diag_phi();
        let f: Vec<_> = set.points().iter().map(|&x| phi.f_eval(x)).collect();
        let k = sigma_kernel(&f, &set).unwrap();
        let p1 = ExtendedPoint::Disk(phi.lambda1());
        let p2 = ExtendedPoint::Disk(phi.lambda2());
        let xs = set.points();
        for i in 0..6 {
            for j in 0..6 {
                let a = 1.0 - test_fn(&p1, xs[i]) * test_fn(&p1, xs[j]).conj();
                let b = 1.0 - test_fn(&p2, xs[i]) * test_fn(&p2, xs[j]).conj();
                let expect = ComplexMatrix::from_diag(&[a, b]);
                assert!(k.block(i, j).distance(&expect) < 1e-12);
            }
        }
    }

    #[test]
    fn generator_diag_examples() {
        let set = SampleSet::default_six();
        let d = generator_diag_values(&ExtendedPoint::Infinity, &set, 2);
        for (i, x) in set.points().iter().enumerate() {
            assert_eq!(d[2 * i], x * x);
            assert_eq!(d[2 * i + 1], x * x);
        }
        assert_eq!(d[0], c(0.0, 0.0));
        let one = SampleSet::new(vec![c(0.4, 0.2)]).unwrap();
        let g = generator_diag(&ExtendedPoint::Disk(c(0.0, 0.0)), &one, 1);
        assert!((g[(0, 0)] - c(0.4, 0.2).powu(3)).norm() < 1e-15);
    }

    #[test]
    fn defect_kernel_has_rank_two() {
        let set = SampleSet::default_six();
        let k = defect_kernel(&MatrixBlaschke::counterexample(), &set);
        let e = herm_eig(k.flat()).unwrap();
        assert!(e.min() >= -1e-10);
        let n = e.dim();
        assert!(e.values[n - 3] <= 1e-9 * e.values[n - 1]);
        assert!(e.values[n - 2] > 1e-6 * e.values[n - 1]);
    }

    #[test]
    fn defect_kernel_of_diagonal_phi() {
        let set = SampleSet::default_six();
        let phi = diag_phi();
        let k = defect_kernel(&phi, &set);
        let xs = set.points();
        for i in 0..6 {
            for j in 0..6 {
                let a = norm_szego(phi.lambda1(), xs[i]) * norm_szego(phi.lambda1(), xs[j]).conj();
                let b = norm_szego(phi.lambda2(), xs[i]) * norm_szego(phi.lambda2(), xs[j]).conj();
                assert!(k.block(i, j).distance(&ComplexMatrix::from_diag(&[a, b])) < 1e-12);
            }
        }
        assert!(min_eig(k.flat()).unwrap() >= -1e-10);
    }

    #[test]
    fn diagonality_examples() {
        assert!(diagonality_test(&diag_phi()));
        assert!(!diagonality_test(&MatrixBlaschke::counterexample()));
        let swap = ComplexMatrix::from_real(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        let phi = MatrixBlaschke::new(c(0.5, 0.0), c(-0.5, 0.0), swap.clone()).unwrap();
        assert!(diagonality_test(&phi));
        // Anti-diagonal U: Phi = swap * diag(1, b1 b2).
        for z in [c(0.1, 0.2), c(-0.4, 0.0), c(0.0, 0.7), c(0.3, -0.3), c(0.9, 0.0)] {
            let b1 = blaschke(phi.lambda1(), z).unwrap();
            let b2 = blaschke(phi.lambda2(), z).unwrap();
            let expect = swap.matmul(&ComplexMatrix::from_diag(&[c(1.0, 0.0), b1 * b2]));
            assert!(phi.phi_eval(z).distance(&expect) < 1e-14);
        }
    }

    #[test]
    fn f_is_contractive_inside_and_unitary_on_circle() {
        let phi = MatrixBlaschke::counterexample();
        for k in 0..256 {
            let t = std::f64::consts::TAU * k as f64 / 256.0;
            let z = Complex64::from_polar(1.0, t);
            assert!((op_norm(&phi.f_eval(z)).unwrap() - 1.0).abs() < 1e-12);
            let w = Complex64::from_polar(0.95 * (k % 7) as f64 / 6.0, t);
            assert!(op_norm(&phi.f_eval(w)).unwrap() <= 1.0 + 1e-12);
        }
    }
}
