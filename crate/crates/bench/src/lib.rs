//! Fixtures shared by the benchmarks.

use neil_core::cone::{counterexample_target, polar_grid, ConeProblem};
use neil_core::kernels::{ExtendedPoint, MatrixBlaschke, SampleSet};
use neil_core::linalg::HermitianMatrix;
use neil_core::{Complex64, ComplexMatrix};

/// Deterministic well-conditioned Hermitian matrix of size `n`.
pub fn hermitian(n: usize) -> HermitianMatrix {
    HermitianMatrix::from_fn(n, |i, j| {
        let s = (i * 7 + j * 3) as f64;
        let base = Complex64::new(s.sin(), (i as f64 - j as f64) * 0.1);
        if i == j {
            Complex64::new(n as f64 + s.cos(), 0.0)
        } else if i > j {
            base
        } else {
            base.conj()
        }
    })
}

/// The default counterexample on a `radii x angles` search grid.
pub fn counterexample_problem(radii: usize, angles: usize) -> ConeProblem {
    let set = SampleSet::default_six();
    let phi = MatrixBlaschke::counterexample();
    ConeProblem::new(counterexample_target(&phi, &set), polar_grid(radii, angles), None).expect("valid problem")
}

/// Diagonal-unitary variant, feasible once both zeros are on the grid.
pub fn diagonal_problem(radii: usize, angles: usize) -> ConeProblem {
    let set = SampleSet::default_six();
    let phi = MatrixBlaschke::new(Complex64::new(0.5, 0.0), Complex64::new(-0.5, 0.0), ComplexMatrix::identity(2))
        .expect("valid zeros");
    let mut grid = polar_grid(radii, angles);
    grid.push(ExtendedPoint::Disk(phi.lambda1()));
    grid.push(ExtendedPoint::Disk(phi.lambda2()));
    ConeProblem::new(counterexample_target(&phi, &set), grid, None).expect("valid problem")
}
