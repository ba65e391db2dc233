use num_complex::Complex64;

use super::points::ExtendedPoint;
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

/// Disk automorphism `(z - lambda) / (1 - conj(lambda) z)`.
pub fn blaschke(lambda: Complex64, z: Complex64) -> Result<Complex64> {
    if lambda.norm() >= 1.0 {
        return Err(Error::OutsideDisk { modulus: lambda.norm() });
    }
    Ok(blaschke_unchecked(lambda, z))
}

pub(crate) fn blaschke_unchecked(lambda: Complex64, z: Complex64) -> Complex64 {
    (z - lambda) / (1.0 - lambda.conj() * z)
}

/// `z^2 * blaschke(lambda, z)`, and `z^2` at infinity.
pub fn test_fn(lambda: &ExtendedPoint, z: Complex64) -> Complex64 {
    let z2 = z * z;
    match lambda {
        ExtendedPoint::Disk(c) => z2 * blaschke_unchecked(*c, z),
        ExtendedPoint::Infinity => z2,
    }
}

pub fn szego(x: Complex64, y: Complex64) -> Complex64 {
    1.0 / (1.0 - x * y.conj())
}

/// `sqrt(1 - |lambda|^2) / (1 - conj(lambda) x)`.
pub fn norm_szego(lambda: Complex64, x: Complex64) -> Complex64 {
    (1.0 - lambda.norm_sqr()).sqrt() / (1.0 - lambda.conj() * x)
}

/// Two-zero matrix inner function `diag(b1, 1) U diag(1, b2)` with `b_j = blaschke(lambda_j, .)`.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixBlaschke {
    lambda1: Complex64,
    lambda2: Complex64,
    u: ComplexMatrix,
}

impl MatrixBlaschke {
    pub fn new(lambda1: Complex64, lambda2: Complex64, u: ComplexMatrix) -> Result<Self> {
        for l in [lambda1, lambda2] {
            if !l.is_finite() {
                return Err(Error::NonFinite);
            }
            if l.norm() >= 1.0 {
                return Err(Error::OutsideDisk { modulus: l.norm() });
            }
            if l.norm() == 0.0 {
                return Err(Error::InvalidInput("zeros must be nonzero".into()));
            }
        }
        if (lambda1 - lambda2).norm() < 1e-12 {
            return Err(Error::InvalidInput("zeros must be distinct".into()));
        }
        if u.rows() != 2 || u.cols() != 2 {
            return Err(Error::DimensionMismatch(format!("U must be 2x2, got {}x{}", u.rows(), u.cols())));
        }
        let deviation = u.adjoint().matmul(&u).distance(&ComplexMatrix::identity(2));
        if deviation > 1e-12 {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(MatrixBlaschke { lambda1, lambda2, u })
    }

    /// `(1/sqrt 2) [[1, 1], [1, -1]]`.
    pub fn hadamard() -> ComplexMatrix {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        ComplexMatrix::from_real(&[&[s, s], &[s, -s]]).unwrap()
    }

    pub fn with_default_u(lambda1: Complex64, lambda2: Complex64) -> Result<Self> {
        Self::new(lambda1, lambda2, Self::hadamard())
    }

    /// Zeros at 1/2 and -1/2 with the Hadamard unitary.
    pub fn counterexample() -> Self {
        Self::with_default_u(Complex64::new(0.5, 0.0), Complex64::new(-0.5, 0.0)).unwrap()
    }

    pub fn lambda1(&self) -> Complex64 {
        self.lambda1
    }

    pub fn lambda2(&self) -> Complex64 {
        self.lambda2
    }

    pub fn u(&self) -> &ComplexMatrix {
        &self.u
    }

    pub fn phi_eval(&self, z: Complex64) -> ComplexMatrix {
        let b1 = blaschke_unchecked(self.lambda1, z);
        let b2 = blaschke_unchecked(self.lambda2, z);
        let u = &self.u;
        ComplexMatrix::from_fn(2, 2, |i, j| {
            let left = if i == 0 { b1 } else { Complex64::new(1.0, 0.0) };
            let right = if j == 1 { b2 } else { Complex64::new(1.0, 0.0) };
            left * u[(i, j)] * right
        })
    }

    /// `z^2 Phi(z)`.
    pub fn f_eval(&self, z: Complex64) -> ComplexMatrix {
        self.phi_eval(z).scale(z * z)
    }
}
