use num_complex::Complex64;

use super::matrix::{ComplexMatrix, HermitianMatrix};
use crate::error::{Error, Result};

/// Sweep cap for the cyclic Jacobi iteration.
pub const MAX_SWEEPS: usize = 100;

/// Eigendecomposition `H = V diag(values) V*` with ascending eigenvalues.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn min(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    pub fn max(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    /// `V f(diag) V*`.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> HermitianMatrix {
        let n = self.dim();
        let mapped: Vec<f64> = self.values.iter().map(|&x| f(x)).collect();
        HermitianMatrix::from_fn(n, |i, j| {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..n {
                if mapped[k] != 0.0 {
                    acc += self.vectors[(i, k)] * self.vectors[(j, k)].conj() * mapped[k];
                }
            }
            acc
        })
    }

    pub fn reconstruct(&self) -> HermitianMatrix {
        self.reconstruct_with(|x| x)
    }
}

/// Cyclic Jacobi eigensolver for complex Hermitian matrices.
///
/// Each rotation first removes the phase of the pivot `a_pq` with a diagonal
/// unitary, then applies the classical real Jacobi rotation. The sweep order
/// is fixed (row-major over the strict upper triangle), so results are
/// reproducible bit-for-bit.
pub fn herm_eig(h: &HermitianMatrix) -> Result<HermitianEigen> {
    let n = h.dim();
    let mut a: Vec<Complex64> = h.as_matrix().data().to_vec();
    let mut v = ComplexMatrix::identity(n);
    let scale = h.frobenius_norm();
    let tol = (n as f64 * f64::EPSILON).max(1e-15) * scale;

    let off_norm = |a: &[Complex64]| -> f64 {
        let mut s = 0.0;
        for p in 0..n {
            for q in 0..n {
                if p != q {
                    s += a[p * n + q].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    loop {
        let off = off_norm(&a);
        if off <= tol || scale == 0.0 {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NonConvergence { sweeps, off_norm: off });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                // Negligible pivots are zeroed once they fall below rounding of the diagonal.
                if sweeps > 4 && r < f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
                    a[p * n + q] = Complex64::new(0.0, 0.0);
                    a[q * n + p] = Complex64::new(0.0, 0.0);
                    continue;
                }
                let phase = apq / r; // e^{i phi}
                let theta = (aqq - app) / (2.0 * r);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // G = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] on (p, q); A <- G* A G.
                let pc = phase.conj();
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = akp * c - akq * pc * s;
                    a[k * n + q] = akp * s + akq * pc * c;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = apk * c - aqk * phase * s;
                    a[q * n + k] = apk * s + aqk * phase * c;
                }
                a[p * n + q] = Complex64::new(0.0, 0.0);
                a[q * n + p] = Complex64::new(0.0, 0.0);
                a[p * n + p] = Complex64::new(a[p * n + p].re, 0.0);
                a[q * n + q] = Complex64::new(a[q * n + q].re, 0.0);
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * c - vkq * pc * s;
                    v[(k, q)] = vkp * s + vkq * pc * c;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].re.total_cmp(&a[j * n + j].re).then(i.cmp(&j)));
    let values = order.iter().map(|&i| a[i * n + i].re).collect();
    let vectors = v.columns(order);
    Ok(HermitianEigen { values, vectors })
}

/// Largest singular value, from the top eigenvalue of `A* A`.
pub fn op_norm(a: &ComplexMatrix) -> Result<f64> {
    if a.rows() == 0 || a.cols() == 0 {
        return Ok(0.0);
    }
    let gram = if a.rows() < a.cols() { a.matmul(&a.adjoint()) } else { a.adjoint().matmul(a) };
    let eig = herm_eig(&HermitianMatrix::symmetrize(&gram)?)?;
    Ok(eig.max().max(0.0).sqrt())
}

pub fn min_eig(h: &HermitianMatrix) -> Result<f64> {
    Ok(herm_eig(h)?.min())
}

/// Frobenius-nearest positive semidefinite matrix (negative eigenvalues clipped).
pub fn psd_project(h: &HermitianMatrix) -> Result<HermitianMatrix> {
    let eig = herm_eig(h)?;
    if eig.min() >= 0.0 {
        return Ok(h.clone());
    }
    Ok(eig.reconstruct_with(|x| x.max(0.0)))
}
