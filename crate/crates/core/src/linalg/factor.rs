use num_complex::Complex64;

use super::eigen::herm_eig;
use super::matrix::{ComplexMatrix, HermitianMatrix};
use crate::error::{Error, Result};

/// Default relative rank tolerance (scaled by the largest eigenvalue).
pub const DEFAULT_RANK_TOL: f64 = 1e-9;

/// Absolute rank tolerance `DEFAULT_RANK_TOL * max(lambda_max, tiny)`.
pub fn default_rank_tol(h: &HermitianMatrix) -> Result<f64> {
    let top = herm_eig(h)?.max();
    Ok(DEFAULT_RANK_TOL * top.max(f64::MIN_POSITIVE))
}

/// Rotates `v` so that its largest-modulus entry is real and positive.
pub fn fix_phase(v: &mut [Complex64]) {
    let pivot = v
        .iter()
        .enumerate()
        .fold((0, 0.0), |acc, (i, z)| if z.norm() > acc.1 * (1.0 + 1e-12) { (i, z.norm()) } else { acc });
    if pivot.1 > 0.0 {
        let phase = v[pivot.0].conj() / pivot.1;
        for z in v.iter_mut() {
            *z *= phase;
        }
    }
}

/// Rank-revealing factor `E` with `H = E E*`.
///
/// Columns are `sqrt(lambda_k) v_k` for every eigenvalue above `tol`, ordered
/// by decreasing eigenvalue, each with its largest entry made real positive.
pub fn rank_factor(h: &HermitianMatrix, tol: f64) -> Result<ComplexMatrix> {
    let eig = herm_eig(h)?;
    if eig.min() < -tol {
        return Err(Error::Indefinite { eigenvalue: eig.min(), tol });
    }
    let n = h.dim();
    let keep: Vec<usize> = (0..n).rev().filter(|&k| eig.values[k] > tol).collect();
    let mut e = ComplexMatrix::zeros(n, keep.len());
    for (col, &k) in keep.iter().enumerate() {
        let mut v = eig.vectors.column(k);
        fix_phase(&mut v);
        let s = eig.values[k].sqrt();
        let scaled: Vec<Complex64> = v.iter().map(|z| z * s).collect();
        e.set_column(col, &scaled);
    }
    Ok(e)
}

/// `||V* V - I||_F`.
pub fn isometry_defect(v: &ComplexMatrix) -> f64 {
    v.adjoint().matmul(v).distance(&ComplexMatrix::identity(v.cols()))
}

/// Orthonormal basis of the orthogonal complement of range(V) for an isometry V.
fn complement(v: &ComplexMatrix) -> Result<ComplexMatrix> {
    let m = v.rows();
    let proj = HermitianMatrix::symmetrize(&(&ComplexMatrix::identity(m) - &v.matmul(&v.adjoint())))?;
    let eig = herm_eig(&proj)?;
    let keep: Vec<usize> = (0..m).rev().take(m - v.cols()).collect();
    let mut c = eig.vectors.columns(keep.iter().copied());
    for j in 0..c.cols() {
        let mut col = c.column(j);
        fix_phase(&mut col);
        c.set_column(j, &col);
    }
    Ok(c)
}

/// A unitary `U` on `C^m` with `U V = W` for two `m x n` isometries.
///
/// Both isometries are completed to unitaries `[V V_perp]`, `[W W_perp]`
/// and `U = [W W_perp][V V_perp]*`.
pub fn align_isometries(v: &ComplexMatrix, w: &ComplexMatrix) -> Result<ComplexMatrix> {
    if v.rows() != w.rows() || v.cols() != w.cols() {
        return Err(Error::DimensionMismatch(format!(
            "isometries {}x{} and {}x{}",
            v.rows(),
            v.cols(),
            w.rows(),
            w.cols()
        )));
    }
    if v.cols() > v.rows() {
        return Err(Error::DimensionMismatch("isometry must have cols <= rows".into()));
    }
    for m in [v, w] {
        let deviation = isometry_defect(m);
        if deviation > 1e-10 {
            return Err(Error::NotIsometry { deviation });
        }
    }
    let full_v = v.hstack(&complement(v)?);
    let full_w = w.hstack(&complement(w)?);
    Ok(full_w.matmul(&full_v.adjoint()))
}

/// Lower Cholesky factor of a Hermitian positive definite matrix, or `None`.
pub fn cholesky(h: &HermitianMatrix) -> Option<ComplexMatrix> {
    let n = h.dim();
    let a = h.as_matrix();
    let mut l = ComplexMatrix::zeros(n, n);
    for j in 0..n {
        let mut d = a[(j, j)].re;
        for k in 0..j {
            d -= l[(j, k)].norm_sqr();
        }
        if d <= 0.0 || !d.is_finite() {
            return None;
        }
        let djj = d.sqrt();
        l[(j, j)] = Complex64::new(djj, 0.0);
        for i in (j + 1)..n {
            let mut s = a[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)].conj();
            }
            l[(i, j)] = s / djj;
        }
    }
    Some(l)
}

/// `log det H` from a Cholesky factor.
pub fn logdet_from_cholesky(l: &ComplexMatrix) -> f64 {
    2.0 * l.diagonal().iter().map(|z| z.re.ln()).sum::<f64>()
}

/// `H^{-1}` from the lower Cholesky factor `L` of `H`.
pub fn inverse_from_cholesky(l: &ComplexMatrix) -> HermitianMatrix {
    let n = l.rows();
    // L^{-1} by forward substitution, then H^{-1} = L^{-*} L^{-1}.
    let mut linv = ComplexMatrix::zeros(n, n);
    for j in 0..n {
        linv[(j, j)] = Complex64::new(1.0 / l[(j, j)].re, 0.0);
        for i in (j + 1)..n {
            let mut s = Complex64::new(0.0, 0.0);
            for k in j..i {
                s -= l[(i, k)] * linv[(k, j)];
            }
            linv[(i, j)] = s / l[(i, i)].re;
        }
    }
    HermitianMatrix::from_fn(n, |i, j| {
        // (L^{-*} L^{-1})_{ij} = sum_k conj(linv_ki) linv_kj, k >= max(i, j)
        let mut s = Complex64::new(0.0, 0.0);
        for k in i.max(j)..n {
            s += linv[(k, i)].conj() * linv[(k, j)];
        }
        s
    })
}
