//! Quotient Hilbert spaces built from a positive trace functional, and the
//! multiplication operators acting on them.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kernels::{MatrixKernel, SampleSet};
use crate::linalg::{herm_eig, min_eig, op_norm, ComplexMatrix, HermitianMatrix};

/// Eigenvalues below `DEFAULT_NULL_TOL * lambda_max` span the null space.
pub const DEFAULT_NULL_TOL: f64 = 1e-9;
/// Largest accepted null-space leakage of a multiplier.
pub const WELLDEF_TOL: f64 = 1e-6;

/// `(C^d)^f` with the pre-inner product `<f, g> = g* W f`, modulo null vectors.
///
/// Coordinates of a vector `f` are `Sigma^{1/2} U_r* f` where `W = U Sigma U*`
/// and `U_r` holds the eigenvectors above the null tolerance.
#[derive(Clone, Debug)]
pub struct GnsSpace {
    sample_set: SampleSet,
    block_dim: usize,
    gram: HermitianMatrix,
    range: ComplexMatrix,
    null: ComplexMatrix,
    sigma: Vec<f64>,
    null_tol: f64,
}

/// A multiplier in GNS coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct RepOperator {
    pub matrix: ComplexMatrix,
    pub welldef_residual: f64,
}

pub fn build_gns(w: &HermitianMatrix, sample_set: &SampleSet, block_dim: usize, null_tol: f64) -> Result<GnsSpace> {
    let n = sample_set.len() * block_dim;
    if w.dim() != n {
        return Err(Error::DimensionMismatch(format!("Gram of dim {} for {n} coordinates", w.dim())));
    }
    let eig = herm_eig(w)?;
    let cutoff = null_tol * eig.max().max(f64::MIN_POSITIVE);
    if eig.min() < -cutoff {
        return Err(Error::Indefinite { eigenvalue: eig.min(), tol: cutoff });
    }
    let keep: Vec<usize> = (0..n).rev().filter(|&k| eig.values[k] > cutoff).collect();
    let drop: Vec<usize> = (0..n).filter(|&k| eig.values[k] <= cutoff).collect();
    Ok(GnsSpace {
        sample_set: sample_set.clone(),
        block_dim,
        gram: w.clone(),
        range: eig.vectors.columns(keep.iter().copied()),
        null: eig.vectors.columns(drop),
        sigma: keep.iter().map(|&k| eig.values[k]).collect(),
        null_tol,
    })
}

impl GnsSpace {
    pub fn rank(&self) -> usize {
        self.sigma.len()
    }

    pub fn gram(&self) -> &HermitianMatrix {
        &self.gram
    }

    pub fn sample_set(&self) -> &SampleSet {
        &self.sample_set
    }

    pub fn block_dim(&self) -> usize {
        self.block_dim
    }

    pub fn null_tol(&self) -> f64 {
        self.null_tol
    }

    /// Nonzero eigenvalues of the Gram matrix, decreasing.
    pub fn sigma(&self) -> &[f64] {
        &self.sigma
    }

    /// `E = U_r Sigma^{1/2}`, so that `W = E E*` up to the null tolerance.
    pub fn factor(&self) -> ComplexMatrix {
        let s: Vec<Complex64> = self.sigma.iter().map(|&x| Complex64::new(x.sqrt(), 0.0)).collect();
        self.range.diag_mul_right(&s)
    }

    pub fn coords(&self, f: &[Complex64]) -> Vec<Complex64> {
        let s: Vec<Complex64> = self.sigma.iter().map(|&x| Complex64::new(x.sqrt(), 0.0)).collect();
        let c = self.range.adjoint().mul_vec(f);
        c.iter().zip(&s).map(|(c, s)| c * s).collect()
    }

    fn symbol(&self, g_values: &[Complex64]) -> Result<Vec<Complex64>> {
        if g_values.len() != self.sample_set.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} multiplier values for {} sample points",
                g_values.len(),
                self.sample_set.len()
            )));
        }
        Ok(g_values.iter().flat_map(|&g| std::iter::repeat_n(g, self.block_dim)).collect())
    }

    /// `min_eig(U_r* (W - D* W D) U_r)` for the multiplier with values `g_values`.
    pub fn range_margin(&self, g_values: &[Complex64]) -> Result<f64> {
        let d = self.symbol(g_values)?;
        let dwd = self.gram.congruence(&ComplexMatrix::from_diag(&d));
        let defect = &self.gram - &dwd;
        min_eig(&defect.congruence(&self.range))
    }
}

/// Multiplication by `g` on the quotient.
pub fn mult_operator(space: &GnsSpace, g_values: &[Complex64]) -> Result<RepOperator> {
    let d = space.symbol(g_values)?;
    let sq: Vec<Complex64> = space.sigma.iter().map(|&x| Complex64::new(x.sqrt(), 0.0)).collect();
    let inv_sq: Vec<Complex64> = space.sigma.iter().map(|&x| Complex64::new(1.0 / x.sqrt(), 0.0)).collect();
    let ur_star = space.range.adjoint();
    let left = ur_star.diag_mul_right(&d);
    let matrix = left.matmul(&space.range).diag_mul_left(&sq).diag_mul_right(&inv_sq);
    let welldef_residual = if space.null.cols() == 0 || space.rank() == 0 {
        0.0
    } else {
        let leak = left.matmul(&space.null).diag_mul_left(&sq);
        let gmax = g_values.iter().map(|z| z.norm()).fold(1.0, f64::max);
        op_norm(&leak)? / (space.sigma[0].sqrt() * gmax)
    };
    if welldef_residual > WELLDEF_TOL {
        return Err(Error::IllDefined { residual: welldef_residual });
    }
    Ok(RepOperator { matrix, welldef_residual })
}

pub fn rep_norm(_space: &GnsSpace, op: &RepOperator) -> Result<f64> {
    op_norm(&op.matrix)
}

/// Matrix of the amplified multiplier of `F^t` on two copies of the space:
/// block `(i, j)` is multiplication by `x -> F(x)_{ji}`.
pub fn amplified_operator(space: &GnsSpace, f_values: &[ComplexMatrix]) -> Result<ComplexMatrix> {
    let r = space.rank();
    let mut a = ComplexMatrix::zeros(2 * r, 2 * r);
    for i in 0..2 {
        for j in 0..2 {
            let g: Vec<Complex64> = f_values.iter().map(|f| f[(j, i)]).collect();
            let blk = mult_operator(space, &g)?.matrix;
            for p in 0..r {
                for q in 0..r {
                    a[(i * r + p, j * r + q)] = blk[(p, q)];
                }
            }
        }
    }
    Ok(a)
}

/// Deficiency `<h, h> - <A h, A h>` of the amplified multiplier at `h = [e_1] + [e_2]`.
///
/// Negative values show the amplified multiplier has norm above one.
pub fn amplified_deficiency(space: &GnsSpace, f_values: &[ComplexMatrix]) -> Result<f64> {
    if space.block_dim != 2 {
        return Err(Error::InvalidInput("amplification needs block size 2".into()));
    }
    if f_values.iter().any(|f| f.rows() != 2 || f.cols() != 2) {
        return Err(Error::DimensionMismatch("matrix values must be 2x2".into()));
    }
    let a = amplified_operator(space, f_values)?;
    let h = amplification_vector(space);
    let ah = a.mul_vec(&h);
    let norm = |v: &[Complex64]| v.iter().map(|z| z.norm_sqr()).sum::<f64>();
    Ok(norm(&h) - norm(&ah))
}

/// Coordinates of the constant functions `e_1`, `e_2`, stacked.
pub fn amplification_vector(space: &GnsSpace) -> Vec<Complex64> {
    let n = space.sample_set.len();
    let e = |k: usize| -> Vec<Complex64> {
        (0..2 * n).map(|i| Complex64::new(if i % 2 == k { 1.0 } else { 0.0 }, 0.0)).collect()
    };
    let mut h = space.coords(&e(0));
    h.extend(space.coords(&e(1)));
    h
}

/// `tr(W K)` for the flat kernel `K`.
pub fn deficiency_trace(w: &HermitianMatrix, kernel: &MatrixKernel) -> f64 {
    w.trace_pairing(kernel.flat())
}

/// Checks of the commuting pair built from a restricted-family certificate.
#[derive(Clone, Debug, PartialEq)]
pub struct NoxyReport {
    pub rank: usize,
    pub norm_x: f64,
    pub norm_y: f64,
    pub commutator: f64,
    /// `||X^3 - Y^2||`.
    pub relation: f64,
    pub witness_norm: f64,
    pub contractive: bool,
    pub witness_exceeds: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NoxyPair {
    pub x: ComplexMatrix,
    pub y: ComplexMatrix,
    pub report: NoxyReport,
}

/// Multipliers of `z^2`, `z^3` and the witness `f` on the space of a scalar certificate.
pub fn build_noxy(sample_set: &SampleSet, w: &HermitianMatrix, f_values: &[Complex64], delta: f64) -> Result<NoxyPair> {
    let space = build_gns(w, sample_set, 1, DEFAULT_NULL_TOL)?;
    let pts = sample_set.points();
    let sq: Vec<Complex64> = pts.iter().map(|x| x * x).collect();
    let cube: Vec<Complex64> = pts.iter().map(|x| x * x * x).collect();
    let x = mult_operator(&space, &sq)?.matrix;
    let y = mult_operator(&space, &cube)?.matrix;
    let witness = mult_operator(&space, f_values)?;
    let norm_x = op_norm(&x)?;
    let norm_y = op_norm(&y)?;
    let commutator = op_norm(&(&x.matmul(&y) - &y.matmul(&x)))?;
    let relation = op_norm(&(&x.pow(3) - &y.pow(2)))?;
    let witness_norm = rep_norm(&space, &witness)?;
    let tol = 1e-8;
    let report = NoxyReport {
        rank: space.rank(),
        norm_x,
        norm_y,
        commutator,
        relation,
        witness_norm,
        contractive: norm_x <= 1.0 + tol && norm_y <= 1.0 + tol && commutator <= tol && relation <= tol,
        witness_exceeds: witness_norm >= 1.0 + delta,
    };
    Ok(NoxyPair { x, y, report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::{test_fn, ExtendedPoint};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn three() -> SampleSet {
        SampleSet::new(vec![c(0.0, 0.0), c(0.5, 0.1), c(-0.3, 0.4)]).unwrap()
    }

    #[test]
    fn identity_gram_gives_identity_coordinates() {
        let s = build_gns(&HermitianMatrix::identity(3), &three(), 1, DEFAULT_NULL_TOL).unwrap();
        assert_eq!(s.rank(), 3);
        let f = vec![c(1.0, 2.0), c(-0.5, 0.0), c(0.0, 0.3)];
        let cf = s.coords(&f);
        let nf: f64 = f.iter().map(|z| z.norm_sqr()).sum();
        let nc: f64 = cf.iter().map(|z| z.norm_sqr()).sum();
        assert!((nf - nc).abs() < 1e-12);
    }

    #[test]
    fn rank_one_gram() {
        let v = vec![c(1.0, 0.0), c(0.5, -0.5), c(0.0, 1.0)];
        let s = build_gns(&HermitianMatrix::outer(&v), &three(), 1, DEFAULT_NULL_TOL).unwrap();
        assert_eq!(s.rank(), 1);
        let e = s.factor();
        assert!(e.matmul(&e.adjoint()).distance(HermitianMatrix::outer(&v).as_matrix()) < 1e-12);
    }

    #[test]
    fn indefinite_gram_is_rejected() {
        let r = build_gns(&HermitianMatrix::from_real_diag(&[1.0, 1.0, -0.1]), &three(), 1, DEFAULT_NULL_TOL);
        assert!(matches!(r, Err(Error::Indefinite { .. })));
    }

    #[test]
    fn unit_multiplier_is_identity() {
        let s = build_gns(&HermitianMatrix::from_real_diag(&[2.0, 1.0, 0.5]), &three(), 1, DEFAULT_NULL_TOL).unwrap();
        let op = mult_operator(&s, &[c(1.0, 0.0); 3]).unwrap();
        assert!(op.matrix.distance(&ComplexMatrix::identity(3)) < 1e-14);
        assert!((rep_norm(&s, &op).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn identity_gram_norm_is_sup() {
        let s = build_gns(&HermitianMatrix::identity(3), &three(), 1, DEFAULT_NULL_TOL).unwrap();
        let g = vec![c(0.2, 0.0), c(0.0, -0.9), c(0.4, 0.4)];
        let op = mult_operator(&s, &g).unwrap();
        assert!((rep_norm(&s, &op).unwrap() - 0.9).abs() < 1e-12);
    }

    #[test]
    fn leaking_multiplier_is_rejected() {
        // Null vector e_0 - e_1 is not mapped into the null space by diag(1, 2, 3).
        let v = vec![c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)];
        let w = &HermitianMatrix::outer(&v) + &HermitianMatrix::from_real_diag(&[0.0, 0.0, 1.0]);
        let s = build_gns(&w, &three(), 1, DEFAULT_NULL_TOL).unwrap();
        assert_eq!(s.rank(), 2);
        assert!(matches!(mult_operator(&s, &[c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)]), Err(Error::IllDefined { .. })));
        assert!(mult_operator(&s, &[c(2.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)]).is_ok());
    }

    #[test]
    fn zero_function_deficiency_is_norm() {
        let set = three();
        let s = build_gns(&HermitianMatrix::identity(6), &set, 2, DEFAULT_NULL_TOL).unwrap();
        let t = amplified_deficiency(&s, &vec![ComplexMatrix::zeros(2, 2); 3]).unwrap();
        assert!((t - 6.0).abs() < 1e-12);
    }

    #[test]
    fn noxy_with_identity_gram() {
        let set = three();
        let lam = ExtendedPoint::real(0.4).unwrap();
        let f: Vec<Complex64> = set.points().iter().map(|&x| test_fn(&lam, x)).collect();
        let pair = build_noxy(&set, &HermitianMatrix::identity(3), &f, 1e-3).unwrap();
        let mx = set.points().iter().map(|x| x.norm_sqr()).fold(0.0, f64::max);
        assert!((pair.report.norm_x - mx).abs() < 1e-12);
        assert!(pair.report.relation < 1e-14);
        assert!(pair.report.contractive);
        assert!(!pair.report.witness_exceeds);
    }
}
