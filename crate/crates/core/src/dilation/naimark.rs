use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{align_isometries, fix_phase, herm_eig, ComplexMatrix, HermitianMatrix};

/// Tolerance on `sum A_j = I`.
pub const SUM_TOL: f64 = 1e-10;
/// Largest second eigenvalue accepted for a rank-one summand.
pub const RANK_ONE_TOL: f64 = 1e-9;

/// Two decompositions of the identity on `C^n` into `m` rank-one PSD summands.
#[derive(Clone, Debug, PartialEq)]
pub struct NaimarkInput {
    a: Vec<HermitianMatrix>,
    b: Vec<HermitianMatrix>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NaimarkDilation {
    /// `m x n` isometry with `V* P_j V = A_j`.
    pub v: ComplexMatrix,
    pub p: Vec<HermitianMatrix>,
    pub q: Vec<HermitianMatrix>,
    /// Unitary with `Q_l = U* P_l U`.
    pub u: ComplexMatrix,
}

impl NaimarkInput {
    /// Summands of `b` are reported in errors with indices offset by `a.len()`.
    pub fn new(a: Vec<HermitianMatrix>, b: Vec<HermitianMatrix>) -> Result<Self> {
        if a.is_empty() || a.len() != b.len() {
            return Err(Error::DimensionMismatch(format!("{} and {} summands", a.len(), b.len())));
        }
        let n = a[0].dim();
        if a.iter().chain(&b).any(|x| x.dim() != n) {
            return Err(Error::DimensionMismatch("summands differ in size".into()));
        }
        for (k, x) in a.iter().chain(&b).enumerate() {
            let e = herm_eig(x)?;
            if e.min() < -RANK_ONE_TOL {
                return Err(Error::Indefinite { eigenvalue: e.min(), tol: RANK_ONE_TOL });
            }
            let second = if n > 1 { e.values[n - 2] } else { 0.0 };
            if second > RANK_ONE_TOL {
                return Err(Error::NotRankOne { index: k, second });
            }
        }
        for list in [&a, &b] {
            let sum = list.iter().fold(HermitianMatrix::zeros(n), |acc, x| &acc + x);
            let deviation = sum.as_matrix().distance(&ComplexMatrix::identity(n));
            if deviation > SUM_TOL {
                return Err(Error::SumToIdentity { deviation });
            }
        }
        Ok(NaimarkInput { a, b })
    }

    pub fn a(&self) -> &[HermitianMatrix] {
        &self.a
    }

    pub fn b(&self) -> &[HermitianMatrix] {
        &self.b
    }

    pub fn m(&self) -> usize {
        self.a.len()
    }

    pub fn n(&self) -> usize {
        self.a[0].dim()
    }
}

/// `a` with `a a* = A`, from the top eigenpair; largest entry real positive.
fn rank_one_vector(x: &HermitianMatrix) -> Result<Vec<Complex64>> {
    let e = herm_eig(x)?;
    let top = e.max();
    let n = e.dim();
    if top <= 0.0 {
        return Ok(vec![Complex64::new(0.0, 0.0); n]);
    }
    let mut v = e.vectors.column(n - 1);
    fix_phase(&mut v);
    Ok(v.iter().map(|z| z * top.sqrt()).collect())
}

/// Isometry whose `j`-th row is `a_j*`.
fn stacked(list: &[HermitianMatrix]) -> Result<ComplexMatrix> {
    let n = list[0].dim();
    let mut v = ComplexMatrix::zeros(list.len(), n);
    for (j, x) in list.iter().enumerate() {
        let a = rank_one_vector(x)?;
        for (k, z) in a.iter().enumerate() {
            v[(j, k)] = z.conj();
        }
    }
    Ok(v)
}

pub fn naimark(input: &NaimarkInput) -> Result<NaimarkDilation> {
    let m = input.m();
    let v = stacked(&input.a)?;
    let w = stacked(&input.b)?;
    let u = align_isometries(&v, &w)?;
    let p: Vec<HermitianMatrix> = (0..m)
        .map(|j| HermitianMatrix::from_fn(m, |r, c| Complex64::new(if r == j && c == j { 1.0 } else { 0.0 }, 0.0)))
        .collect();
    let q = p.iter().map(|pj| pj.congruence(&u)).collect();
    Ok(NaimarkDilation { v, p, q, u })
}

/// Largest deviation among the identities the dilation must satisfy.
#[derive(Clone, Debug, PartialEq)]
pub struct NaimarkCheck {
    pub isometry: f64,
    pub compress_p: f64,
    pub compress_q: f64,
    pub sum_p: f64,
    pub sum_q: f64,
    pub unitary: f64,
    pub alignment: f64,
}

impl NaimarkCheck {
    pub fn max(&self) -> f64 {
        [self.isometry, self.compress_p, self.compress_q, self.sum_p, self.sum_q, self.unitary, self.alignment]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

pub fn check_naimark(input: &NaimarkInput, d: &NaimarkDilation) -> NaimarkCheck {
    let m = input.m();
    let n = input.n();
    let compress = |list: &[HermitianMatrix], targets: &[HermitianMatrix]| {
        list.iter().zip(targets).map(|(p, a)| p.congruence(&d.v).as_matrix().distance(a.as_matrix())).fold(0.0, f64::max)
    };
    let sum = |list: &[HermitianMatrix]| {
        list.iter().fold(HermitianMatrix::zeros(m), |acc, x| &acc + x).as_matrix().distance(&ComplexMatrix::identity(m))
    };
    let q_from_u = d.p.iter().zip(&d.q).map(|(p, q)| p.congruence(&d.u).as_matrix().distance(q.as_matrix())).fold(0.0, f64::max);
    NaimarkCheck {
        isometry: d.v.adjoint().matmul(&d.v).distance(&ComplexMatrix::identity(n)),
        compress_p: compress(&d.p, input.a()),
        compress_q: compress(&d.q, input.b()),
        sum_p: sum(&d.p),
        sum_q: sum(&d.q),
        unitary: d.u.adjoint().matmul(&d.u).distance(&ComplexMatrix::identity(m)),
        alignment: q_from_u,
    }
}
