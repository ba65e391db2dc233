use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{isometry_defect, op_norm, ComplexMatrix};

/// Deviations `|| pi(z^n) - E* U^n E ||` for `n = 0, 2, 3, ..., N`.
#[derive(Clone, Debug, PartialEq)]
pub struct DilationReport {
    pub deviations: Vec<(usize, f64)>,
    pub commutator: f64,
    /// `||X^3 - Y^2||`.
    pub relation: f64,
}

impl DilationReport {
    pub fn max_deviation(&self) -> f64 {
        self.deviations.iter().map(|d| d.1).fold(0.0, f64::max)
    }
}

/// `(a, b)` with `2a + 3b = n`.
pub fn word_exponents(n: usize) -> Option<(usize, usize)> {
    match n {
        1 => None,
        n if n % 2 == 0 => Some((n / 2, 0)),
        n => Some(((n - 3) / 2, 1)),
    }
}

/// Compares the representation `z^2 -> X`, `z^3 -> Y` with compressions of powers of `U`.
pub fn cc_dilation_verify(
    x: &ComplexMatrix,
    y: &ComplexMatrix,
    u: &ComplexMatrix,
    embed: &ComplexMatrix,
    n_max: usize,
) -> Result<DilationReport> {
    let h = embed.cols();
    if x.rows() != h || x.cols() != h || y.rows() != h || y.cols() != h {
        return Err(Error::DimensionMismatch("X and Y must act on the embedded space".into()));
    }
    if !u.is_square() || u.rows() != embed.rows() {
        return Err(Error::DimensionMismatch("U must act on the target of the embedding".into()));
    }
    let deviation = u.adjoint().matmul(u).distance(&ComplexMatrix::identity(u.rows()));
    if deviation > 1e-10 {
        return Err(Error::NotUnitary { deviation });
    }
    let deviation = isometry_defect(embed);
    if deviation > 1e-10 {
        return Err(Error::NotIsometry { deviation });
    }
    let mut deviations = Vec::new();
    let mut un = ComplexMatrix::identity(u.rows());
    for n in 0..=n_max {
        if n > 0 {
            un = u.matmul(&un);
        }
        let Some((a, b)) = word_exponents(n) else { continue };
        let pi = x.pow(a).matmul(&y.pow(b));
        let compressed = embed.adjoint().matmul(&un).matmul(embed);
        deviations.push((n, op_norm(&(&pi - &compressed))?));
    }
    Ok(DilationReport {
        deviations,
        commutator: op_norm(&(&x.matmul(y) - &y.matmul(x)))?,
        relation: op_norm(&(&x.pow(3) - &y.pow(2)))?,
    })
}

/// Cyclic shift `e_k -> e_{k+1}` on the basis `e_{-K}, ..., e_K` (index `k + K`).
pub fn truncated_shift(window: usize) -> ComplexMatrix {
    let dim = 2 * window + 1;
    ComplexMatrix::from_fn(dim, dim, |r, c| Complex64::new(if r == (c + 1) % dim { 1.0 } else { 0.0 }, 0.0))
}

/// Isometry onto `span{e_0, e_2, e_3, ..., e_K}`; also returns the labels of its columns.
pub fn example_subspace(window: usize) -> (ComplexMatrix, Vec<i64>) {
    let k = window as i64;
    let labels: Vec<i64> = (0..=k).filter(|&n| n != 1).collect();
    let dim = 2 * window + 1;
    let embed = ComplexMatrix::from_fn(dim, labels.len(), |r, c| {
        Complex64::new(if r as i64 - k == labels[c] { 1.0 } else { 0.0 }, 0.0)
    });
    (embed, labels)
}

/// The pair `X = P_H U^2 |_H`, `Y = P_H U^3 |_H` with the shift and embedding it comes from.
pub fn example_pair(window: usize) -> (ComplexMatrix, ComplexMatrix, ComplexMatrix, ComplexMatrix) {
    let u = truncated_shift(window);
    let (e, _) = example_subspace(window);
    let x = e.adjoint().matmul(&u.pow(2)).matmul(&e);
    let y = e.adjoint().matmul(&u.pow(3)).matmul(&e);
    (x, y, u, e)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ObstructionReport {
    pub window: usize,
    /// `<pi(z^2) e_n, e_3>` for each basis vector `e_n` of the subspace.
    pub overlaps: Vec<(i64, Complex64)>,
    pub max_overlap: f64,
    /// `<U^3 e_0, e_3>`.
    pub cube_overlap: Complex64,
}

/// `e_3` misses the range of `pi(z^2)` although `U^3 e_0 = e_3`.
pub fn no_t_obstruction(window: usize) -> Result<ObstructionReport> {
    if window < 3 {
        return Err(Error::InvalidInput("window must contain e_3".into()));
    }
    let (x, _, u, e) = example_pair(window);
    let (_, labels) = example_subspace(window);
    let i3 = labels.iter().position(|&l| l == 3).expect("e_3 in window");
    let i0 = labels.iter().position(|&l| l == 0).expect("e_0 in window");
    let overlaps: Vec<(i64, Complex64)> = labels.iter().enumerate().map(|(c, &l)| (l, x[(i3, c)])).collect();
    let max_overlap = overlaps.iter().map(|o| o.1.norm()).fold(0.0, f64::max);
    let u3 = e.adjoint().matmul(&u.pow(3)).matmul(&e);
    Ok(ObstructionReport { window, overlaps, max_overlap, cube_overlap: u3[(i3, i0)] })
}
