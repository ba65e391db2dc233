use crate::error::Result;
use crate::linalg::{psd_project, HermitianMatrix};

pub(crate) struct AdmmResult {
    pub blocks: Vec<HermitianMatrix>,
    pub residual: f64,
    pub iterations: usize,
}

/// `|| sum_g M_g o P_g - T ||_F`.
pub(crate) fn affine_residual(blocks: &[HermitianMatrix], patterns: &[HermitianMatrix], target: &HermitianMatrix) -> f64 {
    let mut acc = target.scale(-1.0);
    for (m, p) in blocks.iter().zip(patterns) {
        acc = &acc + &m.schur(p);
    }
    acc.frobenius_norm()
}

fn denominators(patterns: &[HermitianMatrix], n: usize) -> Vec<f64> {
    let mut denom = vec![0.0; n * n];
    for p in patterns {
        for i in 0..n {
            for j in 0..n {
                denom[i * n + j] += p.get(i, j).norm_sqr();
            }
        }
    }
    denom
}

fn project_with(blocks: &mut [HermitianMatrix], patterns: &[HermitianMatrix], target: &HermitianMatrix, denom: &[f64]) {
    let n = target.dim();
    let mut r = target.as_matrix().clone();
    for (m, p) in blocks.iter().zip(patterns) {
        r = &r - m.schur(p).as_matrix();
    }
    for (m, p) in blocks.iter_mut().zip(patterns) {
        let fix = HermitianMatrix::from_fn(n, |i, j| p.get(i, j).conj() * r[(i, j)] / denom[i * n + j]);
        *m = &*m + &fix;
    }
}

/// Entrywise least-norm correction of `blocks` onto `sum_g M_g o P_g = T`.
pub(crate) fn project_affine(blocks: &mut [HermitianMatrix], patterns: &[HermitianMatrix], target: &HermitianMatrix) {
    let denom = denominators(patterns, target.dim());
    project_with(blocks, patterns, target, &denom);
}

/// Douglas-Rachford splitting between the affine set `sum_g M_g o P_g = T`
/// and the product of PSD cones. The affine projection decouples entrywise.
/// Returns the best PSD iterate seen.
pub(crate) fn admm(
    patterns: &[HermitianMatrix],
    target: &HermitianMatrix,
    start: Vec<HermitianMatrix>,
    tol: f64,
    max_iter: usize,
) -> Result<AdmmResult> {
    let n = target.dim();
    let denom = denominators(patterns, n);
    let mut z = start;
    let mut u: Vec<HermitianMatrix> = vec![HermitianMatrix::zeros(n); z.len()];
    let mut best_res = affine_residual(&z, patterns, target);
    let mut best = z.clone();
    let mut iterations = 0;
    while iterations < max_iter && best_res > tol {
        iterations += 1;
        let mut x: Vec<HermitianMatrix> = z.iter().zip(&u).map(|(z, u)| z - u).collect();
        project_with(&mut x, patterns, target, &denom);
        for ((zg, xg), ug) in z.iter_mut().zip(&x).zip(&u) {
            *zg = psd_project(&(xg + ug))?;
        }
        for ((ug, xg), zg) in u.iter_mut().zip(&x).zip(&z) {
            *ug = &(&*ug + xg) - zg;
        }
        let res = affine_residual(&z, patterns, target);
        if res < best_res {
            best_res = res;
            best = z.clone();
        }
    }
    Ok(AdmmResult { blocks: best, residual: best_res, iterations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::min_eig;
    use num_complex::Complex64;

    #[test]
    fn recovers_interior_target() {
        let c = Complex64::new;
        let patterns: Vec<HermitianMatrix> = [[c(0.2, 0.0), c(0.0, 0.3)], [c(-0.4, 0.1), c(0.1, 0.0)], [c(0.0, 0.0), c(0.5, 0.5)]]
            .iter()
            .map(|d| super::super::generator_pattern(d))
            .collect();
        let m: Vec<HermitianMatrix> = (0..3)
            .map(|g| HermitianMatrix::from_fn(2, |i, j| if i == j { c(1.0 + g as f64, 0.0) } else { c(0.2, -0.1 * g as f64) }))
            .collect();
        let mut target = HermitianMatrix::zeros(2);
        for (mg, p) in m.iter().zip(&patterns) {
            target = &target + &mg.schur(p);
        }
        let res = admm(&patterns, &target, vec![HermitianMatrix::zeros(2); 3], 1e-9, 5000).unwrap();
        assert!(res.residual <= 1e-9, "residual {}", res.residual);
        assert!(res.blocks.iter().all(|b| min_eig(b).unwrap() >= -1e-12));
    }
}
