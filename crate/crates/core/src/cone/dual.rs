use num_complex::Complex64;

use super::barrier::{Barrier, BarrierOptions};
use super::{generator_pattern, ConeProblem, DualCertificate};
use crate::error::Result;
use crate::kernels::ExtendedPoint;
use crate::linalg::{min_eig, HermitianMatrix};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DualOptions {
    /// Allowed negativity of `W - D* W D` on the grid.
    pub eps: f64,
    /// Required negativity of `tr(W T)`.
    pub delta: f64,
    /// Weight of the identity mixed into the final iterate.
    pub interior_blend: f64,
    pub barrier: BarrierOptions,
}

impl Default for DualOptions {
    fn default() -> Self {
        DualOptions { eps: 1e-8, delta: 1e-4, interior_blend: 1e-3, barrier: BarrierOptions::default() }
    }
}

/// Worst-case margin of a certificate over a grid.
#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    pub worst_margin: f64,
    pub argmin: ExtendedPoint,
    /// Largest change of the margin between consecutive grid points.
    pub modulus_of_continuity: f64,
    pub grid_size: usize,
    pub violation: f64,
}

/// `min_eig(W - D_lambda* W D_lambda)` for each grid point.
pub fn grid_margins(w: &HermitianMatrix, problem: &ConeProblem, grid: &[ExtendedPoint]) -> Result<Vec<f64>> {
    grid.iter()
        .map(|lambda| {
            let d: Vec<Complex64> = problem.diag_values(lambda).iter().map(|z| z.conj()).collect();
            min_eig(&w.schur(&generator_pattern(&d)))
        })
        .collect()
}

/// Minimizes `tr(W T)` over the dual cone with `tr W = N d`; returns a
/// certificate only when the violation and grid margin meet the options.
pub fn dual_search(problem: &ConeProblem, opts: &DualOptions) -> Result<Option<DualCertificate>> {
    let n = problem.dim();
    let target = problem.target().flat();
    let gens = problem.generators();
    let diags: Vec<Vec<Complex64>> = gens.iter().map(|g| problem.diag_values(g)).collect();
    let end = Barrier::new(&diags, target).path(&opts.barrier, |_| false);
    let Some(last) = end.last else { return Ok(None) };

    let s = opts.interior_blend;
    let w = &last.w.scale(1.0 - s) + &HermitianMatrix::identity(n).scale(s);
    let violation = w.trace_pairing(target);
    if violation > -opts.delta {
        return Ok(None);
    }
    if min_eig(&w)? < -opts.eps {
        return Ok(None);
    }
    let margins = grid_margins(&w, problem, gens)?;
    let grid_margin = margins.iter().copied().fold(f64::INFINITY, f64::min);
    if grid_margin < -opts.eps {
        return Ok(None);
    }
    Ok(Some(DualCertificate { w, grid_margin, violation, validation_grid_size: gens.len() }))
}

/// Recomputes the certificate margin on `fine_grid`.
pub fn validate_certificate(
    cert: &DualCertificate,
    problem: &ConeProblem,
    fine_grid: &[ExtendedPoint],
) -> Result<ValidationReport> {
    let margins = grid_margins(&cert.w, problem, fine_grid)?;
    let (idx, worst) = margins
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::INFINITY), |acc, (i, m)| if m < acc.1 { (i, m) } else { acc });
    let mut modulus = 0.0f64;
    for k in 1..margins.len() {
        if fine_grid[k].is_infinity() || fine_grid[k - 1].is_infinity() {
            continue;
        }
        modulus = modulus.max((margins[k] - margins[k - 1]).abs());
    }
    Ok(ValidationReport {
        worst_margin: worst,
        argmin: fine_grid.get(idx).copied().unwrap_or(ExtendedPoint::Infinity),
        modulus_of_continuity: modulus,
        grid_size: fine_grid.len(),
        violation: cert.w.trace_pairing(problem.target().flat()),
    })
}
