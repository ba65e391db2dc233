use num_complex::Complex64;

use super::admm::{admm, affine_residual, project_affine};
use super::barrier::{Barrier, BarrierOptions};
use super::dual::{dual_search, DualOptions};
use super::{generator_pattern, residual, ConeProblem, DiscreteMeasure, DualCertificate};
use crate::error::{Error, Result};
use crate::kernels::{scalar_sigma_kernel, ExtendedPoint, SampleSet};
use crate::linalg::HermitianMatrix;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrimalOptions {
    /// Frobenius residual accepted as a match of the target.
    pub tol: f64,
    /// Cap on splitting iterations across all restarts.
    pub max_iter: usize,
    /// Generators whose block trace is below this fraction of the largest form no part of the splitting support.
    pub support_rel: f64,
    pub barrier: BarrierOptions,
}

impl Default for PrimalOptions {
    fn default() -> Self {
        PrimalOptions { tol: 1e-7, max_iter: 20_000, support_rel: 1e-3, barrier: BarrierOptions::default() }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum PrimalOutcome {
    Feasible { measure: DiscreteMeasure, residual: f64 },
    Undecided { best_residual: f64 },
}

impl PrimalOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, PrimalOutcome::Feasible { .. })
    }
}

/// Searches for a PSD measure on the problem generators reproducing the target.
///
/// Never reports infeasibility: failure to reach `opts.tol` gives `Undecided`.
pub fn primal_feasibility(problem: &ConeProblem, opts: &PrimalOptions) -> Result<PrimalOutcome> {
    let n = problem.dim();
    let target = problem.target().flat();
    let gens = problem.generators().to_vec();

    let zero = DiscreteMeasure::zeros(gens.clone(), n);
    let zero_res = target.frobenius_norm();
    if zero_res <= opts.tol {
        return Ok(PrimalOutcome::Feasible { measure: zero, residual: zero_res });
    }

    let diags: Vec<Vec<Complex64>> = gens.iter().map(|g| problem.diag_values(g)).collect();
    let patterns: Vec<HermitianMatrix> = diags.iter().map(|d| generator_pattern(d)).collect();
    // Slack is folded into the generator with the smallest diagonal symbol.
    let fold_at = (0..gens.len())
        .min_by(|&a, &b| max_abs(&diags[a]).total_cmp(&max_abs(&diags[b])))
        .expect("problem has generators");

    let mut best_res = zero_res;
    let mut found: Option<(DiscreteMeasure, f64)> = None;
    let mut hopeless = false;
    let mut last_z: Option<Vec<HermitianMatrix>> = None;

    let barrier = Barrier::new(&diags, target);
    barrier.path(&opts.barrier, |c| {
        // Any measure with residual r satisfies tr(W T) >= -||W||_F r.
        if -c.w.trace_pairing(target) / c.w.frobenius_norm() > opts.tol {
            hopeless = true;
            return true;
        }
        let mut blocks = c.z.clone();
        let mut image = HermitianMatrix::zeros(n);
        for (z, p) in blocks.iter().zip(&patterns) {
            image = &image + &z.schur(p);
        }
        let nu = (image.trace() - target.trace()) / n as f64;
        if nu <= 0.0 {
            let fold = HermitianMatrix::from_fn(n, |i, j| {
                if i == j {
                    Complex64::new(-nu / patterns[fold_at].get(i, i).re, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            });
            blocks[fold_at] = &blocks[fold_at] + &fold;
        }
        project_affine(&mut blocks, &patterns, target);
        let res = affine_residual(&blocks, &patterns, target);
        best_res = best_res.min(res);
        if res <= opts.tol {
            if let Ok(m) = DiscreteMeasure::new(gens.clone(), blocks.clone()) {
                found = Some((m, res));
                return true;
            }
        }
        last_z = Some(c.z.clone());
        false
    });

    if let Some(done) = verified(found, problem, opts)? {
        return Ok(done);
    }
    if hopeless {
        return Ok(PrimalOutcome::Undecided { best_residual: best_res });
    }
    let Some(z) = last_z else {
        return Ok(PrimalOutcome::Undecided { best_residual: best_res });
    };

    let mut budget = opts.max_iter;
    let mut current = z.clone();
    for rel in [opts.support_rel, opts.support_rel * 1e-3] {
        if budget == 0 {
            break;
        }
        let top = current.iter().map(HermitianMatrix::trace).fold(0.0, f64::max);
        let support: Vec<usize> =
            (0..gens.len()).filter(|&g| current[g].trace() >= rel * top || z[g].trace() >= rel * top).collect();
        let start: Vec<HermitianMatrix> =
            support.iter().map(|&g| if current[g].trace() > 0.0 { current[g].clone() } else { z[g].clone() }).collect();
        let sub_patterns: Vec<HermitianMatrix> = support.iter().map(|&g| patterns[g].clone()).collect();
        let out = admm(&sub_patterns, target, start, opts.tol, budget)?;
        budget -= out.iterations;
        best_res = best_res.min(out.residual);
        let mut blocks = vec![HermitianMatrix::zeros(n); gens.len()];
        for (&g, b) in support.iter().zip(out.blocks) {
            blocks[g] = b;
        }
        if out.residual <= opts.tol {
            if let Ok(m) = DiscreteMeasure::new(gens.clone(), blocks.clone()) {
                if let Some(done) = verified(Some((m, out.residual)), problem, opts)? {
                    return Ok(done);
                }
            }
        }
        current = blocks;
    }
    Ok(PrimalOutcome::Undecided { best_residual: best_res })
}

fn max_abs(d: &[Complex64]) -> f64 {
    d.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Re-checks a candidate against the problem before it is reported.
fn verified(
    found: Option<(DiscreteMeasure, f64)>,
    problem: &ConeProblem,
    opts: &PrimalOptions,
) -> Result<Option<PrimalOutcome>> {
    let Some((measure, _)) = found else { return Ok(None) };
    let r = residual(&measure, problem)?;
    Ok((r <= opts.tol).then_some(PrimalOutcome::Feasible { measure, residual: r }))
}

#[derive(Clone, Debug, PartialEq)]
pub enum PickOutcome {
    Feasible { measure: DiscreteMeasure, residual: f64 },
    Certificate(DualCertificate),
    Undecided { best_residual: f64 },
}

/// Scalar interpolation in the cone: is `1 - w_i conj(w_j)` generated on `nodes`?
pub fn pick_check(
    nodes: &SampleSet,
    targets: &[Complex64],
    grid: Vec<ExtendedPoint>,
    restriction: Option<Vec<ExtendedPoint>>,
    primal: &PrimalOptions,
    dual: &DualOptions,
) -> Result<PickOutcome> {
    if targets.len() != nodes.len() {
        return Err(Error::DimensionMismatch(format!("{} targets for {} nodes", targets.len(), nodes.len())));
    }
    let problem = ConeProblem::new(scalar_sigma_kernel(targets, nodes)?, grid, restriction)?;
    match primal_feasibility(&problem, primal)? {
        PrimalOutcome::Feasible { measure, residual } => Ok(PickOutcome::Feasible { measure, residual }),
        PrimalOutcome::Undecided { best_residual } => Ok(match dual_search(&problem, dual)? {
            Some(cert) => PickOutcome::Certificate(cert),
            None => PickOutcome::Undecided { best_residual },
        }),
    }
}
