use anyhow::Result;
use neil_core::cone::{counterexample_target, dual_search, validate_certificate, ConeProblem};
use neil_core::gns::{amplified_deficiency, amplified_operator, build_gns, deficiency_trace, mult_operator, rep_norm, DEFAULT_NULL_TOL};
use neil_core::kernels::{test_fn, MatrixBlaschke};
use neil_core::linalg::op_norm;
use serde::Serialize;

use super::{dual_options, fine_grid, revalidate, sample_set, search_grid, CertificateJson, ValidationJson, MARGIN_FLOOR};
use crate::config::{complex, matrix, rows, PointSpec, RunConfig};
use crate::output::{render, Outcome};

/// Allowed excess of a single multiplier norm over one.
pub const NORM_SLACK: f64 = 1e-6;

#[derive(Serialize)]
pub struct RepresentationJson {
    pub rank: usize,
    pub max_rep_norm: f64,
    pub argmax: PointSpec,
    pub deficiency: f64,
    pub deficiency_trace: f64,
    pub amplified_norm: f64,
}

#[derive(Serialize)]
pub struct CounterexampleResult {
    pub certificate: Option<CertificateJson>,
    pub validation: Option<ValidationJson>,
    pub representation: Option<RepresentationJson>,
    pub revalidated: Option<bool>,
}

pub fn run(cfg: &mut RunConfig) -> Result<(Outcome, String)> {
    let set = sample_set(cfg)?;
    let l1 = complex(*cfg.lambda1.get_or_insert([0.5, 0.0]));
    let l2 = complex(*cfg.lambda2.get_or_insert([-0.5, 0.0]));
    let u = matrix(cfg.u.get_or_insert_with(|| rows(&MatrixBlaschke::hadamard())))?;
    let phi = MatrixBlaschke::new(l1, l2, u)?;
    let grid = search_grid(cfg);
    let fine = fine_grid(cfg);
    let dual = dual_options(cfg);

    let problem = ConeProblem::new(counterexample_target(&phi, &set), grid, None)?;
    let mut result = CounterexampleResult { certificate: None, validation: None, representation: None, revalidated: None };
    let Some(cert) = dual_search(&problem, &dual)? else {
        return Ok((Outcome::Inconclusive, render("counterexample", cfg, Outcome::Inconclusive, result)?));
    };
    let report = validate_certificate(&cert, &problem, &fine)?;

    let space = build_gns(&cert.w, &set, 2, DEFAULT_NULL_TOL)?;
    let mut max_rep_norm = f64::NEG_INFINITY;
    let mut argmax = fine[0];
    for lambda in &fine {
        let g: Vec<_> = set.points().iter().map(|&x| test_fn(lambda, x)).collect();
        let norm = rep_norm(&space, &mult_operator(&space, &g)?)?;
        if norm > max_rep_norm {
            max_rep_norm = norm;
            argmax = *lambda;
        }
    }
    let f_values: Vec<_> = set.points().iter().map(|&x| phi.f_eval(x)).collect();
    let deficiency = amplified_deficiency(&space, &f_values)?;
    let representation = RepresentationJson {
        rank: space.rank(),
        max_rep_norm,
        argmax: PointSpec::from_point(&argmax),
        deficiency,
        deficiency_trace: deficiency_trace(&cert.w, problem.target()),
        amplified_norm: op_norm(&amplified_operator(&space, &f_values)?)?,
    };

    let cert_json = CertificateJson::new(&cert);
    let revalidated = revalidate(&cert_json, &problem, &fine, dual.delta)?;
    let ok = report.worst_margin >= MARGIN_FLOOR
        && max_rep_norm <= 1.0 + NORM_SLACK
        && deficiency <= -dual.delta
        && revalidated;
    result.certificate = Some(cert_json);
    result.validation = Some(ValidationJson::from(&report));
    result.representation = Some(representation);
    result.revalidated = Some(revalidated);
    let outcome = if ok { Outcome::Affirmative } else { Outcome::Inconclusive };
    Ok((outcome, render("counterexample", cfg, outcome, result)?))
}
