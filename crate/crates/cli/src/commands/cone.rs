use anyhow::{bail, Result};
use neil_core::cone::{
    dual_search, pick_check, primal_feasibility, validate_certificate, ConeProblem, DiscreteMeasure, DualCertificate,
    DualOptions, PickOutcome, PrimalOutcome,
};
use neil_core::kernels::{MatrixKernel, SampleSet};
use serde::Serialize;

use super::{
    dual_options, fine_grid, primal_options, required, restriction, revalidate, sample_set, search_grid, CertificateJson,
    ValidationJson, MARGIN_FLOOR,
};
use crate::config::{complexes, hermitian, lower, PointSpec, Rows, RunConfig};
use crate::output::{render, Outcome};

#[derive(Serialize)]
pub struct MassJson {
    pub point: PointSpec,
    pub block: Rows,
}

#[derive(Serialize)]
pub struct ConeResult {
    pub status: &'static str,
    pub residual: Option<f64>,
    pub measure: Option<Vec<MassJson>>,
    pub certificate: Option<CertificateJson>,
    pub validation: Option<ValidationJson>,
    pub revalidated: Option<bool>,
    pub best_residual: Option<f64>,
}

fn measure_json(m: &DiscreteMeasure) -> Vec<MassJson> {
    m.grid()
        .iter()
        .zip(m.blocks())
        .filter(|(_, b)| b.frobenius_norm() > 0.0)
        .map(|(p, b)| MassJson { point: PointSpec::from_point(p), block: lower(b) })
        .collect()
}

fn feasible(m: &DiscreteMeasure, residual: f64) -> (Outcome, ConeResult) {
    let result = ConeResult {
        status: "feasible",
        residual: Some(residual),
        measure: Some(measure_json(m)),
        certificate: None,
        validation: None,
        revalidated: None,
        best_residual: None,
    };
    (Outcome::Affirmative, result)
}

fn undecided(best_residual: f64) -> (Outcome, ConeResult) {
    let result = ConeResult {
        status: "undecided",
        residual: None,
        measure: None,
        certificate: None,
        validation: None,
        revalidated: None,
        best_residual: Some(best_residual),
    };
    (Outcome::Inconclusive, result)
}

/// Validates on the restricted family when there is one, else on the fine grid.
fn certified(cert: &DualCertificate, problem: &ConeProblem, cfg: &mut RunConfig, dual: &DualOptions) -> Result<(Outcome, ConeResult)> {
    let grid = match problem.restriction() {
        Some(r) => r.to_vec(),
        None => fine_grid(cfg),
    };
    let report = validate_certificate(cert, problem, &grid)?;
    let cert_json = CertificateJson::new(cert);
    let revalidated = revalidate(&cert_json, problem, &grid, dual.delta)?;
    let outcome = if revalidated && report.worst_margin >= MARGIN_FLOOR { Outcome::Negative } else { Outcome::Inconclusive };
    let result = ConeResult {
        status: "certificate",
        residual: None,
        measure: None,
        certificate: Some(cert_json),
        validation: Some(ValidationJson::from(&report)),
        revalidated: Some(revalidated),
        best_residual: None,
    };
    Ok((outcome, result))
}

pub fn run_pick(cfg: &mut RunConfig) -> Result<(Outcome, String)> {
    let nodes = SampleSet::new(complexes(required(&cfg.nodes, "nodes")?))?;
    let targets = complexes(required(&cfg.targets, "targets")?);
    let grid = search_grid(cfg);
    let restrict = restriction(cfg)?;
    let primal = primal_options(cfg);
    let dual = dual_options(cfg);
    let (outcome, result) = match pick_check(&nodes, &targets, grid.clone(), restrict.clone(), &primal, &dual)? {
        PickOutcome::Feasible { measure, residual } => feasible(&measure, residual),
        PickOutcome::Undecided { best_residual } => undecided(best_residual),
        PickOutcome::Certificate(cert) => {
            let kernel = neil_core::kernels::scalar_sigma_kernel(&targets, &nodes)?;
            let problem = ConeProblem::new(kernel, grid, restrict)?;
            certified(&cert, &problem, cfg, &dual)?
        }
    };
    Ok((outcome, render("pick", cfg, outcome, result)?))
}

pub fn run_cone(cfg: &mut RunConfig) -> Result<(Outcome, String)> {
    let set = sample_set(cfg)?;
    let d = *cfg.block_dim.get_or_insert(1);
    if !(1..=2).contains(&d) {
        bail!("block_dim must be 1 or 2");
    }
    let target = hermitian(required(&cfg.target, "target")?)?;
    let kernel = MatrixKernel::new(set, d, target)?;
    let grid = search_grid(cfg);
    let problem = ConeProblem::new(kernel, grid, restriction(cfg)?)?;
    let primal = primal_options(cfg);
    let dual = dual_options(cfg);
    let (outcome, result) = match primal_feasibility(&problem, &primal)? {
        PrimalOutcome::Feasible { measure, residual } => feasible(&measure, residual),
        PrimalOutcome::Undecided { best_residual } => match dual_search(&problem, &dual)? {
            Some(cert) => certified(&cert, &problem, cfg, &dual)?,
            None => undecided(best_residual),
        },
    };
    Ok((outcome, render("cone", cfg, outcome, result)?))
}
