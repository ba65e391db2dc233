use anyhow::Result;
use neil_core::cone::{dual_search, ConeProblem};
use neil_core::gns::build_noxy;
use neil_core::kernels::{scalar_sigma_kernel, test_fn, ExtendedPoint};
use neil_core::Complex64;
use serde::Serialize;

use super::{dual_options, revalidate, sample_set, search_grid, CertificateJson};
use crate::config::{complex, rows, PointSpec, Rows, RunConfig};
use crate::output::{render, Outcome};

/// Required excess of the witness multiplier norm over one.
pub const WITNESS_MARGIN: f64 = 1e-3;

#[derive(Serialize)]
pub struct NoxyResult {
    pub certificate: Option<CertificateJson>,
    pub revalidated: Option<bool>,
    pub x: Option<Rows>,
    pub y: Option<Rows>,
    pub rank: Option<usize>,
    pub norm_x: Option<f64>,
    pub norm_y: Option<f64>,
    pub commutator: Option<f64>,
    pub relation: Option<f64>,
    pub witness_norm: Option<f64>,
    pub contractive: Option<bool>,
    pub witness_exceeds: Option<bool>,
}

pub fn run(cfg: &mut RunConfig) -> Result<(Outcome, String)> {
    let set = sample_set(cfg)?;
    let mu = ExtendedPoint::disk(complex(*cfg.mu.get_or_insert([0.4, 0.0])))?;
    let family = cfg
        .restriction
        .get_or_insert_with(|| vec![PointSpec::Disk([0.0, 0.0]), PointSpec::Named("inf".into())])
        .iter()
        .map(PointSpec::resolve)
        .collect::<Result<Vec<_>>>()?;
    let grid = search_grid(cfg);
    let dual = dual_options(cfg);
    let f: Vec<Complex64> = set.points().iter().map(|&x| test_fn(&mu, x)).collect();
    let problem = ConeProblem::new(scalar_sigma_kernel(&f, &set)?, grid, Some(family.clone()))?;

    let mut result = NoxyResult {
        certificate: None,
        revalidated: None,
        x: None,
        y: None,
        rank: None,
        norm_x: None,
        norm_y: None,
        commutator: None,
        relation: None,
        witness_norm: None,
        contractive: None,
        witness_exceeds: None,
    };
    let Some(cert) = dual_search(&problem, &dual)? else {
        return Ok((Outcome::Inconclusive, render("noxy", cfg, Outcome::Inconclusive, result)?));
    };
    let cert_json = CertificateJson::new(&cert);
    let revalidated = revalidate(&cert_json, &problem, &family, dual.delta)?;
    let pair = build_noxy(&set, &cert.w, &f, WITNESS_MARGIN)?;
    let r = &pair.report;
    let ok = revalidated && r.contractive && r.witness_exceeds;
    result.certificate = Some(cert_json);
    result.revalidated = Some(revalidated);
    result.x = Some(rows(&pair.x));
    result.y = Some(rows(&pair.y));
    result.rank = Some(r.rank);
    result.norm_x = Some(r.norm_x);
    result.norm_y = Some(r.norm_y);
    result.commutator = Some(r.commutator);
    result.relation = Some(r.relation);
    result.witness_norm = Some(r.witness_norm);
    result.contractive = Some(r.contractive);
    result.witness_exceeds = Some(r.witness_exceeds);
    let outcome = if ok { Outcome::Affirmative } else { Outcome::Inconclusive };
    Ok((outcome, render("noxy", cfg, outcome, result)?))
}
