pub mod ccverify;
pub mod cone;
pub mod counterexample;
pub mod naimark;
pub mod noxy;
pub mod variety;

use anyhow::{anyhow, Context, Result};
use neil_core::cone::{
    polar_grid, validate_certificate, validation_grid, ConeProblem, DualCertificate, DualOptions, PrimalOptions,
    ValidationReport,
};
use neil_core::kernels::{ExtendedPoint, SampleSet};
use serde::{Deserialize, Serialize};

use crate::config::{complexes, cx, hermitian, lower, GridSpec, PointSpec, Rows, RunConfig};

pub const DEFAULT_GRID: GridSpec = GridSpec { radii: 10, angles: 32 };
pub const DEFAULT_VALIDATION_GRID: GridSpec = GridSpec { radii: 64, angles: 128 };
/// Fine-grid margin accepted for an emitted certificate.
pub const MARGIN_FLOOR: f64 = -1e-6;

pub(crate) fn sample_set(cfg: &mut RunConfig) -> Result<SampleSet> {
    let pts = cfg
        .sample_set
        .get_or_insert_with(|| SampleSet::default_six().points().iter().copied().map(cx).collect())
        .clone();
    Ok(SampleSet::new(complexes(&pts))?)
}

pub(crate) fn search_grid(cfg: &mut RunConfig) -> Vec<ExtendedPoint> {
    let g = *cfg.grid.get_or_insert(DEFAULT_GRID);
    polar_grid(g.radii, g.angles)
}

pub(crate) fn fine_grid(cfg: &mut RunConfig) -> Vec<ExtendedPoint> {
    let g = *cfg.validation_grid.get_or_insert(DEFAULT_VALIDATION_GRID);
    validation_grid(g.radii, g.angles)
}

pub(crate) fn restriction(cfg: &RunConfig) -> Result<Option<Vec<ExtendedPoint>>> {
    cfg.restriction.as_ref().map(|r| r.iter().map(PointSpec::resolve).collect()).transpose()
}

pub(crate) fn primal_options(cfg: &mut RunConfig) -> PrimalOptions {
    let defaults = PrimalOptions::default();
    PrimalOptions { tol: *cfg.tol.get_or_insert(defaults.tol), ..defaults }
}

pub(crate) fn dual_options(cfg: &mut RunConfig) -> DualOptions {
    let defaults = DualOptions::default();
    DualOptions {
        eps: *cfg.eps.get_or_insert(defaults.eps),
        delta: *cfg.delta.get_or_insert(defaults.delta),
        ..defaults
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateJson {
    /// Lower triangle of `W`.
    pub w: Rows,
    pub grid_margin: f64,
    pub violation: f64,
    pub search_grid_size: usize,
}

impl CertificateJson {
    pub fn new(c: &DualCertificate) -> Self {
        CertificateJson {
            w: lower(&c.w),
            grid_margin: c.grid_margin,
            violation: c.violation,
            search_grid_size: c.validation_grid_size,
        }
    }

    pub fn certificate(&self) -> Result<DualCertificate> {
        Ok(DualCertificate {
            w: hermitian(&self.w)?,
            grid_margin: self.grid_margin,
            violation: self.violation,
            validation_grid_size: self.search_grid_size,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationJson {
    pub worst_margin: f64,
    pub argmin: PointSpec,
    pub modulus_of_continuity: f64,
    pub grid_size: usize,
    pub violation: f64,
}

impl From<&ValidationReport> for ValidationJson {
    fn from(r: &ValidationReport) -> Self {
        ValidationJson {
            worst_margin: r.worst_margin,
            argmin: PointSpec::from_point(&r.argmin),
            modulus_of_continuity: r.modulus_of_continuity,
            grid_size: r.grid_size,
            violation: r.violation,
        }
    }
}

/// Serializes the certificate, reads it back and re-runs the validation on the result.
pub(crate) fn revalidate(
    cert: &CertificateJson,
    problem: &ConeProblem,
    grid: &[ExtendedPoint],
    delta: f64,
) -> Result<bool> {
    let text = serde_json::to_string(cert)?;
    let loaded: CertificateJson = serde_json::from_str(&text).context("reloading certificate")?;
    let report = validate_certificate(&loaded.certificate()?, problem, grid)?;
    Ok(report.worst_margin >= MARGIN_FLOOR && report.violation <= -delta)
}

pub(crate) fn required<'a, T>(field: &'a Option<T>, name: &str) -> Result<&'a T> {
    field.as_ref().ok_or_else(|| anyhow!("config field `{name}` is required"))
}
