use std::path::Path;

use anyhow::{bail, Context, Result};
use neil_core::kernels::ExtendedPoint;
use neil_core::linalg::HermitianMatrix;
use neil_core::{Complex64, ComplexMatrix};
use serde::{Deserialize, Serialize};

/// Complex number as `[re, im]`.
pub type Cx = [f64; 2];
/// Dense matrix as a list of rows.
pub type Rows = Vec<Vec<Cx>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub radii: usize,
    pub angles: usize,
}

impl std::str::FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (r, a) = s.split_once(['x', 'X']).ok_or_else(|| format!("expected <radii>x<angles>, got {s:?}"))?;
        let radii = r.trim().parse().map_err(|e| format!("radii: {e}"))?;
        let angles = a.trim().parse().map_err(|e| format!("angles: {e}"))?;
        if radii == 0 || angles == 0 {
            return Err("grid sizes must be positive".into());
        }
        Ok(GridSpec { radii, angles })
    }
}

/// A point of the closed parameter space: `[re, im]` or `"inf"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointSpec {
    Disk(Cx),
    Named(String),
}

impl PointSpec {
    pub fn resolve(&self) -> Result<ExtendedPoint> {
        match self {
            PointSpec::Disk(z) => Ok(ExtendedPoint::disk(complex(*z))?),
            PointSpec::Named(s) if matches!(s.as_str(), "inf" | "infinity") => Ok(ExtendedPoint::Infinity),
            PointSpec::Named(s) => bail!("unknown point {s:?}"),
        }
    }

    pub fn from_point(p: &ExtendedPoint) -> Self {
        match p.as_disk() {
            Some(z) => PointSpec::Disk(cx(z)),
            None => PointSpec::Named("inf".into()),
        }
    }
}

/// Everything a run depends on. Unused fields are left empty and omitted from output.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sample_set: Option<Vec<Cx>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda1: Option<Cx>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda2: Option<Cx>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u: Option<Rows>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub validation_grid: Option<GridSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nodes: Option<Vec<Cx>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub targets: Option<Vec<Cx>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub restriction: Option<Vec<PointSpec>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub block_dim: Option<usize>,
    /// Flat target kernel as a lower triangle.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<Rows>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a_list: Option<Vec<Rows>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b_list: Option<Vec<Rows>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zero_summands: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<Rows>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<Rows>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub angles: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<Cx>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_max: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<Rows>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<Rows>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shift: Option<Rows>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub embed: Option<Rows>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }

    /// Rejects non-positive tolerances wherever they are set.
    pub fn check_tolerances(&self) -> Result<()> {
        for (name, v) in [("tol", self.tol), ("eps", self.eps), ("delta", self.delta)] {
            if let Some(v) = v {
                if !(v > 0.0 && v.is_finite()) {
                    bail!("{name} must be positive, got {v}");
                }
            }
        }
        Ok(())
    }
}

pub fn complex(z: Cx) -> Complex64 {
    Complex64::new(z[0], z[1])
}

pub fn cx(z: Complex64) -> Cx {
    [z.re, z.im]
}

pub fn complexes(v: &[Cx]) -> Vec<Complex64> {
    v.iter().copied().map(complex).collect()
}

pub fn matrix(rows: &Rows) -> Result<ComplexMatrix> {
    let rows: Vec<Vec<Complex64>> = rows.iter().map(|r| complexes(r)).collect();
    Ok(ComplexMatrix::from_rows(&rows)?)
}

pub fn rows(m: &ComplexMatrix) -> Rows {
    (0..m.rows()).map(|i| m.row(i).iter().copied().map(cx).collect()).collect()
}

pub fn hermitian(lower: &Rows) -> Result<HermitianMatrix> {
    let rows: Vec<Vec<Complex64>> = lower.iter().map(|r| complexes(r)).collect();
    Ok(HermitianMatrix::from_lower_triangle(&rows)?)
}

pub fn lower(h: &HermitianMatrix) -> Rows {
    h.lower_triangle().iter().map(|r| r.iter().copied().map(cx).collect()).collect()
}
