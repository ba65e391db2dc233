use anyhow::Result;
use neil_core::dilation::{variety_check, VarietyPair, DEFAULT_ANGLE_SAMPLES};
use serde::Serialize;

use super::required;
use crate::config::{cx, matrix, Cx, RunConfig};
use crate::output::{render, Outcome};

pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Serialize)]
pub struct VarietyResult {
    pub verdict: &'static str,
    pub message: String,
    pub max_norm: f64,
    pub argmax: Cx,
    pub witness: Option<Cx>,
    pub max_adjacent_diff: f64,
    /// `[theta, norm]` pairs.
    pub profile: Vec<[f64; 2]>,
}

pub fn run(cfg: &mut RunConfig) -> Result<(Outcome, String)> {
    let s = matrix(required(&cfg.s, "s")?)?;
    let t = matrix(required(&cfg.t, "t")?)?;
    let angles = *cfg.angles.get_or_insert(DEFAULT_ANGLE_SAMPLES);
    let tol = *cfg.tol.get_or_insert(DEFAULT_TOL);
    let pair = VarietyPair::new(s, t)?;
    let p = variety_check(&pair, angles)?;
    let pass = p.max_norm <= 1.0 + tol;
    let result = VarietyResult {
        verdict: if pass { "pass" } else { "fail" },
        message: if pass {
            "dilation to commuting unitaries with equal squares exists".into()
        } else {
            format!("norm {} exceeds one at the witness", p.max_norm)
        },
        max_norm: p.max_norm,
        argmax: cx(p.argmax),
        witness: (!pass).then(|| cx(p.argmax)),
        max_adjacent_diff: p.max_adjacent_diff,
        profile: p.profile.iter().map(|&(th, n)| [th, n]).collect(),
    };
    let outcome = if pass { Outcome::Affirmative } else { Outcome::Negative };
    Ok((outcome, render("variety", cfg, outcome, result)?))
}
