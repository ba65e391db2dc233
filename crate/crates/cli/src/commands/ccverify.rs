use anyhow::{bail, Result};
use neil_core::dilation::{cc_dilation_verify, example_pair, no_t_obstruction};
use serde::Serialize;

use crate::config::{cx, matrix, Cx, RunConfig};
use crate::output::{render, Outcome};

pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Serialize)]
pub struct ObstructionJson {
    pub window: usize,
    /// `[n, <pi(z^2) e_n, e_3>]` over the basis of the subspace.
    pub overlaps: Vec<(i64, Cx)>,
    pub max_overlap: f64,
    pub cube_overlap: Cx,
}

#[derive(Serialize)]
pub struct CcResult {
    /// `[n, deviation]` pairs.
    pub deviations: Vec<(usize, f64)>,
    pub max_deviation: f64,
    pub commutator: f64,
    pub relation: f64,
    pub obstruction: Option<ObstructionJson>,
}

pub fn run(cfg: &mut RunConfig) -> Result<(Outcome, String)> {
    let explicit = [&cfg.x, &cfg.y, &cfg.shift, &cfg.embed].iter().filter(|m| m.is_some()).count();
    let (x, y, u, e, obstruction) = match explicit {
        4 => {
            let m = |r: &Option<_>| matrix(r.as_ref().expect("checked"));
            (m(&cfg.x)?, m(&cfg.y)?, m(&cfg.shift)?, m(&cfg.embed)?, None)
        }
        0 => {
            let window = *cfg.window.get_or_insert(8);
            let (x, y, u, e) = example_pair(window);
            let o = no_t_obstruction(window)?;
            let json = ObstructionJson {
                window: o.window,
                overlaps: o.overlaps.iter().map(|&(n, z)| (n, cx(z))).collect(),
                max_overlap: o.max_overlap,
                cube_overlap: cx(o.cube_overlap),
            };
            (x, y, u, e, Some(json))
        }
        _ => bail!("x, y, shift and embed must be given together"),
    };
    let n_max = *cfg.n_max.get_or_insert(cfg.window.unwrap_or(8));
    let tol = *cfg.tol.get_or_insert(DEFAULT_TOL);
    let r = cc_dilation_verify(&x, &y, &u, &e, n_max)?;
    let max_deviation = r.max_deviation();
    let outcome = if max_deviation <= tol { Outcome::Affirmative } else { Outcome::Negative };
    let result = CcResult { deviations: r.deviations, max_deviation, commutator: r.commutator, relation: r.relation, obstruction };
    Ok((outcome, render("ccverify", cfg, outcome, result)?))
}
