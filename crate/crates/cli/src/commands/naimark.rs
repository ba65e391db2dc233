use anyhow::{bail, Result};
use neil_core::dilation::{check_naimark, naimark, NaimarkInput};
use neil_core::linalg::{herm_eig, HermitianMatrix};
use neil_core::{Complex64, ComplexMatrix};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::{hermitian, lower, rows, Rows, RunConfig};
use crate::output::{render, Outcome};

pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Serialize)]
pub struct CheckJson {
    pub isometry: f64,
    pub compress_p: f64,
    pub compress_q: f64,
    pub sum_p: f64,
    pub sum_q: f64,
    pub unitary: f64,
    pub alignment: f64,
    pub max: f64,
}

#[derive(Serialize)]
pub struct NaimarkResult {
    pub v: Rows,
    pub p: Vec<Rows>,
    pub q: Vec<Rows>,
    pub u: Rows,
    pub check: CheckJson,
}

/// `G (G* G)^{-1/2}` for a random `rows x cols` matrix `G`.
pub fn random_isometry(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Result<ComplexMatrix> {
    let g = ComplexMatrix::from_fn(rows, cols, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    let gram = HermitianMatrix::symmetrize(&g.adjoint().matmul(&g))?;
    let inv_sqrt = herm_eig(&gram)?.reconstruct_with(|x| 1.0 / x.sqrt());
    Ok(g.matmul(inv_sqrt.as_matrix()))
}

/// Rank-one summands `a_j a_j*` from the rows of a random isometry, `zeros` of them zero.
pub fn random_decomposition(rng: &mut ChaCha8Rng, n: usize, m: usize, zeros: usize) -> Result<Vec<HermitianMatrix>> {
    let v = random_isometry(rng, m - zeros, n)?;
    let mut summands: Vec<HermitianMatrix> = (0..m - zeros)
        .map(|j| HermitianMatrix::outer(&v.row(j).iter().map(|z| z.conj()).collect::<Vec<_>>()))
        .collect();
    summands.extend((0..zeros).map(|_| HermitianMatrix::zeros(n)));
    summands.shuffle(rng);
    Ok(summands)
}

fn input(cfg: &mut RunConfig) -> Result<NaimarkInput> {
    if let (Some(a), Some(b)) = (&cfg.a_list, &cfg.b_list) {
        let a = a.iter().map(hermitian).collect::<Result<Vec<_>>>()?;
        let b = b.iter().map(hermitian).collect::<Result<Vec<_>>>()?;
        return Ok(NaimarkInput::new(a, b)?);
    }
    if cfg.a_list.is_some() || cfg.b_list.is_some() {
        bail!("a_list and b_list must be given together");
    }
    let n = *cfg.n.get_or_insert(2);
    let m = *cfg.m.get_or_insert(4);
    let zeros = *cfg.zero_summands.get_or_insert(1);
    if n == 0 || m < n + zeros {
        bail!("need n >= 1 and m >= n + zero_summands");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(*cfg.seed.get_or_insert(0));
    let a = random_decomposition(&mut rng, n, m, zeros)?;
    let b = random_decomposition(&mut rng, n, m, 0)?;
    Ok(NaimarkInput::new(a, b)?)
}

pub fn run(cfg: &mut RunConfig) -> Result<(Outcome, String)> {
    let input = input(cfg)?;
    let tol = *cfg.tol.get_or_insert(DEFAULT_TOL);
    let d = naimark(&input)?;
    let c = check_naimark(&input, &d);
    let check = CheckJson {
        isometry: c.isometry,
        compress_p: c.compress_p,
        compress_q: c.compress_q,
        sum_p: c.sum_p,
        sum_q: c.sum_q,
        unitary: c.unitary,
        alignment: c.alignment,
        max: c.max(),
    };
    let outcome = if c.max() <= tol { Outcome::Affirmative } else { Outcome::Inconclusive };
    let result = NaimarkResult {
        v: rows(&d.v),
        p: d.p.iter().map(lower).collect(),
        q: d.q.iter().map(lower).collect(),
        u: rows(&d.u),
        check,
    };
    Ok((outcome, render("naimark", cfg, outcome, result)?))
}
