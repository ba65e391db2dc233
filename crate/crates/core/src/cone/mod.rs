//! Membership in discretized test-function cones: primal measures, dual
//! certificates, certificate validation and structure of recovered measures.

mod admm;
mod barrier;
mod dual;
mod primal;
mod structure;

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kernels::{generator_diag_values, ExtendedPoint, MatrixBlaschke, MatrixKernel, SampleSet};
use crate::linalg::{min_eig, HermitianMatrix};

pub use barrier::BarrierOptions;
pub use dual::{dual_search, grid_margins, validate_certificate, DualOptions, ValidationReport};
pub use primal::{pick_check, primal_feasibility, PickOutcome, PrimalOptions, PrimalOutcome};
pub use structure::{recover_structure, Cluster, StructureReport, CLUSTER_RADIUS, DUST_TRACE};

/// PSD slack allowed in measure blocks.
pub const MEASURE_PSD_TOL: f64 = 1e-9;

/// A cone membership question: is `target` in the cone generated by the grid
/// (or by `restriction` when present)?
#[derive(Clone, Debug)]
pub struct ConeProblem {
    grid: Vec<ExtendedPoint>,
    target: MatrixKernel,
    restriction: Option<Vec<ExtendedPoint>>,
}

impl ConeProblem {
    pub fn new(target: MatrixKernel, grid: Vec<ExtendedPoint>, restriction: Option<Vec<ExtendedPoint>>) -> Result<Self> {
        if grid.is_empty() {
            return Err(Error::InvalidInput("grid is empty".into()));
        }
        match &restriction {
            Some(r) if r.is_empty() => return Err(Error::InvalidInput("generator restriction is empty".into())),
            None if !grid.iter().any(ExtendedPoint::is_infinity) => {
                return Err(Error::InvalidInput("grid must contain the point at infinity".into()))
            }
            _ => {}
        }
        Ok(ConeProblem { grid, target, restriction })
    }

    pub fn sample_set(&self) -> &SampleSet {
        self.target.sample_set()
    }

    pub fn block_dim(&self) -> usize {
        self.target.block_dim()
    }

    pub fn dim(&self) -> usize {
        self.target.dim()
    }

    pub fn grid(&self) -> &[ExtendedPoint] {
        &self.grid
    }

    pub fn target(&self) -> &MatrixKernel {
        &self.target
    }

    pub fn restriction(&self) -> Option<&[ExtendedPoint]> {
        self.restriction.as_deref()
    }

    /// Generators actually used: the restriction if given, else the grid.
    pub fn generators(&self) -> &[ExtendedPoint] {
        self.restriction.as_deref().unwrap_or(&self.grid)
    }

    pub fn with_target(&self, target: MatrixKernel) -> Result<Self> {
        Self::new(target, self.grid.clone(), self.restriction.clone())
    }

    pub(crate) fn diag_values(&self, lambda: &ExtendedPoint) -> Vec<Complex64> {
        generator_diag_values(lambda, self.sample_set(), self.block_dim())
    }
}

/// PSD block matrices attached to grid points.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteMeasure {
    grid: Vec<ExtendedPoint>,
    blocks: Vec<HermitianMatrix>,
}

impl DiscreteMeasure {
    pub fn new(grid: Vec<ExtendedPoint>, blocks: Vec<HermitianMatrix>) -> Result<Self> {
        if grid.len() != blocks.len() {
            return Err(Error::DimensionMismatch(format!("{} grid points, {} blocks", grid.len(), blocks.len())));
        }
        if let Some(first) = blocks.first() {
            if blocks.iter().any(|b| b.dim() != first.dim()) {
                return Err(Error::DimensionMismatch("measure blocks differ in size".into()));
            }
        }
        for b in &blocks {
            let m = min_eig(b)?;
            if m < -MEASURE_PSD_TOL {
                return Err(Error::Indefinite { eigenvalue: m, tol: MEASURE_PSD_TOL });
            }
        }
        Ok(DiscreteMeasure { grid, blocks })
    }

    pub fn zeros(grid: Vec<ExtendedPoint>, dim: usize) -> Self {
        let blocks = vec![HermitianMatrix::zeros(dim); grid.len()];
        DiscreteMeasure { grid, blocks }
    }

    pub fn grid(&self) -> &[ExtendedPoint] {
        &self.grid
    }

    pub fn blocks(&self) -> &[HermitianMatrix] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    /// Sum of block traces.
    pub fn total_mass(&self) -> f64 {
        self.blocks.iter().map(HermitianMatrix::trace).sum()
    }
}

/// A Hermitian `W` whose trace pairing is nonnegative on the cone and negative on the target.
#[derive(Clone, Debug, PartialEq)]
pub struct DualCertificate {
    pub w: HermitianMatrix,
    /// Smallest `min_eig(W - D* W D)` over the problem grid.
    pub grid_margin: f64,
    /// `tr(W T)` for the problem target `T`.
    pub violation: f64,
    pub validation_grid_size: usize,
}

/// Entrywise pattern `1 - d_i conj(d_j)` of the generator with diagonal `d`.
pub(crate) fn generator_pattern(d: &[Complex64]) -> HermitianMatrix {
    HermitianMatrix::from_fn(d.len(), |i, j| 1.0 - d[i] * d[j].conj())
}

/// `sum_g (M_g - D_g M_g D_g*)`.
pub fn apply_generators(m: &DiscreteMeasure, problem: &ConeProblem) -> Result<MatrixKernel> {
    let n = problem.dim();
    let mut acc = HermitianMatrix::zeros(n);
    for (lambda, block) in m.grid.iter().zip(&m.blocks) {
        if block.dim() != n {
            return Err(Error::DimensionMismatch(format!("measure block {} vs kernel {}", block.dim(), n)));
        }
        if block.frobenius_norm() == 0.0 {
            continue;
        }
        let pattern = generator_pattern(&problem.diag_values(lambda));
        acc = &acc + &block.schur(&pattern);
    }
    MatrixKernel::new(problem.sample_set().clone(), problem.block_dim(), acc)
}

/// Frobenius distance between `apply_generators(m)` and the target.
pub fn residual(m: &DiscreteMeasure, problem: &ConeProblem) -> Result<f64> {
    let k = apply_generators(m, problem)?;
    Ok(k.flat().as_matrix().distance(problem.target().flat().as_matrix()))
}

/// `{inf} + {r_k e^{2 pi i j / angles}}` with `r_k = (k + 1/2) / radii`.
pub fn polar_grid(radii: usize, angles: usize) -> Vec<ExtendedPoint> {
    let mut grid = vec![ExtendedPoint::Infinity];
    for k in 0..radii {
        let r = (k as f64 + 0.5) / radii as f64;
        for j in 0..angles {
            grid.push(ExtendedPoint::Disk(Complex64::from_polar(r, TAU * j as f64 / angles as f64)));
        }
    }
    grid
}

/// The 321-point search grid (10 radii, 32 angles, infinity).
pub fn default_grid() -> Vec<ExtendedPoint> {
    polar_grid(10, 32)
}

/// Evenly spaced radii in `[0, 0.999]` (origin once) times `angles`, plus infinity.
pub fn validation_grid(radii: usize, angles: usize) -> Vec<ExtendedPoint> {
    let rmax = 0.999;
    let mut grid = Vec::with_capacity(radii * angles + 1);
    for k in 0..radii {
        let r = if radii == 1 { rmax } else { rmax * k as f64 / (radii - 1) as f64 };
        if r == 0.0 {
            grid.push(ExtendedPoint::Disk(Complex64::new(0.0, 0.0)));
            continue;
        }
        for j in 0..angles {
            grid.push(ExtendedPoint::Disk(Complex64::from_polar(r, TAU * j as f64 / angles as f64)));
        }
    }
    grid.push(ExtendedPoint::Infinity);
    grid
}

pub fn default_validation_grid() -> Vec<ExtendedPoint> {
    validation_grid(64, 128)
}

/// Measure at `lambda = 0` whose generator image is the square `f f*`.
///
/// Uses `M_ij = f_i conj(f_j) / (1 - x_i^3 conj(x_j^3))`, PSD as a Schur
/// product of `f f*` with the Szegő kernel of `z^3`.
pub fn squares_measure(f: &[Complex64], sample_set: &SampleSet, d: usize) -> Result<DiscreteMeasure> {
    if f.len() != sample_set.len() * d {
        return Err(Error::DimensionMismatch(format!("vector of length {} for kernel size {}", f.len(), sample_set.len() * d)));
    }
    let origin = ExtendedPoint::Disk(Complex64::new(0.0, 0.0));
    let g = generator_diag_values(&origin, sample_set, d);
    let block = HermitianMatrix::from_fn(f.len(), |i, j| f[i] * f[j].conj() / (1.0 - g[i] * g[j].conj()));
    DiscreteMeasure::new(vec![origin], vec![block])
}

/// Closed-form measure for `F = z^2 Phi` with diagonal `U`: mass `J (x) e_k e_k*` at `lambda_k`,
/// `J` the all-ones matrix on the sample set.
pub fn diagonal_witness(phi: &MatrixBlaschke, sample_set: &SampleSet) -> Result<DiscreteMeasure> {
    let u = phi.u();
    if u[(0, 1)].norm() > crate::kernels::DIAGONAL_TOL || u[(1, 0)].norm() > crate::kernels::DIAGONAL_TOL {
        return Err(Error::InvalidInput("closed-form witness needs a diagonal U".into()));
    }
    let n = sample_set.len();
    let block = |k: usize| HermitianMatrix::from_fn(2 * n, |i, j| if i % 2 == k && j % 2 == k { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) });
    DiscreteMeasure::new(
        vec![ExtendedPoint::Disk(phi.lambda1()), ExtendedPoint::Disk(phi.lambda2())],
        vec![block(0), block(1)],
    )
}

/// Target kernel `I - F(x_i) F(x_j)*` for `F = z^2 Phi`.
pub fn counterexample_target(phi: &MatrixBlaschke, sample_set: &SampleSet) -> MatrixKernel {
    let f: Vec<_> = sample_set.points().iter().map(|&x| phi.f_eval(x)).collect();
    crate::kernels::sigma_kernel(&f, sample_set).expect("2x2 values on every sample point")
}
