//! Dense complex linear algebra at the sizes this crate needs (dimension up to a few hundred).

mod eigen;
mod factor;
mod matrix;

pub use eigen::{herm_eig, min_eig, op_norm, psd_project, HermitianEigen, MAX_SWEEPS};
pub use factor::{
    align_isometries, cholesky, default_rank_tol, fix_phase, inverse_from_cholesky, isometry_defect,
    logdet_from_cholesky, rank_factor, DEFAULT_RANK_TOL,
};
pub use matrix::{ComplexMatrix, HermitianMatrix};
