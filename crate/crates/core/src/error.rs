use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NonConvergence { sweeps: usize, off_norm: f64 },

    #[error("matrix is indefinite beyond tolerance: eigenvalue {eigenvalue:e} < -{tol:e}")]
    Indefinite { eigenvalue: f64, tol: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("non-finite entry in matrix")]
    NonFinite,

    #[error("point {modulus} is outside the admissible disk")]
    OutsideDisk { modulus: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("not an isometry: ||V*V - I|| = {deviation:e}")]
    NotIsometry { deviation: f64 },

    #[error("not unitary: ||U*U - I|| = {deviation:e}")]
    NotUnitary { deviation: f64 },

    #[error("summands do not add up to the identity: deviation {deviation:e}")]
    SumToIdentity { deviation: f64 },

    #[error("summand {index} is not rank one (second eigenvalue {second:e})")]
    NotRankOne { index: usize, second: f64 },

    #[error("multiplier is not well defined on the quotient: null-space leakage {residual:e}")]
    IllDefined { residual: f64 },

    #[error("values at the origin differ by {difference:e}")]
    OriginMismatch { difference: f64 },

    #[error("variety pair hypothesis violated: {0}")]
    VarietyHypothesis(String),
}
