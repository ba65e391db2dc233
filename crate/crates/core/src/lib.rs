//! Numerical tools around the Neil algebra: test-function cones on finite sample sets,
//! separating functionals, the representations they induce, and dilation checks.

pub mod cone;
pub mod dilation;
pub mod error;
pub mod gns;
pub mod kernels;
pub mod linalg;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, HermitianMatrix};
pub use num_complex::Complex64;
