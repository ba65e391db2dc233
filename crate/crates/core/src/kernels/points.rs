use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Disk points must satisfy `|c| <= 1 - DISK_MARGIN`.
pub const DISK_MARGIN: f64 = 1e-9;
/// Minimum pairwise distance between sample points.
pub const MIN_SEPARATION: f64 = 1e-8;

/// A test-function parameter: a point of the open disk or the point at infinity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExtendedPoint {
    Disk(Complex64),
    Infinity,
}

impl ExtendedPoint {
    pub fn disk(c: Complex64) -> Result<Self> {
        if !c.is_finite() {
            return Err(Error::NonFinite);
        }
        if c.norm() > 1.0 - DISK_MARGIN {
            return Err(Error::OutsideDisk { modulus: c.norm() });
        }
        Ok(ExtendedPoint::Disk(c))
    }

    pub fn real(x: f64) -> Result<Self> {
        Self::disk(Complex64::new(x, 0.0))
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, ExtendedPoint::Infinity)
    }

    pub fn as_disk(&self) -> Option<Complex64> {
        match self {
            ExtendedPoint::Disk(c) => Some(*c),
            ExtendedPoint::Infinity => None,
        }
    }

    /// Euclidean distance between disk points; 0 between two infinities and
    /// `+inf` between infinity and a disk point.
    pub fn distance(&self, other: &ExtendedPoint) -> f64 {
        match (self, other) {
            (ExtendedPoint::Disk(a), ExtendedPoint::Disk(b)) => (a - b).norm(),
            (ExtendedPoint::Infinity, ExtendedPoint::Infinity) => 0.0,
            _ => f64::INFINITY,
        }
    }
}

impl fmt::Display for ExtendedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedPoint::Disk(c) => write!(f, "{}{:+}i", c.re, c.im),
            ExtendedPoint::Infinity => write!(f, "inf"),
        }
    }
}

/// Ordered set of distinct points in the open unit disk.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleSet {
    points: Vec<Complex64>,
}

impl SampleSet {
    pub fn new(points: Vec<Complex64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidInput("sample set is empty".into()));
        }
        for p in &points {
            if !p.is_finite() {
                return Err(Error::NonFinite);
            }
            if p.norm() >= 1.0 {
                return Err(Error::OutsideDisk { modulus: p.norm() });
            }
        }
        for i in 0..points.len() {
            for j in 0..i {
                if (points[i] - points[j]).norm() < MIN_SEPARATION {
                    return Err(Error::InvalidInput(format!("sample points {j} and {i} coincide")));
                }
            }
        }
        Ok(SampleSet { points })
    }

    /// `{0, 1/2, -1/2, 0.3i, -0.3i, 0.6}`.
    pub fn default_six() -> Self {
        let c = Complex64::new;
        SampleSet {
            points: vec![c(0.0, 0.0), c(0.5, 0.0), c(-0.5, 0.0), c(0.0, 0.3), c(0.0, -0.3), c(0.6, 0.0)],
        }
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, z: Complex64) -> Option<usize> {
        self.points.iter().position(|p| (p - z).norm() < MIN_SEPARATION)
    }

    pub fn max_modulus(&self) -> f64 {
        self.points.iter().map(|p| p.norm()).fold(0.0, f64::max)
    }
}
