use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{op_norm, ComplexMatrix};

pub const DEFAULT_ANGLE_SAMPLES: usize = 720;
/// Tolerance on `ST = TS` and `S^2 = T^2`.
pub const RELATION_TOL: f64 = 1e-10;
pub const SPECTRAL_BOUND: f64 = 1.0 + 1e-8;
const ORIGIN_TOL: f64 = 1e-12;
const SQUARINGS: usize = 30;

/// Extends `H+` on `w = z` and `H-` on `w = -z` to `F(z, w)` with
/// `F(t, t) = H+(t)` and `F(t, -t) = H-(t)`.
pub fn variety_extend(
    h_plus: impl Fn(Complex64) -> ComplexMatrix,
    h_minus: impl Fn(Complex64) -> ComplexMatrix,
    z: Complex64,
    w: Complex64,
) -> Result<ComplexMatrix> {
    let zero = Complex64::new(0.0, 0.0);
    let c = h_plus(zero);
    let c_minus = h_minus(zero);
    if c.rows() != c_minus.rows() || c.cols() != c_minus.cols() {
        return Err(Error::DimensionMismatch("H+ and H- differ in shape".into()));
    }
    let difference = c.distance(&c_minus);
    if difference > ORIGIN_TOL {
        return Err(Error::OriginMismatch { difference });
    }
    let one = Complex64::new(1.0, 0.0);
    let plus = &h_plus((z + w) / 2.0) - &c;
    let minus = &h_minus((z - w) / 2.0) - &c;
    Ok(&(&c + &plus.scale(one - (z - w))) + &minus.scale(one - (z + w)))
}

/// Commuting `S, T` with `S^2 = T^2`.
#[derive(Clone, Debug, PartialEq)]
pub struct VarietyPair {
    s: ComplexMatrix,
    t: ComplexMatrix,
}

impl VarietyPair {
    pub fn new(s: ComplexMatrix, t: ComplexMatrix) -> Result<Self> {
        if !s.is_square() || s.rows() != t.rows() || s.cols() != t.cols() {
            return Err(Error::DimensionMismatch("S and T must be square of equal size".into()));
        }
        let commutator = s.matmul(&t).distance(&t.matmul(&s));
        if commutator > RELATION_TOL {
            return Err(Error::VarietyHypothesis(format!("||ST - TS|| = {commutator:e}")));
        }
        let squares = s.matmul(&s).distance(&t.matmul(&t));
        if squares > RELATION_TOL {
            return Err(Error::VarietyHypothesis(format!("||S^2 - T^2|| = {squares:e}")));
        }
        let rho = spectral_radius(&s);
        if rho > SPECTRAL_BOUND {
            return Err(Error::VarietyHypothesis(format!("spectral radius of S is {rho}")));
        }
        Ok(VarietyPair { s, t })
    }

    pub fn s(&self) -> &ComplexMatrix {
        &self.s
    }

    pub fn t(&self) -> &ComplexMatrix {
        &self.t
    }

    /// `lambda S + (1 - lambda) T`.
    pub fn combination(&self, lambda: Complex64) -> ComplexMatrix {
        &self.s.scale(lambda) + &self.t.scale(Complex64::new(1.0, 0.0) - lambda)
    }
}

/// `lim ||A^(2^k)||^(2^-k)` by normalised repeated squaring.
pub fn spectral_radius(a: &ComplexMatrix) -> f64 {
    let mut m = a.clone();
    let mut log_scale = 0.0;
    let mut power = 1.0;
    for _ in 0..SQUARINGS {
        let nrm = m.frobenius_norm();
        if nrm == 0.0 {
            return 0.0;
        }
        m = m.scale_real(1.0 / nrm);
        log_scale += nrm.ln() / power;
        m = m.matmul(&m);
        power *= 2.0;
    }
    let nrm = m.frobenius_norm();
    if nrm == 0.0 {
        return 0.0;
    }
    (log_scale + nrm.ln() / power).exp()
}

/// `(1 + e^{i theta}) / 2`.
pub fn circle_point(theta: f64) -> Complex64 {
    (Complex64::new(1.0, 0.0) + Complex64::from_polar(1.0, theta)) / 2.0
}

#[derive(Clone, Debug, PartialEq)]
pub struct VarietyProfile {
    /// `(theta, ||lambda S + (1 - lambda) T||)` on the sampled circle.
    pub profile: Vec<(f64, f64)>,
    pub max_norm: f64,
    pub argmax: Complex64,
    pub max_adjacent_diff: f64,
}

pub fn variety_check(pair: &VarietyPair, angle_samples: usize) -> Result<VarietyProfile> {
    if angle_samples == 0 {
        return Err(Error::InvalidInput("at least one angle sample is needed".into()));
    }
    let mut profile = Vec::with_capacity(angle_samples);
    let mut max_norm = f64::NEG_INFINITY;
    let mut argmax = Complex64::new(0.0, 0.0);
    for k in 0..angle_samples {
        let theta = 2.0 * PI * k as f64 / angle_samples as f64;
        let lambda = circle_point(theta);
        let norm = op_norm(&pair.combination(lambda))?;
        if norm > max_norm {
            max_norm = norm;
            argmax = lambda;
        }
        profile.push((theta, norm));
    }
    let max_adjacent_diff = (0..angle_samples)
        .map(|k| (profile[k].1 - profile[(k + 1) % angle_samples].1).abs())
        .fold(0.0, f64::max);
    Ok(VarietyProfile { profile, max_norm, argmax, max_adjacent_diff })
}

#[derive(Clone, Debug, PartialEq)]
pub enum VarietyVerdict {
    Pass { max_norm: f64 },
    Fail { witness: Complex64, norm: f64 },
}

/// Whether every sampled `lambda S + (1 - lambda) T` stays within `1 + tol` in norm.
pub fn variety_verdict(pair: &VarietyPair, angle_samples: usize, tol: f64) -> Result<VarietyVerdict> {
    let p = variety_check(pair, angle_samples)?;
    Ok(if p.max_norm <= 1.0 + tol {
        VarietyVerdict::Pass { max_norm: p.max_norm }
    } else {
        VarietyVerdict::Fail { witness: p.argmax, norm: p.max_norm }
    })
}

/// `S = [[0, 1], [0, 0]]`, `T = i S`.
pub fn nilpotent_example() -> VarietyPair {
    let s = ComplexMatrix::from_real(&[&[0.0, 1.0], &[0.0, 0.0]]).expect("2x2");
    let t = s.scale(Complex64::new(0.0, 1.0));
    VarietyPair::new(s, t).expect("valid pair")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn scalar(z: Complex64) -> ComplexMatrix {
        ComplexMatrix::from_diag(&[z])
    }

    #[test]
    fn extension_restricts_to_branches() {
        let hp = |t: Complex64| scalar(c(0.3, 0.0) + t * t * c(0.5, 0.1));
        let hm = |t: Complex64| scalar(c(0.3, 0.0) - t * c(0.2, -0.4));
        for t in [c(0.3, 0.2), c(-0.5, 0.1), c(0.0, 0.7)] {
            let fp = variety_extend(hp, hm, t, t).unwrap();
            let fm = variety_extend(hp, hm, t, -t).unwrap();
            assert!(fp.distance(&hp(t)) < 1e-14);
            assert!(fm.distance(&hm(t)) < 1e-14);
        }
    }

    #[test]
    fn extension_of_odd_pair() {
        let f = variety_extend(scalar, |t| scalar(-t), c(0.2, 0.1), c(0.2, 0.1)).unwrap();
        assert!((f[(0, 0)] - c(0.2, 0.1)).norm() < 1e-15);
        let f = variety_extend(scalar, |t| scalar(-t), c(0.2, 0.1), c(-0.2, -0.1)).unwrap();
        assert!((f[(0, 0)] + c(0.2, 0.1)).norm() < 1e-15);
    }

    #[test]
    fn extension_rejects_origin_mismatch() {
        let r = variety_extend(|_| scalar(c(1.0, 0.0)), |_| scalar(c(0.0, 0.0)), c(0.1, 0.0), c(0.1, 0.0));
        assert!(matches!(r, Err(Error::OriginMismatch { .. })));
    }

    #[test]
    fn spectral_radii() {
        let d = ComplexMatrix::from_diag(&[c(0.5, 0.0), c(0.0, -0.9)]);
        assert!((spectral_radius(&d) - 0.9).abs() < 1e-8);
        let s = nilpotent_example();
        assert_eq!(spectral_radius(s.s()), 0.0);
        let j = ComplexMatrix::from_real(&[&[0.7, 5.0], &[0.0, 0.7]]).unwrap();
        assert!((spectral_radius(&j) - 0.7).abs() < 1e-6);
    }

    #[test]
    fn nilpotent_pair_fails_at_quarter_turn() {
        let pair = nilpotent_example();
        match variety_verdict(&pair, DEFAULT_ANGLE_SAMPLES, 1e-9).unwrap() {
            VarietyVerdict::Fail { witness, norm } => {
                assert!((witness - c(0.5, 0.5)).norm() < 1e-12);
                assert!((norm - 2f64.sqrt()).abs() < 1e-12);
            }
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn unitary_branches_pass() {
        let s = ComplexMatrix::from_diag(&[c(0.6, 0.8), c(-1.0, 0.0)]);
        let t = ComplexMatrix::from_diag(&[c(0.6, 0.8), c(1.0, 0.0)]);
        let pair = VarietyPair::new(s, t).unwrap();
        assert!(matches!(variety_verdict(&pair, 360, 1e-9).unwrap(), VarietyVerdict::Pass { .. }));
        let s = ComplexMatrix::from_real(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        let pair = VarietyPair::new(s.clone(), s.scale_real(-1.0)).unwrap();
        let p = variety_check(&pair, DEFAULT_ANGLE_SAMPLES).unwrap();
        assert!((p.max_norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_commuting() {
        let s = ComplexMatrix::from_real(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        let t = ComplexMatrix::from_real(&[&[0.0, 0.0], &[1.0, 0.0]]).unwrap();
        assert!(matches!(VarietyPair::new(s, t), Err(Error::VarietyHypothesis(_))));
    }
}
