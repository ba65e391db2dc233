#![allow(dead_code)]

use neil_core::{Complex64, ComplexMatrix, HermitianMatrix};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gauss<R: Rng>(rng: &mut R) -> Complex64 {
    // Box-Muller; one draw per component is enough for test matrices.
    let mut normal = || {
        let u: f64 = rng.gen_range(1e-12..1.0);
        let v: f64 = rng.gen();
        (-2.0 * u.ln()).sqrt() * (std::f64::consts::TAU * v).cos()
    };
    Complex64::new(normal(), normal())
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| gauss(rng))
}

pub fn random_hermitian<R: Rng>(rng: &mut R, n: usize) -> HermitianMatrix {
    let a = random_matrix(rng, n, n);
    HermitianMatrix::symmetrize(&(&a + &a.adjoint()).scale_real(0.5)).unwrap()
}

/// Random PSD matrix of the given rank.
pub fn random_psd<R: Rng>(rng: &mut R, n: usize, rank: usize) -> HermitianMatrix {
    let e = random_matrix(rng, n, rank);
    HermitianMatrix::symmetrize(&e.matmul(&e.adjoint())).unwrap()
}

/// Haar-ish unitary from Gram-Schmidt on a Gaussian matrix.
pub fn random_unitary<R: Rng>(rng: &mut R, n: usize) -> ComplexMatrix {
    let a = random_matrix(rng, n, n);
    let mut q = ComplexMatrix::zeros(n, n);
    for j in 0..n {
        let mut v = a.column(j);
        for k in 0..j {
            let qk = q.column(k);
            let dot: Complex64 = qk.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
            for (vi, qi) in v.iter_mut().zip(&qk) {
                *vi -= dot * qi;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let v: Vec<Complex64> = v.iter().map(|z| z / norm).collect();
        q.set_column(j, &v);
    }
    q
}

pub fn random_disk_point<R: Rng>(rng: &mut R, rmax: f64) -> Complex64 {
    let r = rmax * rng.gen::<f64>().sqrt();
    Complex64::from_polar(r, std::f64::consts::TAU * rng.gen::<f64>())
}
