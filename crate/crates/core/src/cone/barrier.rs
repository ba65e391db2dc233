use num_complex::Complex64;

use crate::linalg::HermitianMatrix;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Path-following parameters for the log-barrier method.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BarrierOptions {
    /// Initial barrier weight.
    pub t0: f64,
    /// Factor applied to `t` between centering stages.
    pub growth: f64,
    /// Stop once the duality gap bound `m / t` falls below `gap_rel * n`.
    pub gap_rel: f64,
    /// Centering stops when half the squared Newton decrement is below this.
    pub newton_tol: f64,
    pub max_newton: usize,
}

impl Default for BarrierOptions {
    fn default() -> Self {
        BarrierOptions { t0: 1.0, growth: 4.0, gap_rel: 1e-5, newton_tol: 1e-10, max_newton: 100 }
    }
}

/// A centered iterate: `W` minimizes `t tr(WT) - sum log det(W - D_g* W D_g)` on `tr W = n`,
/// and `z[g] = (W - D_g* W D_g)^{-1} / t` are the matching measure blocks.
pub(crate) struct Centered {
    #[allow(dead_code)]
    pub t: f64,
    pub w: HermitianMatrix,
    pub z: Vec<HermitianMatrix>,
}

pub(crate) struct PathEnd {
    pub last: Option<Centered>,
    #[allow(dead_code)]
    pub stalled: bool,
}

/// Barrier problem over the dual cone `{W : W - D_g* W D_g >= 0 for all g}` with `tr W = n`.
///
/// `W` is parametrized by `n^2` reals: the diagonal, then `(Re, Im)` of each
/// strictly upper entry in row-major order.
pub(crate) struct Barrier {
    n: usize,
    /// `1 - conj(d_i) d_j`, row-major, one per generator.
    k: Vec<Vec<Complex64>>,
    c: Vec<f64>,
    pairs: Vec<(usize, usize)>,
}

struct Eval {
    value: f64,
    grad: Vec<f64>,
    hess: Vec<f64>,
    ainv: Vec<Vec<Complex64>>,
}

impl Barrier {
    pub fn new(diags: &[Vec<Complex64>], target: &HermitianMatrix) -> Self {
        let n = target.dim();
        let k = diags
            .iter()
            .map(|d| {
                let mut p = vec![ZERO; n * n];
                for i in 0..n {
                    for j in 0..n {
                        p[i * n + j] = 1.0 - d[i].conj() * d[j];
                    }
                }
                p
            })
            .collect();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| ((a + 1)..n).map(move |b| (a, b))).collect();
        let mut c = vec![0.0; n * n];
        for a in 0..n {
            c[a] = target.get(a, a).re;
        }
        for (p, &(a, b)) in pairs.iter().enumerate() {
            let tab = target.get(a, b);
            c[n + 2 * p] = 2.0 * tab.re;
            c[n + 2 * p + 1] = 2.0 * tab.im;
        }
        Barrier { n, k, c, pairs }
    }

    fn m(&self) -> usize {
        self.n * self.n
    }

    fn to_matrix(&self, x: &[f64]) -> Vec<Complex64> {
        let n = self.n;
        let mut w = vec![ZERO; n * n];
        for a in 0..n {
            w[a * n + a] = Complex64::new(x[a], 0.0);
        }
        for (p, &(a, b)) in self.pairs.iter().enumerate() {
            let z = Complex64::new(x[n + 2 * p], x[n + 2 * p + 1]);
            w[a * n + b] = z;
            w[b * n + a] = z.conj();
        }
        w
    }

    fn linear(&self, x: &[f64]) -> f64 {
        self.c.iter().zip(x).map(|(c, x)| c * x).sum()
    }

    /// Cholesky factors of every `W o K_g`, or `None` if one is not positive definite.
    fn factor_all(&self, w: &[Complex64]) -> Option<Vec<Vec<Complex64>>> {
        let n = self.n;
        self.k
            .iter()
            .map(|k| {
                let mut a: Vec<Complex64> = w.iter().zip(k).map(|(w, k)| w * k).collect();
                chol_in_place(&mut a, n).then_some(a)
            })
            .collect()
    }

    fn barrier_value(&self, factors: &[Vec<Complex64>]) -> f64 {
        let n = self.n;
        factors.iter().map(|l| -2.0 * (0..n).map(|i| l[i * n + i].re.ln()).sum::<f64>()).sum()
    }

    fn value(&self, x: &[f64], t: f64) -> Option<f64> {
        let f = self.factor_all(&self.to_matrix(x))?;
        Some(t * self.linear(x) + self.barrier_value(&f))
    }

    fn evaluate(&self, x: &[f64], t: f64) -> Option<Eval> {
        let n = self.n;
        let m = self.m();
        let factors = self.factor_all(&self.to_matrix(x))?;
        let value = t * self.linear(x) + self.barrier_value(&factors);
        let mut gc = vec![ZERO; n * n];
        // Complex Hessian of -log det over entries (a, b), (c, d); symmetric in the pair index.
        let mut hc = vec![ZERO; m * m];
        let mut ainv = Vec::with_capacity(factors.len());
        for (l, k) in factors.iter().zip(&self.k) {
            let ai = chol_inverse(l, n);
            for a in 0..n {
                for b in 0..n {
                    gc[a * n + b] -= ai[b * n + a] * k[a * n + b];
                }
            }
            for a in 0..n {
                for b in 0..n {
                    let p = a * n + b;
                    let kab = k[p];
                    for c in 0..n {
                        let s = kab * ai[b * n + c];
                        let row = &mut hc[p * m + c * n..p * m + c * n + n];
                        for d in 0..n {
                            row[d] += s * k[c * n + d] * ai[d * n + a];
                        }
                    }
                }
            }
            ainv.push(ai);
        }

        let mut grad = vec![0.0; m];
        for a in 0..n {
            grad[a] = t * self.c[a] + gc[a * n + a].re;
        }
        for (p, &(a, b)) in self.pairs.iter().enumerate() {
            let g = gc[a * n + b];
            grad[n + 2 * p] = t * self.c[n + 2 * p] + 2.0 * g.re;
            grad[n + 2 * p + 1] = t * self.c[n + 2 * p + 1] - 2.0 * g.im;
        }

        // Real coordinate k touches complex entries with the given coefficients.
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        let mut taps: Vec<Vec<(usize, Complex64)>> = (0..n).map(|a| vec![(a * n + a, one)]).collect();
        for &(a, b) in &self.pairs {
            taps.push(vec![(a * n + b, one), (b * n + a, one)]);
            taps.push(vec![(a * n + b, i), (b * n + a, -i)]);
        }
        let mut hess = vec![0.0; m * m];
        for r in 0..m {
            for s in r..m {
                let mut acc = ZERO;
                for &(p, cp) in &taps[r] {
                    for &(q, cq) in &taps[s] {
                        acc += cp * cq * hc[p * m + q];
                    }
                }
                hess[r * m + s] = acc.re;
                hess[s * m + r] = acc.re;
            }
        }
        Some(Eval { value, grad, hess, ainv })
    }

    /// Newton step for the trace-constrained problem; returns `(dx, decrement^2)`.
    fn newton_step(&self, e: &Eval) -> Option<(Vec<f64>, f64)> {
        let n = self.n;
        let m = self.m();
        let mut a = vec![0.0; m];
        a[..n].iter_mut().for_each(|v| *v = 1.0);
        let mut h = e.hess.clone();
        let scale = (0..m).map(|k| h[k * m + k].abs()).fold(0.0, f64::max).max(1e-300);
        let mut ridge = 0.0;
        let l = loop {
            let mut trial = h.clone();
            for k in 0..m {
                trial[k * m + k] += ridge;
            }
            if real_chol_in_place(&mut trial, m) {
                break trial;
            }
            ridge = if ridge == 0.0 { 1e-14 * scale } else { ridge * 100.0 };
            if ridge > 1e-4 * scale {
                return None;
            }
        };
        h.clear();
        let hg = real_chol_solve(&l, m, &e.grad);
        let ha = real_chol_solve(&l, m, &a);
        let aha: f64 = a.iter().zip(&ha).map(|(x, y)| x * y).sum();
        let ahg: f64 = a.iter().zip(&hg).map(|(x, y)| x * y).sum();
        let w = -ahg / aha;
        let dx: Vec<f64> = hg.iter().zip(&ha).map(|(g, a)| -(g + w * a)).collect();
        let dec: f64 = -e.grad.iter().zip(&dx).map(|(g, d)| g * d).sum::<f64>();
        Some((dx, dec.max(0.0)))
    }

    /// Centers `x` at weight `t`; returns the inverses of `W o K_g` at the center.
    fn center(&self, x: &mut Vec<f64>, t: f64, opts: &BarrierOptions) -> Option<Vec<Vec<Complex64>>> {
        for _ in 0..opts.max_newton {
            let e = self.evaluate(x, t)?;
            let (dx, dec) = self.newton_step(&e)?;
            if dec / 2.0 <= opts.newton_tol {
                return Some(self.polish(x, t, e, dec));
            }
            let slope: f64 = e.grad.iter().zip(&dx).map(|(g, d)| g * d).sum();
            let mut s = 1.0;
            loop {
                let trial: Vec<f64> = x.iter().zip(&dx).map(|(x, d)| x + s * d).collect();
                if let Some(v) = self.value(&trial, t) {
                    // Inside the quadratic-convergence region a feasible full step is taken as is.
                    if (s == 1.0 && dec < 0.1) || v <= e.value + 0.25 * s * slope {
                        *x = trial;
                        break;
                    }
                }
                s *= 0.5;
                if s < 1e-12 {
                    return (dec / 2.0 <= 1e-6).then_some(e.ainv);
                }
            }
        }
        let e = self.evaluate(x, t)?;
        let (_, dec) = self.newton_step(&e)?;
        (dec / 2.0 <= 1e-6).then_some(e.ainv)
    }

    /// A few full Newton steps past the centering tolerance, kept while the
    /// decrement keeps dropping; stationarity error scales with the Hessian.
    fn polish(&self, x: &mut Vec<f64>, t: f64, mut e: Eval, mut dec: f64) -> Vec<Vec<Complex64>> {
        for _ in 0..4 {
            let Some((dx, _)) = self.newton_step(&e) else { break };
            let trial: Vec<f64> = x.iter().zip(&dx).map(|(x, d)| x + d).collect();
            let Some(next) = self.evaluate(&trial, t) else { break };
            let Some((_, next_dec)) = self.newton_step(&next) else { break };
            if next_dec >= dec {
                break;
            }
            *x = trial;
            let done = next_dec < 1e-3 * dec.max(1e-300) && next_dec < 1e-28;
            e = next;
            dec = next_dec;
            if done {
                break;
            }
        }
        e.ainv
    }

    /// Follows the central path from `W = I`. `visit` sees every centered
    /// iterate and may return `true` to stop early.
    pub fn path(&self, opts: &BarrierOptions, mut visit: impl FnMut(&Centered) -> bool) -> PathEnd {
        let n = self.n;
        let mut x = vec![0.0; self.m()];
        x[..n].iter_mut().for_each(|v| *v = 1.0);
        let barrier_degree = (self.k.len() * n) as f64;
        let mut t = opts.t0;
        let mut last = None;
        loop {
            let Some(ainv) = self.center(&mut x, t, opts) else {
                return PathEnd { last, stalled: true };
            };
            let w = self.to_matrix(&x);
            let centered = Centered {
                t,
                w: HermitianMatrix::from_fn(n, |i, j| w[i * n + j]),
                z: ainv.iter().map(|a| HermitianMatrix::from_fn(n, |i, j| a[i * n + j] / t)).collect(),
            };
            let done = barrier_degree / t <= opts.gap_rel * n as f64;
            let halt = visit(&centered);
            last = Some(centered);
            if halt || done {
                return PathEnd { last, stalled: false };
            }
            t *= opts.growth;
        }
    }
}

/// In-place lower Cholesky of a Hermitian row-major matrix; false if not positive definite.
fn chol_in_place(a: &mut [Complex64], n: usize) -> bool {
    for j in 0..n {
        let mut d = a[j * n + j].re;
        for k in 0..j {
            d -= a[j * n + k].norm_sqr();
        }
        if d <= 0.0 || !d.is_finite() {
            return false;
        }
        let djj = d.sqrt();
        a[j * n + j] = Complex64::new(djj, 0.0);
        for i in (j + 1)..n {
            let mut s = a[i * n + j];
            for k in 0..j {
                s -= a[i * n + k] * a[j * n + k].conj();
            }
            a[i * n + j] = s / djj;
        }
    }
    true
}

/// `(L L*)^{-1}` from the lower factor `L`.
fn chol_inverse(l: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut linv = vec![ZERO; n * n];
    for j in 0..n {
        linv[j * n + j] = Complex64::new(1.0 / l[j * n + j].re, 0.0);
        for i in (j + 1)..n {
            let mut s = ZERO;
            for k in j..i {
                s -= l[i * n + k] * linv[k * n + j];
            }
            linv[i * n + j] = s / l[i * n + i].re;
        }
    }
    let mut inv = vec![ZERO; n * n];
    for i in 0..n {
        for j in 0..=i {
            let mut s = ZERO;
            for k in i..n {
                s += linv[k * n + i].conj() * linv[k * n + j];
            }
            inv[i * n + j] = s;
            inv[j * n + i] = s.conj();
        }
    }
    inv
}

fn real_chol_in_place(a: &mut [f64], n: usize) -> bool {
    for j in 0..n {
        let mut d = a[j * n + j];
        for k in 0..j {
            d -= a[j * n + k] * a[j * n + k];
        }
        if d <= 0.0 || !d.is_finite() {
            return false;
        }
        let djj = d.sqrt();
        a[j * n + j] = djj;
        for i in (j + 1)..n {
            let mut s = a[i * n + j];
            for k in 0..j {
                s -= a[i * n + k] * a[j * n + k];
            }
            a[i * n + j] = s / djj;
        }
    }
    true
}

fn real_chol_solve(l: &[f64], n: usize, b: &[f64]) -> Vec<f64> {
    let mut y = b.to_vec();
    for i in 0..n {
        for k in 0..i {
            y[i] -= l[i * n + k] * y[k];
        }
        y[i] /= l[i * n + i];
    }
    for i in (0..n).rev() {
        for k in (i + 1)..n {
            y[i] -= l[k * n + i] * y[k];
        }
        y[i] /= l[i * n + i];
    }
    y
}

#[cfg(test)]
mod tests {
    use super::*;

    fn finite_diff_check(barrier: &Barrier, x: &[f64], t: f64) {
        let e = barrier.evaluate(x, t).unwrap();
        let m = x.len();
        let h = 1e-6;
        for k in 0..m {
            let mut xp = x.to_vec();
            let mut xm = x.to_vec();
            xp[k] += h;
            xm[k] -= h;
            let fd = (barrier.value(&xp, t).unwrap() - barrier.value(&xm, t).unwrap()) / (2.0 * h);
            assert!((fd - e.grad[k]).abs() < 1e-5 * (1.0 + fd.abs()), "grad {k}: {fd} vs {}", e.grad[k]);
            let gp = barrier.evaluate(&xp, t).unwrap().grad;
            let gm = barrier.evaluate(&xm, t).unwrap().grad;
            for l in 0..m {
                let fd = (gp[l] - gm[l]) / (2.0 * h);
                assert!((fd - e.hess[l * m + k]).abs() < 1e-4 * (1.0 + fd.abs()), "hess {l},{k}");
            }
        }
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let c = Complex64::new;
        let diags = vec![vec![c(0.1, 0.2), c(-0.3, 0.0), c(0.0, 0.4)], vec![c(0.5, -0.1), c(0.2, 0.2), c(0.0, 0.0)]];
        let target = HermitianMatrix::from_fn(3, |i, j| if i == j { c(0.5 - i as f64, 0.0) } else { c(0.1 * i as f64, -0.2 * j as f64) });
        let b = Barrier::new(&diags, &target);
        let x = vec![1.2, 0.9, 0.9, 0.1, -0.05, 0.02, 0.08, -0.1, 0.03];
        finite_diff_check(&b, &x, 2.0);
    }

    #[test]
    fn centered_duals_satisfy_stationarity() {
        let c = Complex64::new;
        let diags = vec![vec![c(0.1, 0.2), c(-0.3, 0.0)], vec![c(0.5, -0.1), c(0.2, 0.2)], vec![c(0.0, 0.0), c(0.4, 0.0)]];
        let target = HermitianMatrix::from_fn(2, |i, j| if i == j { c(1.0, 0.0) } else { c(0.3, 0.4) });
        let b = Barrier::new(&diags, &target);
        let end = b.path(&BarrierOptions::default(), |_| false);
        assert!(!end.stalled);
        let last = end.last.unwrap();
        assert!((last.w.trace() - 2.0).abs() < 1e-9);
        // sum_g Z_g o K'_g = T + nu I.
        let mut s = HermitianMatrix::zeros(2);
        for (z, d) in last.z.iter().zip(&diags) {
            s = &s + &z.schur(&super::super::generator_pattern(d));
        }
        let nu = (s.trace() - target.trace()) / 2.0;
        let shifted = &target + &HermitianMatrix::identity(2).scale(nu);
        let gap = s.as_matrix().distance(shifted.as_matrix());
        assert!(gap < 1e-4 * target.frobenius_norm(), "gap {gap} t {} nu {nu}", last.t);
    }
}
