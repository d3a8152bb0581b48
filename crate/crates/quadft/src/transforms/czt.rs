//! Chirp-z evaluation of bilinear-phase sums on uniform grids.
//!
//! For uniform targets `x_k = x₀ + kΔ` and sources `y_j = y₀ + jδ`, the sum
//! `s_k = Σ_j u_j e^{iα x_k y_j}` factors through Bluestein's identity
//! `kj = (k² + j² − (k−j)²)/2`, turning the evaluation into one linear
//! convolution against the chirp `e^{−iφ m²/2}` with `φ = αΔδ`. That makes
//! a matvec by the discretized kernel `e^{iα x y}` an O(N log N) operation,
//! exact up to rounding, which is what the operator-norm sweeps need at
//! large λ where a dense matrix would not fit.

use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::sampling::GridSpec;

/// Precomputed Bluestein plan for one (α, target grid, source grid) triple.
pub struct CztPlan {
    n_src: usize,
    n_tgt: usize,
    fft_len: usize,
    fft: Arc<dyn Fft<f64>>,
    ifft: Arc<dyn Fft<f64>>,
    /// FFT of the arranged chirp kernel e^{−iφ m²/2}.
    chirp_hat: Vec<Complex64>,
    /// Per-source premultipliers e^{i(α x₀ δ j + φ j²/2)}.
    pre_src: Vec<Complex64>,
    /// Per-target postmultipliers e^{i(α x₀ y₀ + α y₀ Δ k + φ k²/2)}.
    post_tgt: Vec<Complex64>,
}

impl CztPlan {
    pub fn new(alpha: f64, targets: &GridSpec, sources: &GridSpec) -> Self {
        let n_src = sources.count();
        let n_tgt = targets.count();
        let dx = targets.spacing();
        let dy = sources.spacing();
        let x0 = targets.lo();
        let y0 = sources.lo();
        let phi = alpha * dx * dy;

        let fft_len = (n_src + n_tgt - 1).next_power_of_two();
        let mut planner = FftPlanner::new();
        let fft = planner.plan_fft_forward(fft_len);
        let ifft = planner.plan_fft_inverse(fft_len);

        // chirp at lags m = -(n_src-1) ..= (n_tgt-1), circularly arranged
        let mut chirp = vec![Complex64::new(0.0, 0.0); fft_len];
        for m in -(n_src as i64 - 1)..=(n_tgt as i64 - 1) {
            let mf = m as f64;
            let idx = m.rem_euclid(fft_len as i64) as usize;
            chirp[idx] = Complex64::from_polar(1.0, -0.5 * phi * mf * mf);
        }
        fft.process(&mut chirp);

        let pre_src: Vec<Complex64> = (0..n_src)
            .map(|j| {
                let jf = j as f64;
                Complex64::from_polar(1.0, alpha * x0 * dy * jf + 0.5 * phi * jf * jf)
            })
            .collect();
        let post_tgt: Vec<Complex64> = (0..n_tgt)
            .map(|k| {
                let kf = k as f64;
                Complex64::from_polar(1.0, alpha * (x0 * y0 + y0 * dx * kf) + 0.5 * phi * kf * kf)
            })
            .collect();

        Self { n_src, n_tgt, fft_len, fft, ifft, chirp_hat: chirp, pre_src, post_tgt }
    }

    /// Evaluates `s_k = Σ_j u_j e^{iα x_k y_j}` for all targets.
    pub fn eval(&self, u: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(u.len(), self.n_src);
        let mut buf = vec![Complex64::new(0.0, 0.0); self.fft_len];
        for (slot, (v, p)) in buf.iter_mut().zip(u.iter().zip(&self.pre_src)) {
            *slot = v * p;
        }
        self.fft.process(&mut buf);
        for (b, c) in buf.iter_mut().zip(&self.chirp_hat) {
            *b *= c;
        }
        self.ifft.process(&mut buf);
        let scale = 1.0 / self.fft_len as f64;
        (0..self.n_tgt)
            .map(|k| self.post_tgt[k] * buf[k] * scale)
            .collect()
    }
}

/// Implicit operator `A_{kj} = diag_x[k] · e^{iα x_k y_j} · diag_y[j]` with
/// chirp-FFT matvecs; used in place of a dense [`super::KernelMatrix`] when
/// the kernel has a pure bilinear coupling and the grids are large.
pub struct BilinearOperator {
    forward: CztPlan,
    backward: CztPlan,
    diag_x: Vec<Complex64>,
    diag_y: Vec<Complex64>,
}

impl BilinearOperator {
    pub fn new(
        alpha: f64,
        targets: &GridSpec,
        sources: &GridSpec,
        diag_x: Vec<Complex64>,
        diag_y: Vec<Complex64>,
    ) -> Self {
        assert_eq!(diag_x.len(), targets.count());
        assert_eq!(diag_y.len(), sources.count());
        Self {
            forward: CztPlan::new(alpha, targets, sources),
            backward: CztPlan::new(-alpha, sources, targets),
            diag_x,
            diag_y,
        }
    }

    pub fn rows(&self) -> usize {
        self.diag_x.len()
    }
    pub fn cols(&self) -> usize {
        self.diag_y.len()
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let u: Vec<Complex64> = v.iter().zip(&self.diag_y).map(|(a, d)| a * d).collect();
        let mut s = self.forward.eval(&u);
        for (x, d) in s.iter_mut().zip(&self.diag_x) {
            *x *= d;
        }
        s
    }

    pub fn apply_adjoint(&self, u: &[Complex64]) -> Vec<Complex64> {
        let t: Vec<Complex64> = u.iter().zip(&self.diag_x).map(|(a, d)| a * d.conj()).collect();
        let mut s = self.backward.eval(&t);
        for (x, d) in s.iter_mut().zip(&self.diag_y) {
            *x *= d.conj();
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn direct(alpha: f64, targets: &GridSpec, sources: &GridSpec, u: &[Complex64]) -> Vec<Complex64> {
        targets
            .nodes()
            .map(|x| {
                sources
                    .nodes()
                    .zip(u)
                    .map(|(y, v)| v * Complex64::from_polar(1.0, alpha * x * y))
                    .sum()
            })
            .collect()
    }

    #[test]
    fn czt_matches_direct_sum() {
        for (alpha, nt, ns) in [(1.7, 33, 47), (-12.5, 64, 64), (230.0, 17, 129)] {
            let targets = GridSpec::new(-1.25, 0.75, nt).unwrap();
            let sources = GridSpec::new(-0.5, 1.5, ns).unwrap();
            let u: Vec<Complex64> = (0..ns)
                .map(|j| Complex64::new((j as f64 * 0.37).sin(), (j as f64 * 0.11).cos()))
                .collect();
            let plan = CztPlan::new(alpha, &targets, &sources);
            let fast = plan.eval(&u);
            let slow = direct(alpha, &targets, &sources, &u);
            let scale = slow.iter().map(|v| v.norm()).fold(0.0, f64::max);
            for (a, b) in fast.iter().zip(&slow) {
                assert!((a - b).norm() <= 1e-10 * scale, "alpha={alpha}");
            }
        }
    }

    #[test]
    fn adjoint_is_consistent() {
        let targets = GridSpec::new(-1.0, 1.0, 21).unwrap();
        let sources = GridSpec::new(-0.8, 0.9, 34).unwrap();
        let dx: Vec<Complex64> = (0..21)
            .map(|k| Complex64::from_polar(1.0 + 0.01 * k as f64, 0.3 * k as f64))
            .collect();
        let dy: Vec<Complex64> = (0..34)
            .map(|j| Complex64::from_polar(0.5 + 0.02 * j as f64, -0.2 * j as f64))
            .collect();
        let op = BilinearOperator::new(5.25, &targets, &sources, dx, dy);
        let v: Vec<Complex64> = (0..34)
            .map(|j| Complex64::new((j as f64).cos(), (2.0 * j as f64).sin()))
            .collect();
        let u: Vec<Complex64> = (0..21)
            .map(|k| Complex64::new((k as f64 * 0.7).sin(), -(k as f64 * 0.3).cos()))
            .collect();
        // <A v, u> == <v, A* u>
        let av = op.apply(&v);
        let ahu = op.apply_adjoint(&u);
        let lhs: Complex64 = av.iter().zip(&u).map(|(a, b)| a * b.conj()).sum();
        let rhs: Complex64 = v.iter().zip(&ahu).map(|(a, b)| a * b.conj()).sum();
        assert!((lhs - rhs).norm() <= 1e-10 * lhs.norm().max(1.0));
    }
}
