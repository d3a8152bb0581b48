//! Discretized kernel matrices for operator-norm studies.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::sampling::GridSpec;

use super::{oscillation_resolved, Family, TransformSpec};

/// Hard cap on matrix size (entries), matching the builder's refusal guard.
pub const MAX_KERNEL_ENTRIES: usize = 100_000_000;

/// Dense discretization `K(x_i, y_j)·w_j` of a transform kernel, row-major
/// over targets. Source-side trapezoid weights are folded in, so applying
/// the matrix to samples reproduces the quadrature path.
#[derive(Debug, Clone)]
pub struct KernelMatrix {
    targets: GridSpec,
    sources: GridSpec,
    entries: Vec<Complex64>,
    under_resolved: bool,
}

impl KernelMatrix {
    pub fn targets(&self) -> &GridSpec {
        &self.targets
    }
    pub fn sources(&self) -> &GridSpec {
        &self.sources
    }
    pub fn rows(&self) -> usize {
        self.targets.count()
    }
    pub fn cols(&self) -> usize {
        self.sources.count()
    }
    /// Entry `(i, j) = K(x_i, y_j)·w_j`.
    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.cols() + j]
    }
    pub fn under_resolved(&self) -> bool {
        self.under_resolved
    }

    /// Plain matvec; identical arithmetic to the quadrature apply path.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.cols());
        let n = self.cols();
        self.entries
            .par_chunks(n)
            .map(|row| row.iter().zip(v).map(|(k, x)| k * x).sum())
            .collect()
    }

    /// Matvec of the symmetrized matrix `A = W_x^{1/2} K W_y^{1/2}` whose
    /// largest singular value estimates the L²→L² operator norm.
    pub fn apply_symmetrized(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.cols());
        let n = self.cols();
        let scaled: Vec<Complex64> = v
            .iter()
            .enumerate()
            .map(|(j, x)| x / self.sources.weight(j).sqrt())
            .collect();
        self.entries
            .par_chunks(n)
            .enumerate()
            .map(|(i, row)| {
                let s: Complex64 = row.iter().zip(&scaled).map(|(k, x)| k * x).sum();
                s * self.targets.weight(i).sqrt()
            })
            .collect()
    }

    /// Adjoint of [`Self::apply_symmetrized`].
    pub fn apply_symmetrized_adjoint(&self, u: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(u.len(), self.rows());
        let n = self.cols();
        let m = self.rows();
        let scaled: Vec<Complex64> = u
            .iter()
            .enumerate()
            .map(|(i, x)| x * self.targets.weight(i).sqrt())
            .collect();
        (0..n)
            .into_par_iter()
            .map(|j| {
                let mut acc = Complex64::new(0.0, 0.0);
                for i in 0..m {
                    acc += self.entries[i * n + j].conj() * scaled[i];
                }
                acc / self.sources.weight(j).sqrt()
            })
            .collect()
    }

    /// Test-support constructor for synthetic matrices (entries given
    /// directly, weights per the grids).
    pub fn from_raw(targets: GridSpec, sources: GridSpec, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != targets.count() * sources.count() {
            return Err(Error::invalid("entry count does not match grid dimensions"));
        }
        Ok(Self { targets, sources, entries, under_resolved: false })
    }
}

/// Builds the dense kernel matrix for `spec` with quadrature weights folded
/// into the columns. Refuses more than [`MAX_KERNEL_ENTRIES`] entries.
pub fn build_kernel_matrix(
    spec: &TransformSpec,
    sources: &GridSpec,
    targets: &GridSpec,
) -> Result<KernelMatrix> {
    let rows = targets.count();
    let cols = sources.count();
    if rows.saturating_mul(cols) > MAX_KERNEL_ENTRIES {
        return Err(Error::TooLarge(format!(
            "kernel matrix would have {} entries (cap {})",
            rows as u128 * cols as u128,
            MAX_KERNEL_ENTRIES
        )));
    }
    let ys: Vec<f64> = sources.nodes().collect();
    let ws: Vec<f64> = sources.weights();
    let xs: Vec<f64> = targets.nodes().collect();
    let mut entries = vec![Complex64::new(0.0, 0.0); rows * cols];
    entries
        .par_chunks_mut(cols)
        .zip(xs.par_iter())
        .for_each(|(row, &x)| {
            for ((slot, y), w) in row.iter_mut().zip(&ys).zip(&ws) {
                *slot = spec.kernel(x, *y) * *w;
            }
        });
    let under_resolved = matches!(spec.family(), Family::Oscillatory | Family::TLambda)
        && !oscillation_resolved(spec, sources, targets);
    Ok(KernelMatrix { targets: *targets, sources: *sources, entries, under_resolved })
}
