//! Uniform grids, sampled complex functions, and compactly supported windows.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::phases::QuadraticPhase;

/// Uniform grid of `count` nodes on `[lo, hi]`, node `j` at `lo + j·h`
/// with `h = (hi − lo)/(count − 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GridSpecWire")]
pub struct GridSpec {
    lo: f64,
    hi: f64,
    count: usize,
}

#[derive(Deserialize)]
struct GridSpecWire {
    lo: f64,
    hi: f64,
    count: usize,
}

impl TryFrom<GridSpecWire> for GridSpec {
    type Error = Error;
    fn try_from(w: GridSpecWire) -> Result<Self> {
        GridSpec::new(w.lo, w.hi, w.count)
    }
}

impl GridSpec {
    pub fn new(lo: f64, hi: f64, count: usize) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() || lo >= hi {
            return Err(Error::invalid("grid requires finite lo < hi"));
        }
        if count < 2 {
            return Err(Error::invalid("grid requires count >= 2"));
        }
        Ok(Self { lo, hi, count })
    }

    /// The default verification grid `[-16, 16]` with 4096 nodes; Gaussian
    /// corpus members decay below 1e-50 at the boundary.
    pub fn default_verification() -> Self {
        Self { lo: -16.0, hi: 16.0, count: 4096 }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }
    pub fn hi(&self) -> f64 {
        self.hi
    }
    pub fn count(&self) -> usize {
        self.count
    }

    pub fn spacing(&self) -> f64 {
        (self.hi - self.lo) / (self.count - 1) as f64
    }

    /// Node position, computed as a single multiply-add from `lo`.
    pub fn node(&self, j: usize) -> f64 {
        (j as f64).mul_add(self.spacing(), self.lo)
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(move |j| self.node(j))
    }

    /// Trapezoid quadrature weight of node `j` (`h/2` at the ends, `h` inside).
    pub fn weight(&self, j: usize) -> f64 {
        let h = self.spacing();
        if j == 0 || j + 1 == self.count {
            0.5 * h
        } else {
            h
        }
    }

    pub fn weights(&self) -> Vec<f64> {
        (0..self.count).map(|j| self.weight(j)).collect()
    }

    /// Largest absolute coordinate covered by the grid.
    pub fn abs_max(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    /// True if `x` lies strictly inside `(lo, hi)`.
    pub fn contains_interior(&self, x: f64) -> bool {
        self.lo < x && x < self.hi
    }

    /// The canonical dual grid: FFT frequencies `2π(k − ⌊count/2⌋)/(count·h)`
    /// in ascending order, same node count.
    pub fn dual(&self) -> GridSpec {
        let n = self.count;
        let step = 2.0 * std::f64::consts::PI / (n as f64 * self.spacing());
        let half = (n / 2) as f64;
        GridSpec {
            lo: -half * step,
            hi: (n as f64 - 1.0 - half) * step,
            count: n,
        }
    }

    /// Whether two grids coincide node-by-node up to 1 part in 1e12.
    pub fn approx_eq(&self, other: &GridSpec) -> bool {
        let scale = self.abs_max().max(other.abs_max()).max(1.0);
        self.count == other.count
            && (self.lo - other.lo).abs() <= 1e-12 * scale
            && (self.hi - other.hi).abs() <= 1e-12 * scale
    }
}

/// Complex samples on a uniform grid; the discrete stand-in for the
/// functions the transforms act on.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction1D {
    grid: GridSpec,
    values: Vec<Complex64>,
}

impl SampledFunction1D {
    pub fn new(grid: GridSpec, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.count() {
            return Err(Error::invalid(format!(
                "value count {} does not match grid count {}",
                values.len(),
                grid.count()
            )));
        }
        if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::invalid("sampled values must be finite"));
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: GridSpec, f: impl Fn(f64) -> Complex64) -> Self {
        let values = grid.nodes().map(f).collect();
        Self { grid, values }
    }

    pub fn from_real_fn(grid: GridSpec, f: impl Fn(f64) -> f64) -> Self {
        Self::from_fn(grid, |x| Complex64::new(f(x), 0.0))
    }

    pub fn zeros(grid: GridSpec) -> Self {
        Self { grid, values: vec![Complex64::new(0.0, 0.0); grid.count()] }
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }
}

/// Gaussian `exp(−(x−center)²/(2σ²))` sampled on the grid.
///
/// The sharp-constant extremizer `exp(−π x²)` is the case
/// `sigma = 1/√(2π)`, `center = 0`.
pub fn make_gaussian(grid: GridSpec, sigma: f64, center: f64) -> Result<SampledFunction1D> {
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(Error::invalid("gaussian requires sigma > 0"));
    }
    Ok(SampledFunction1D::from_real_fn(grid, |x| {
        let u = (x - center) / sigma;
        (-0.5 * u * u).exp()
    }))
}

/// Indicator of `[a, b]` sampled on the grid; nodes landing exactly on a
/// jump take the value 1 (closed-interval convention).
pub fn make_step(grid: GridSpec, a: f64, b: f64) -> Result<SampledFunction1D> {
    if !(a < b) {
        return Err(Error::invalid("step requires a < b"));
    }
    if !(grid.lo() < a && b < grid.hi()) {
        return Err(Error::invalid("step endpoints must lie inside the grid"));
    }
    Ok(SampledFunction1D::from_real_fn(grid, |x| {
        if (a..=b).contains(&x) {
            1.0
        } else {
            0.0
        }
    }))
}

/// Gaussian multiplied by the unimodular factor `e^{iωx}`.
pub fn make_modulated_gaussian(
    grid: GridSpec,
    sigma: f64,
    center: f64,
    omega: f64,
) -> Result<SampledFunction1D> {
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(Error::invalid("gaussian requires sigma > 0"));
    }
    Ok(SampledFunction1D::from_fn(grid, |x| {
        let u = (x - center) / sigma;
        Complex64::from_polar((-0.5 * u * u).exp(), omega * x)
    }))
}

/// Pointwise multiplication by the chirp `e^{i·sign·λ(c y² + e y)}`;
/// the output has the same modulus as the input at every node.
pub fn chirp_premodulate(
    f: &SampledFunction1D,
    q: &QuadraticPhase,
    lambda: f64,
    sign: f64,
) -> SampledFunction1D {
    let s = sign.signum();
    let grid = *f.grid();
    let values = grid
        .nodes()
        .zip(f.values())
        .map(|(y, v)| {
            let phase = s * lambda * (q.c() * y * y + q.e() * y);
            v * Complex64::from_polar(1.0, phase)
        })
        .collect();
    SampledFunction1D { grid, values }
}

/// One-dimensional mollifier profile `amplitude·exp(1 − 1/(1−u²))` for
/// `u = (t − center)/radius`, `|u| < 1`; identically zero outside.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BumpProfileWire")]
pub struct BumpProfile {
    pub center: f64,
    pub radius: f64,
    pub amplitude: f64,
}

#[derive(Deserialize)]
struct BumpProfileWire {
    center: f64,
    radius: f64,
    amplitude: f64,
}

impl TryFrom<BumpProfileWire> for BumpProfile {
    type Error = Error;
    fn try_from(w: BumpProfileWire) -> Result<Self> {
        BumpProfile::new(w.center, w.radius, w.amplitude)
    }
}

impl BumpProfile {
    pub fn new(center: f64, radius: f64, amplitude: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() || !center.is_finite() || !amplitude.is_finite() {
            return Err(Error::invalid("bump requires finite params and radius > 0"));
        }
        Ok(Self { center, radius, amplitude })
    }

    pub fn eval(&self, t: f64) -> f64 {
        let u = (t - self.center) / self.radius;
        let u2 = u * u;
        if u2 < 1.0 {
            self.amplitude * (1.0 - 1.0 / (1.0 - u2)).exp()
        } else {
            0.0
        }
    }

    pub fn support(&self) -> (f64, f64) {
        (self.center - self.radius, self.center + self.radius)
    }
}

/// Compactly supported weight ψ (or cutoff χ) with its support box
/// `M = [x0,x1]×[y0,y1]`, sup-bound `C₁`, and box diameter `R`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", try_from = "WindowWire")]
pub enum Window {
    /// One-dimensional cutoff χ(y); evaluation ignores `x`, and the
    /// support box uses the y-extent on both axes.
    Bump1d { profile: BumpProfile },
    /// Separable product ψ(x,y) = ψ₁(x)·ψ₂(y) of two bumps.
    Separable2d { x: BumpProfile, y: BumpProfile },
    /// Constant `amplitude` on the closed box, zero outside.
    Box2d { x0: f64, x1: f64, y0: f64, y1: f64, amplitude: f64 },
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum WindowWire {
    Bump1d { profile: BumpProfile },
    Separable2d { x: BumpProfile, y: BumpProfile },
    Box2d { x0: f64, x1: f64, y0: f64, y1: f64, amplitude: f64 },
}

impl TryFrom<WindowWire> for Window {
    type Error = Error;
    fn try_from(w: WindowWire) -> Result<Self> {
        match w {
            WindowWire::Bump1d { profile } => Ok(Window::Bump1d { profile }),
            WindowWire::Separable2d { x, y } => Ok(Window::Separable2d { x, y }),
            WindowWire::Box2d { x0, x1, y0, y1, amplitude } => {
                Window::box2d(x0, x1, y0, y1, amplitude)
            }
        }
    }
}

impl Window {
    pub fn bump1d(center: f64, radius: f64, amplitude: f64) -> Result<Self> {
        Ok(Window::Bump1d { profile: BumpProfile::new(center, radius, amplitude)? })
    }

    pub fn separable(x: BumpProfile, y: BumpProfile) -> Self {
        Window::Separable2d { x, y }
    }

    pub fn box2d(x0: f64, x1: f64, y0: f64, y1: f64, amplitude: f64) -> Result<Self> {
        if !(x0 < x1 && y0 < y1) {
            return Err(Error::invalid("box window requires x0 < x1 and y0 < y1"));
        }
        if !amplitude.is_finite() {
            return Err(Error::invalid("box amplitude must be finite"));
        }
        Ok(Window::Box2d { x0, x1, y0, y1, amplitude })
    }

    /// Support box `M = [x0,x1]×[y0,y1]`.
    pub fn support_box(&self) -> (f64, f64, f64, f64) {
        match self {
            Window::Bump1d { profile } => {
                let (y0, y1) = profile.support();
                (y0, y1, y0, y1)
            }
            Window::Separable2d { x, y } => {
                let (x0, x1) = x.support();
                let (y0, y1) = y.support();
                (x0, x1, y0, y1)
            }
            Window::Box2d { x0, x1, y0, y1, .. } => (*x0, *x1, *y0, *y1),
        }
    }

    /// Sup-bound `C₁ = sup |ψ|`.
    pub fn sup_bound(&self) -> f64 {
        match self {
            Window::Bump1d { profile } => profile.amplitude.abs(),
            Window::Separable2d { x, y } => x.amplitude.abs() * y.amplitude.abs(),
            Window::Box2d { amplitude, .. } => amplitude.abs(),
        }
    }

    /// Euclidean diameter `R = √((x1−x0)² + (y1−y0)²)` of the support box.
    pub fn diameter(&self) -> f64 {
        let (x0, x1, y0, y1) = self.support_box();
        ((x1 - x0).powi(2) + (y1 - y0).powi(2)).sqrt()
    }

    /// ψ(x, y).
    pub fn eval2d(&self, x: f64, y: f64) -> f64 {
        match self {
            Window::Bump1d { profile } => profile.eval(y),
            Window::Separable2d { x: px, y: py } => px.eval(x) * py.eval(y),
            Window::Box2d { x0, x1, y0, y1, amplitude } => {
                if (*x0..=*x1).contains(&x) && (*y0..=*y1).contains(&y) {
                    *amplitude
                } else {
                    0.0
                }
            }
        }
    }

    /// x-side factor of the separable factorization ψ(x,y) = ψ₁(x)·ψ₂(y).
    pub fn x_factor(&self, x: f64) -> f64 {
        match self {
            Window::Bump1d { .. } => 1.0,
            Window::Separable2d { x: px, .. } => px.eval(x),
            Window::Box2d { x0, x1, amplitude, .. } => {
                if (*x0..=*x1).contains(&x) {
                    *amplitude
                } else {
                    0.0
                }
            }
        }
    }

    /// y-side factor of the separable factorization.
    pub fn y_factor(&self, y: f64) -> f64 {
        match self {
            Window::Bump1d { profile } => profile.eval(y),
            Window::Separable2d { y: py, .. } => py.eval(y),
            Window::Box2d { y0, y1, .. } => {
                if (*y0..=*y1).contains(&y) {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }

    /// All built-in kinds factor as ψ₁(x)·ψ₂(y); a tabulated 2-D window
    /// would not, and would be restricted to the quadrature path.
    pub fn is_separable(&self) -> bool {
        true
    }

    /// Largest |y| on the support box.
    pub fn y_abs_max(&self) -> f64 {
        let (_, _, y0, y1) = self.support_box();
        y0.abs().max(y1.abs())
    }
}

/// Free-function form of the bump evaluation.
pub fn bump_eval(w: &Window, t: f64) -> Result<f64> {
    match w {
        Window::Bump1d { profile } => Ok(profile.eval(t)),
        _ => Err(Error::invalid("bump_eval requires a bump1d window")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn grid_nodes_are_multiply_add() {
        let g = GridSpec::new(-16.0, 16.0, 4096).unwrap();
        let h = g.spacing();
        assert_eq!(g.node(0), -16.0);
        assert_eq!(g.node(17), (17f64).mul_add(h, -16.0));
        assert_eq!(g.weight(0), 0.5 * h);
        assert_eq!(g.weight(1), h);
        assert_eq!(g.weight(4095), 0.5 * h);
        assert!(GridSpec::new(1.0, 1.0, 4).is_err());
        assert!(GridSpec::new(0.0, 1.0, 1).is_err());
    }

    #[test]
    fn bump_values() {
        let w = Window::bump1d(0.0, 1.0, 1.0).unwrap();
        assert_eq!(bump_eval(&w, 0.0).unwrap(), 1.0);
        assert_eq!(bump_eval(&w, 1.5).unwrap(), 0.0);
        // exp(-1/3), 30-digit reference 0.716531310573789250425604096925
        assert_relative_eq!(
            bump_eval(&w, 0.5).unwrap(),
            0.7165313105737893,
            max_relative = 1e-15
        );
    }

    #[test]
    fn bump_vanishes_outside_support() {
        let w = Window::bump1d(0.5, 2.0, 3.0).unwrap();
        let (y0, y1) = (-1.5, 2.5);
        for k in 0..100 {
            let t = if k % 2 == 0 {
                y1 + 1e-9 + k as f64 * 0.37
            } else {
                y0 - 1e-9 - k as f64 * 0.41
            };
            assert_eq!(bump_eval(&w, t).unwrap(), 0.0);
        }
    }

    #[test]
    fn sup_bound_attained_for_bump() {
        let w = Window::separable(
            BumpProfile::new(0.0, 1.0, 1.5).unwrap(),
            BumpProfile::new(0.25, 2.0, 2.0).unwrap(),
        );
        let c1 = w.sup_bound();
        assert_eq!(c1, 3.0);
        // 10x oversampled probe of the support box
        let (x0, x1, y0, y1) = w.support_box();
        let mut best: f64 = 0.0;
        let n = 640;
        for i in 0..=n {
            for j in 0..=n {
                let x = x0 + (x1 - x0) * i as f64 / n as f64;
                let y = y0 + (y1 - y0) * j as f64 / n as f64;
                let v = w.eval2d(x, y).abs();
                assert!(v <= c1 + 1e-12);
                best = best.max(v);
            }
        }
        assert!(best >= 0.999 * c1);
    }

    #[test]
    fn window_diameter() {
        let w = Window::box2d(-1.0, 1.0, -1.0, 1.0, 1.0).unwrap();
        assert_relative_eq!(w.diameter(), 8.0f64.sqrt(), max_relative = 1e-15);
    }

    #[test]
    fn gaussian_values() {
        let g = GridSpec::new(-4.0, 4.0, 9).unwrap();
        let f = make_gaussian(g, 1.0, 0.0).unwrap();
        assert_eq!(f.values()[4].re, 1.0);
        // e^{-1/2}, reference 0.606530659712633423603799534991
        assert_relative_eq!(f.values()[5].re, 0.6065306597126334, max_relative = 1e-15);
        // Beckner extremizer exp(-pi x^2) at x=1: e^{-pi}
        let sig = 1.0 / (2.0 * std::f64::consts::PI).sqrt();
        let f = make_gaussian(g, sig, 0.0).unwrap();
        assert_relative_eq!(f.values()[5].re, 0.04321391826377225, max_relative = 1e-14);
    }

    #[test]
    fn step_closed_interval_convention() {
        let g = GridSpec::new(-4.0, 4.0, 9).unwrap();
        let f = make_step(g, -1.0, 1.0).unwrap();
        assert_eq!(f.values()[4].re, 1.0); // node 0
        assert_eq!(f.values()[6].re, 0.0); // node 2
        assert_eq!(f.values()[5].re, 1.0); // node exactly at the jump
    }

    #[test]
    fn chirp_euler_identity() {
        let g = GridSpec::new(0.0, 2.0, 3).unwrap();
        let f = SampledFunction1D::from_real_fn(g, |_| 1.0);
        let q = QuadraticPhase::new(0.0, 1.0, 1.0, 0.0, 0.0).unwrap();
        let out = chirp_premodulate(&f, &q, std::f64::consts::PI, 1.0);
        // node y=1: e^{i pi} = -1
        assert_relative_eq!(out.values()[1].re, -1.0, epsilon = 1e-15);
        assert!(out.values()[1].im.abs() <= 1e-15);
    }

    #[test]
    fn dual_grid_roundtrip_and_eq() {
        let g = GridSpec::new(-16.0, 16.0, 4096).unwrap();
        let d = g.dual();
        assert_eq!(d.count(), 4096);
        assert!(d.approx_eq(&g.dual()));
        assert!(!d.approx_eq(&g));
    }

    proptest! {
        // chirp premodulation leaves every nodal modulus unchanged
        #[test]
        fn chirp_preserves_modulus(
            lambda in 0.1f64..50.0,
            c in -3.0f64..3.0,
            e in -3.0f64..3.0,
            sign in prop::sample::select(vec![-1.0f64, 1.0]),
        ) {
            let g = GridSpec::new(-8.0, 8.0, 64).unwrap();
            let f = make_modulated_gaussian(g, 1.3, 0.2, 2.0).unwrap();
            let q = QuadraticPhase::new(0.0, 1.0, c, 0.0, e).unwrap();
            let out = chirp_premodulate(&f, &q, lambda, sign);
            for (a, b) in f.values().iter().zip(out.values()) {
                prop_assert!((a.norm() - b.norm()).abs() <= 1e-12 * a.norm().max(1e-300));
            }
        }
    }
}
