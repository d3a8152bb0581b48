//! The integral operators: unitary Fourier, the windowed quadratic-phase
//! transform `T_λ`, the linear-in-x phase families `F₁`/`F₂`, the quadratic
//! Hartley-type operator `H_Q`, and the oscillatory operator with
//! homogeneous polynomial phase.
//!
//! Every family has a direct-quadrature reference path (trapezoid rule,
//! ascending node order). Where the kernel factors as
//! chirp(x) · e^{i·coupling·x·y} · chirp(y), a fast path premodulates once
//! and evaluates the Fourier sum at the required frequencies by direct
//! summation, so both paths compute the same discrete integral.

pub mod czt;
pub mod fourier;
pub mod kernel;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::phases::{HomogeneousPhase, QuadraticPhase};
use crate::sampling::{chirp_premodulate, GridSpec, SampledFunction1D, Window};

pub use fourier::{fourier_unitary, fourier_unitary_fft, fourier_unitary_quadrature};
pub use kernel::{build_kernel_matrix, KernelMatrix};

/// Transform family selector; the serialized names are the wire format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Fourier,
    TLambda,
    F1,
    F2,
    Hq,
    Oscillatory,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Fourier => "fourier",
            Family::TLambda => "t_lambda",
            Family::F1 => "f1",
            Family::F2 => "f2",
            Family::Hq => "hq",
            Family::Oscillatory => "oscillatory",
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fourier" => Ok(Family::Fourier),
            "t_lambda" | "tlambda" => Ok(Family::TLambda),
            "f1" => Ok(Family::F1),
            "f2" => Ok(Family::F2),
            "hq" => Ok(Family::Hq),
            "oscillatory" | "osc" => Ok(Family::Oscillatory),
            other => Err(Error::invalid(format!("unknown family '{other}'"))),
        }
    }
}

/// A fully specified transform: family, phase, window, λ, and the H_Q
/// branch sign (z = ±i).
#[derive(Debug, Clone, PartialEq)]
pub struct TransformSpec {
    family: Family,
    quadratic: Option<QuadraticPhase>,
    homogeneous: Option<HomogeneousPhase>,
    window: Option<Window>,
    lambda: Option<f64>,
    z_sign: i8,
}

impl TransformSpec {
    pub fn fourier() -> Self {
        Self {
            family: Family::Fourier,
            quadratic: None,
            homogeneous: None,
            window: None,
            lambda: None,
            z_sign: 1,
        }
    }

    pub fn t_lambda(q: QuadraticPhase, window: Window, lambda: f64) -> Result<Self> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::spec("t_lambda requires lambda > 0"));
        }
        Ok(Self {
            family: Family::TLambda,
            quadratic: Some(q),
            homogeneous: None,
            window: Some(window),
            lambda: Some(lambda),
            z_sign: 1,
        })
    }

    pub fn f1(q: QuadraticPhase, window: Window) -> Self {
        Self {
            family: Family::F1,
            quadratic: Some(q),
            homogeneous: None,
            window: Some(window),
            lambda: None,
            z_sign: 1,
        }
    }

    pub fn f2(q: QuadraticPhase, window: Window) -> Self {
        Self {
            family: Family::F2,
            quadratic: Some(q),
            homogeneous: None,
            window: Some(window),
            lambda: None,
            z_sign: 1,
        }
    }

    /// `H_Q` carries no window; `z_sign` selects z = +i or z = −i.
    pub fn hq(q: QuadraticPhase, z_sign: i8) -> Result<Self> {
        if z_sign != 1 && z_sign != -1 {
            return Err(Error::spec("z_sign must be +1 or -1"));
        }
        Ok(Self {
            family: Family::Hq,
            quadratic: Some(q),
            homogeneous: None,
            window: None,
            lambda: None,
            z_sign,
        })
    }

    pub fn oscillatory(s: HomogeneousPhase, chi: Window, lambda: f64) -> Result<Self> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::spec("oscillatory requires lambda > 0"));
        }
        if !matches!(chi, Window::Bump1d { .. }) {
            return Err(Error::spec("oscillatory cutoff must be a bump1d window"));
        }
        Ok(Self {
            family: Family::Oscillatory,
            quadratic: None,
            homogeneous: Some(s),
            window: Some(chi),
            lambda: Some(lambda),
            z_sign: 1,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }
    pub fn quadratic(&self) -> Option<&QuadraticPhase> {
        self.quadratic.as_ref()
    }
    pub fn homogeneous(&self) -> Option<&HomogeneousPhase> {
        self.homogeneous.as_ref()
    }
    pub fn window(&self) -> Option<&Window> {
        self.window.as_ref()
    }
    pub fn lambda(&self) -> Option<f64> {
        self.lambda
    }
    /// z = i·z_sign.
    pub fn z(&self) -> Complex64 {
        Complex64::new(0.0, self.z_sign as f64)
    }
    pub fn z_sign(&self) -> i8 {
        self.z_sign
    }

    /// The family's integral kernel at `(x, y)`, window and prefactor included.
    pub fn kernel(&self, x: f64, y: f64) -> Complex64 {
        match self.family {
            Family::Fourier => Complex64::from_polar(1.0 / fourier::SQRT_2PI, x * y),
            Family::TLambda => {
                let q = self.quadratic.as_ref().unwrap();
                let w = self.window.as_ref().unwrap().eval2d(x, y);
                Complex64::from_polar(w, self.lambda.unwrap() * q.eval(x, y))
            }
            Family::F1 => {
                let q = self.quadratic.as_ref().unwrap();
                let w = self.window.as_ref().unwrap().eval2d(x, y);
                let phase = -x * (q.a() * y * y + q.b() * y + q.c());
                Complex64::from_polar(w, phase)
            }
            Family::F2 => {
                let q = self.quadratic.as_ref().unwrap();
                let w = self.window.as_ref().unwrap().eval2d(x, y);
                let phase = -(q.a() * x * x + q.b() * x + q.c()) * y;
                Complex64::from_polar(w, phase)
            }
            Family::Hq => {
                let q = self.quadratic.as_ref().unwrap();
                let pref = (q.b().abs() / (2.0 * std::f64::consts::PI)).sqrt();
                let k1 = Complex64::from_polar(1.0, -q.eval(x, y));
                let k2 = Complex64::from_polar(1.0, -q.eval(-x, y));
                (k1 + self.z() * k2) * (pref / 2.0)
            }
            Family::Oscillatory => {
                let s = self.homogeneous.as_ref().unwrap();
                let chi = self.window.as_ref().unwrap().y_factor(y);
                Complex64::from_polar(chi, self.lambda.unwrap() * s.eval(x, y))
            }
        }
    }

    /// Whether a fast (chirp + Fourier-sum) path exists for this spec.
    pub fn has_fast_path(&self) -> bool {
        match self.family {
            Family::Fourier | Family::Hq | Family::F2 => true,
            Family::TLambda => self.window.as_ref().is_some_and(Window::is_separable),
            Family::F1 => {
                self.quadratic.as_ref().is_some_and(|q| q.a() == 0.0)
                    && self.window.as_ref().is_some_and(Window::is_separable)
            }
            Family::Oscillatory => false,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(SpecWire::from(self)).expect("spec serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let wire: SpecWire = serde_json::from_value(v.clone())?;
        wire.build()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum PhaseWire {
    Quadratic(QuadraticPhase),
    Homogeneous(HomogeneousPhase),
}

#[derive(Serialize, Deserialize)]
struct SpecWire {
    family: Family,
    #[serde(skip_serializing_if = "Option::is_none")]
    phase: Option<PhaseWire>,
    #[serde(skip_serializing_if = "Option::is_none")]
    window: Option<Window>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lambda: Option<f64>,
    #[serde(default = "default_z_sign")]
    z_sign: i8,
}

fn default_z_sign() -> i8 {
    1
}

impl From<&TransformSpec> for SpecWire {
    fn from(s: &TransformSpec) -> Self {
        let phase = match (&s.quadratic, &s.homogeneous) {
            (Some(q), _) => Some(PhaseWire::Quadratic(*q)),
            (_, Some(h)) => Some(PhaseWire::Homogeneous(h.clone())),
            _ => None,
        };
        SpecWire {
            family: s.family,
            phase,
            window: s.window.clone(),
            lambda: s.lambda,
            z_sign: s.z_sign,
        }
    }
}

impl SpecWire {
    fn build(self) -> Result<TransformSpec> {
        let quad = match &self.phase {
            Some(PhaseWire::Quadratic(q)) => Some(*q),
            _ => None,
        };
        let homo = match self.phase {
            Some(PhaseWire::Homogeneous(h)) => Some(h),
            _ => None,
        };
        let need = |o: Option<QuadraticPhase>| {
            o.ok_or_else(|| Error::spec("family requires a quadratic phase"))
        };
        match self.family {
            Family::Fourier => Ok(TransformSpec::fourier()),
            Family::TLambda => TransformSpec::t_lambda(
                need(quad)?,
                self.window.ok_or_else(|| Error::spec("t_lambda requires a window"))?,
                self.lambda.ok_or_else(|| Error::spec("t_lambda requires lambda"))?,
            ),
            Family::F1 => Ok(TransformSpec::f1(
                need(quad)?,
                self.window.ok_or_else(|| Error::spec("f1 requires a window"))?,
            )),
            Family::F2 => Ok(TransformSpec::f2(
                need(quad)?,
                self.window.ok_or_else(|| Error::spec("f2 requires a window"))?,
            )),
            Family::Hq => TransformSpec::hq(need(quad)?, self.z_sign),
            Family::Oscillatory => TransformSpec::oscillatory(
                homo.ok_or_else(|| Error::spec("oscillatory requires a homogeneous phase"))?,
                self.window.ok_or_else(|| Error::spec("oscillatory requires a cutoff"))?,
                self.lambda.ok_or_else(|| Error::spec("oscillatory requires lambda"))?,
            ),
        }
    }
}

/// Result of applying a transform: samples at the targets plus path and
/// resolution diagnostics.
#[derive(Debug, Clone)]
pub struct TransformOutput {
    pub function: SampledFunction1D,
    pub used_fast_path: bool,
    /// Set when the oscillation-resolution guard failed; the values are
    /// still returned but must not be trusted by verification verdicts.
    pub under_resolved: bool,
}

/// Oscillation-resolution guard: the source spacing must satisfy
/// `h ≤ π / (4·λ·max|∂phase/∂y|)` over the support box (4 samples per
/// radian of the fastest local phase).
pub fn oscillation_resolved(spec: &TransformSpec, source: &GridSpec, targets: &GridSpec) -> bool {
    let rate = phase_y_rate(spec, source, targets);
    if rate <= 0.0 {
        return true;
    }
    source.spacing() <= std::f64::consts::PI / (4.0 * rate)
}

/// Upper bound on `|∂/∂y| of the full kernel phase` over the integration box.
pub(crate) fn phase_y_rate(spec: &TransformSpec, source: &GridSpec, targets: &GridSpec) -> f64 {
    let ymax = match spec.window() {
        Some(w) => w.y_abs_max().min(source.abs_max()),
        None => source.abs_max(),
    };
    let xmax = targets.abs_max();
    match spec.family {
        Family::Oscillatory => {
            spec.lambda.unwrap() * spec.homogeneous.as_ref().unwrap().y_rate_bound(xmax, ymax)
        }
        Family::TLambda => {
            spec.lambda.unwrap() * spec.quadratic.as_ref().unwrap().y_rate_bound(xmax, ymax)
        }
        Family::Hq => spec.quadratic.as_ref().unwrap().y_rate_bound(xmax, ymax),
        Family::F1 => {
            let q = spec.quadratic.as_ref().unwrap();
            xmax * (2.0 * q.a().abs() * ymax + q.b().abs())
        }
        Family::F2 => {
            let q = spec.quadratic.as_ref().unwrap();
            q.a().abs() * xmax * xmax + q.b().abs() * xmax + q.c().abs()
        }
        Family::Fourier => xmax,
    }
}

/// Direct-quadrature reference path: `out(x_i) = Σ_j K(x_i, y_j) f_j w_j`.
pub fn apply_quadrature(
    spec: &TransformSpec,
    f: &SampledFunction1D,
    targets: &GridSpec,
) -> Result<TransformOutput> {
    let src = *f.grid();
    let weighted: Vec<Complex64> = f
        .values()
        .iter()
        .enumerate()
        .map(|(j, v)| v * src.weight(j))
        .collect();
    let nodes: Vec<f64> = src.nodes().collect();
    let xs: Vec<f64> = targets.nodes().collect();
    let values: Vec<Complex64> = xs
        .par_iter()
        .map(|&x| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (y, u) in nodes.iter().zip(&weighted) {
                acc += spec.kernel(x, *y) * u;
            }
            acc
        })
        .collect();
    let under_resolved = spec.family == Family::Oscillatory
        && !oscillation_resolved(spec, f.grid(), targets);
    Ok(TransformOutput {
        function: SampledFunction1D::new(*targets, values)?,
        used_fast_path: false,
        under_resolved,
    })
}

/// Chirp + Fourier-sum fast path; errors with [`Error::Unsupported`] when the
/// family/spec combination has none (oscillatory, or F₁ with `a ≠ 0`).
pub fn apply_fast(
    spec: &TransformSpec,
    f: &SampledFunction1D,
    targets: &GridSpec,
) -> Result<TransformOutput> {
    if !spec.has_fast_path() {
        return Err(Error::Unsupported(format!(
            "no fast path for family {} with this spec",
            spec.family.name()
        )));
    }
    let xs: Vec<f64> = targets.nodes().collect();
    let values = match spec.family {
        Family::Fourier => return fourier_unitary(f, targets).map(|g| TransformOutput {
            function: g,
            used_fast_path: true,
            under_resolved: false,
        }),
        Family::TLambda => {
            let q = spec.quadratic.as_ref().unwrap();
            let w = spec.window.as_ref().unwrap();
            let lambda = spec.lambda.unwrap();
            // g_lambda(y) = e^{i lambda (c y^2 + e y)} f(y) psi_2(y)
            let mut g = chirp_premodulate(f, q, lambda, 1.0);
            for (y, v) in g.grid().nodes().collect::<Vec<_>>().iter().zip(g.values_mut()) {
                *v *= w.y_factor(*y);
            }
            masked_nudft(&g, &xs, |x| q.b() * lambda * x, |x| {
                let amp = w.x_factor(x);
                Complex64::from_polar(amp, lambda * (q.a() * x * x + q.d() * x))
            })
        }
        Family::F1 => {
            let q = spec.quadratic.as_ref().unwrap();
            let w = spec.window.as_ref().unwrap();
            let mut g = f.clone();
            for (y, v) in g.grid().nodes().collect::<Vec<_>>().iter().zip(g.values_mut()) {
                *v *= w.y_factor(*y);
            }
            masked_nudft(&g, &xs, |x| -q.b() * x, |x| {
                Complex64::from_polar(w.x_factor(x), -q.c() * x)
            })
        }
        Family::F2 => {
            let q = spec.quadratic.as_ref().unwrap();
            let w = spec.window.as_ref().unwrap();
            let mut g = f.clone();
            for (y, v) in g.grid().nodes().collect::<Vec<_>>().iter().zip(g.values_mut()) {
                *v *= w.y_factor(*y);
            }
            masked_nudft(&g, &xs, |x| -(q.a() * x * x + q.b() * x + q.c()), |x| {
                Complex64::new(w.x_factor(x), 0.0)
            })
        }
        Family::Hq => {
            let q = spec.quadratic.as_ref().unwrap();
            let z = spec.z();
            let g1 = chirp_premodulate(f, q, 1.0, -1.0);
            let minus: Vec<f64> = xs.iter().map(|x| -q.b() * x).collect();
            let plus: Vec<f64> = xs.iter().map(|x| q.b() * x).collect();
            let sum_minus = fourier::nudft_sum(g1.values(), g1.grid(), &minus, 1.0, 1.0);
            let sum_plus = fourier::nudft_sum(g1.values(), g1.grid(), &plus, 1.0, 1.0);
            let pref = q.b().abs().sqrt() / (2.0 * fourier::SQRT_2PI);
            xs.iter()
                .zip(sum_minus.iter().zip(&sum_plus))
                .map(|(&x, (sm, sp))| {
                    let ax2 = q.a() * x * x;
                    let rot_m = Complex64::from_polar(1.0, -(ax2 + q.d() * x));
                    let rot_p = Complex64::from_polar(1.0, -(ax2 - q.d() * x));
                    (rot_m * sm + z * rot_p * sp) * pref
                })
                .collect()
        }
        Family::Oscillatory => unreachable!("guarded by has_fast_path"),
    };
    Ok(TransformOutput {
        function: SampledFunction1D::new(*targets, values)?,
        used_fast_path: true,
        under_resolved: false,
    })
}

/// Shared fast-path helper: evaluates `post(x) · Σ_j g_j w_j e^{i freq(x) y_j}`
/// per target, skipping targets whose postfactor vanishes.
fn masked_nudft(
    g: &SampledFunction1D,
    xs: &[f64],
    freq: impl Fn(f64) -> f64 + Sync,
    post: impl Fn(f64) -> Complex64 + Sync,
) -> Vec<Complex64> {
    let src = *g.grid();
    let weighted: Vec<Complex64> = g
        .values()
        .iter()
        .enumerate()
        .map(|(j, v)| v * src.weight(j))
        .collect();
    let nodes: Vec<f64> = src.nodes().collect();
    xs.par_iter()
        .map(|&x| {
            let p = post(x);
            if p.re == 0.0 && p.im == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            let xi = freq(x);
            let mut acc = Complex64::new(0.0, 0.0);
            for (y, u) in nodes.iter().zip(&weighted) {
                let (im, re) = (xi * y).sin_cos();
                acc += u * Complex64::new(re, im);
            }
            p * acc
        })
        .collect()
}

/// Applies the transform, preferring the fast path when one exists.
pub fn apply(
    spec: &TransformSpec,
    f: &SampledFunction1D,
    targets: &GridSpec,
) -> Result<TransformOutput> {
    if spec.has_fast_path() {
        apply_fast(spec, f, targets)
    } else {
        apply_quadrature(spec, f, targets)
    }
}

/// `T_λ` application (family check + dispatch).
pub fn apply_t_lambda(
    spec: &TransformSpec,
    f: &SampledFunction1D,
    targets: &GridSpec,
) -> Result<TransformOutput> {
    expect_family(spec, Family::TLambda)?;
    apply(spec, f, targets)
}

pub fn apply_f1(
    spec: &TransformSpec,
    f: &SampledFunction1D,
    targets: &GridSpec,
) -> Result<TransformOutput> {
    expect_family(spec, Family::F1)?;
    apply(spec, f, targets)
}

pub fn apply_f2(
    spec: &TransformSpec,
    f: &SampledFunction1D,
    targets: &GridSpec,
) -> Result<TransformOutput> {
    expect_family(spec, Family::F2)?;
    apply(spec, f, targets)
}

pub fn apply_hq(
    spec: &TransformSpec,
    f: &SampledFunction1D,
    targets: &GridSpec,
) -> Result<TransformOutput> {
    expect_family(spec, Family::Hq)?;
    apply(spec, f, targets)
}

/// Oscillatory operator; quadrature only, with the resolution guard applied.
pub fn apply_oscillatory(
    spec: &TransformSpec,
    phi: &SampledFunction1D,
    targets: &GridSpec,
) -> Result<TransformOutput> {
    expect_family(spec, Family::Oscillatory)?;
    apply_quadrature(spec, phi, targets)
}

fn expect_family(spec: &TransformSpec, family: Family) -> Result<()> {
    if spec.family != family {
        return Err(Error::spec(format!(
            "expected family {}, got {}",
            family.name(),
            spec.family.name()
        )));
    }
    Ok(())
}
