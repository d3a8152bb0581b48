//! Test-function corpus: construction, JSON loading, one-sided limits.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sampling::{
    make_gaussian, make_modulated_gaussian, make_step, BumpProfile, GridSpec, SampledFunction1D,
};

/// Closed-form family and parameters behind a corpus member.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CorpusKind {
    Gaussian { sigma: f64, center: f64 },
    Bump { center: f64, radius: f64, amplitude: f64 },
    Step { a: f64, b: f64 },
    ModulatedGaussian { sigma: f64, center: f64, omega: f64 },
}

impl CorpusKind {
    fn realize(&self, grid: GridSpec) -> Result<SampledFunction1D> {
        match *self {
            CorpusKind::Gaussian { sigma, center } => make_gaussian(grid, sigma, center),
            CorpusKind::Bump { center, radius, amplitude } => {
                let p = BumpProfile::new(center, radius, amplitude)?;
                Ok(SampledFunction1D::from_real_fn(grid, |x| p.eval(x)))
            }
            CorpusKind::Step { a, b } => make_step(grid, a, b),
            CorpusKind::ModulatedGaussian { sigma, center, omega } => {
                make_modulated_gaussian(grid, sigma, center, omega)
            }
        }
    }

    /// One-sided limits `(f(x−0), f(x+0))` of the underlying function.
    pub fn one_sided_limits(&self, x: f64) -> (Complex64, Complex64) {
        match *self {
            CorpusKind::Gaussian { sigma, center } => {
                let u = (x - center) / sigma;
                let v = Complex64::new((-0.5 * u * u).exp(), 0.0);
                (v, v)
            }
            CorpusKind::Bump { center, radius, amplitude } => {
                let p = BumpProfile { center, radius, amplitude };
                let v = Complex64::new(p.eval(x), 0.0);
                (v, v)
            }
            CorpusKind::Step { a, b } => {
                let left = if a < x && x <= b { 1.0 } else { 0.0 };
                let right = if a <= x && x < b { 1.0 } else { 0.0 };
                (Complex64::new(left, 0.0), Complex64::new(right, 0.0))
            }
            CorpusKind::ModulatedGaussian { sigma, center, omega } => {
                let u = (x - center) / sigma;
                let v = Complex64::from_polar((-0.5 * u * u).exp(), omega * x);
                (v, v)
            }
        }
    }
}

/// One corpus member: id, generating kind, and its samples on a grid.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub id: String,
    pub kind: CorpusKind,
    pub function: SampledFunction1D,
    pub description: String,
}

impl CorpusEntry {
    pub fn new(id: &str, kind: CorpusKind, grid: GridSpec, description: &str) -> Result<Self> {
        Ok(Self {
            id: id.to_string(),
            function: kind.realize(grid)?,
            kind,
            description: description.to_string(),
        })
    }
}

/// The five-member default corpus used by the verification suites.
pub fn default_corpus(grid: GridSpec) -> Result<Vec<CorpusEntry>> {
    let entries = vec![
        CorpusEntry::new(
            "gauss_half",
            CorpusKind::Gaussian { sigma: 0.5, center: 0.0 },
            grid,
            "narrow gaussian, sigma = 0.5",
        )?,
        CorpusEntry::new(
            "gauss_unit",
            CorpusKind::Gaussian { sigma: 1.0, center: 0.0 },
            grid,
            "unit gaussian",
        )?,
        CorpusEntry::new(
            "gauss_wide",
            CorpusKind::Gaussian { sigma: 2.0, center: 0.0 },
            grid,
            "wide gaussian, sigma = 2",
        )?,
        CorpusEntry::new(
            "bump_unit",
            CorpusKind::Bump { center: 0.0, radius: 1.0, amplitude: 1.0 },
            grid,
            "smooth mollifier on [-1, 1]",
        )?,
        CorpusEntry::new(
            "mod_gauss",
            CorpusKind::ModulatedGaussian { sigma: 1.0, center: 0.0, omega: 3.0 },
            grid,
            "unit gaussian modulated at omega = 3",
        )?,
    ];
    Ok(entries)
}

#[derive(Debug, Deserialize)]
struct CorpusFileEntry {
    id: String,
    #[serde(flatten)]
    kind: CorpusKind,
    #[serde(default)]
    description: String,
}

/// Loads a corpus from a JSON array of `{id, kind, params...}` records.
pub fn load_corpus(path: &std::path::Path, grid: GridSpec) -> Result<Vec<CorpusEntry>> {
    let text = std::fs::read_to_string(path)?;
    let raw: Vec<CorpusFileEntry> = serde_json::from_str(&text)?;
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::with_capacity(raw.len());
    for r in raw {
        if !seen.insert(r.id.clone()) {
            return Err(Error::Config(format!("duplicate corpus id '{}'", r.id)));
        }
        out.push(CorpusEntry {
            id: r.id,
            function: r.kind.realize(grid)?,
            kind: r.kind,
            description: r.description,
        });
    }
    Ok(out)
}
