//! Phase polynomials appearing in the transform kernels.
//!
//! Two families: the quadratic phase
//! `Q(x,y) = a x² + b x y + c y² + d x + e y` with `b ≠ 0`, and the
//! homogeneous polynomial `S(x,y) = Σ_{k=1}^{n−1} α_{k−1} x^{n−k} y^k`
//! of degree `n ≥ 2` (no pure `xⁿ` or `yⁿ` term).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Quadratic phase `Q(x,y) = a x² + b x y + c y² + d x + e y`, `b ≠ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "QuadraticPhaseWire")]
pub struct QuadraticPhase {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    e: f64,
}

#[derive(Deserialize)]
struct QuadraticPhaseWire {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    e: f64,
}

impl TryFrom<QuadraticPhaseWire> for QuadraticPhase {
    type Error = Error;
    fn try_from(w: QuadraticPhaseWire) -> Result<Self> {
        QuadraticPhase::new(w.a, w.b, w.c, w.d, w.e)
    }
}

impl QuadraticPhase {
    /// Builds the phase; rejects `b = 0` and non-finite coefficients.
    pub fn new(a: f64, b: f64, c: f64, d: f64, e: f64) -> Result<Self> {
        for (name, v) in [("a", a), ("b", b), ("c", c), ("d", d), ("e", e)] {
            if !v.is_finite() {
                return Err(Error::invalid(format!("coefficient {name} must be finite")));
            }
        }
        if b == 0.0 {
            return Err(Error::invalid("quadratic phase requires b != 0"));
        }
        Ok(Self { a, b, c, d, e })
    }

    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn c(&self) -> f64 {
        self.c
    }
    pub fn d(&self) -> f64 {
        self.d
    }
    pub fn e(&self) -> f64 {
        self.e
    }

    /// Returns the phase with `b` replaced by `-b`.
    pub fn with_negated_b(&self) -> Self {
        Self { b: -self.b, ..*self }
    }

    /// Evaluates `Q(x,y)`. Fixed grouping `x·(a·x + b·y + d) + y·(c·y + e)`
    /// so results are reproducible across platforms.
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        x * (self.a * x + self.b * y + self.d) + y * (self.c * y + self.e)
    }

    /// Upper bound for `|∂Q/∂y| = |b x + 2 c y + e|` over `|x| ≤ xmax`, `|y| ≤ ymax`.
    pub fn y_rate_bound(&self, xmax: f64, ymax: f64) -> f64 {
        self.b.abs() * xmax + 2.0 * self.c.abs() * ymax + self.e.abs()
    }

    /// Upper bound for `|∂Q/∂x| = |2 a x + b y + d|` over the same box.
    pub fn x_rate_bound(&self, xmax: f64, ymax: f64) -> f64 {
        2.0 * self.a.abs() * xmax + self.b.abs() * ymax + self.d.abs()
    }
}

/// Free evaluation of a quadratic phase.
pub fn eval_quadratic(q: &QuadraticPhase, x: f64, y: f64) -> f64 {
    q.eval(x, y)
}

/// Homogeneous polynomial `S(x,y) = Σ_{k=1}^{n−1} α_{k−1} x^{n−k} y^k` of degree `n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "HomogeneousPhaseWire")]
pub struct HomogeneousPhase {
    degree: u32,
    coeffs: Vec<f64>,
}

#[derive(Deserialize)]
struct HomogeneousPhaseWire {
    degree: u32,
    coeffs: Vec<f64>,
}

impl TryFrom<HomogeneousPhaseWire> for HomogeneousPhase {
    type Error = Error;
    fn try_from(w: HomogeneousPhaseWire) -> Result<Self> {
        HomogeneousPhase::new(w.degree, w.coeffs)
    }
}

impl HomogeneousPhase {
    /// Builds the phase from the degree `n ≥ 2` and the `n−1` coefficients
    /// `α₀..α_{n−2}`; at least one coefficient must be nonzero.
    pub fn new(degree: u32, coeffs: Vec<f64>) -> Result<Self> {
        if degree < 2 {
            return Err(Error::invalid("homogeneous phase requires degree >= 2"));
        }
        if coeffs.len() != (degree - 1) as usize {
            return Err(Error::invalid(format!(
                "degree {} phase needs {} coefficients, got {}",
                degree,
                degree - 1,
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::invalid("coefficients must be finite"));
        }
        if coeffs.iter().all(|c| *c == 0.0) {
            return Err(Error::invalid("at least one coefficient must be nonzero"));
        }
        Ok(Self { degree, coeffs })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Evaluates `S(x,y)`, accumulating terms in descending `k`.
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let n = self.degree as i32;
        let mut acc = 0.0;
        for k in (1..n).rev() {
            let alpha = self.coeffs[(k - 1) as usize];
            acc += alpha * x.powi(n - k) * y.powi(k);
        }
        acc
    }

    /// Upper bound for `|∂S/∂y| = |Σ k α_{k−1} x^{n−k} y^{k−1}|` over
    /// `|x| ≤ xmax`, `|y| ≤ ymax` (coefficient-wise triangle bound).
    pub fn y_rate_bound(&self, xmax: f64, ymax: f64) -> f64 {
        let n = self.degree as i32;
        (1..n)
            .map(|k| {
                k as f64
                    * self.coeffs[(k - 1) as usize].abs()
                    * xmax.powi(n - k)
                    * ymax.powi(k - 1)
            })
            .sum()
    }

    /// Upper bound for `|∂S/∂x|` over the same box.
    pub fn x_rate_bound(&self, xmax: f64, ymax: f64) -> f64 {
        let n = self.degree as i32;
        (1..n)
            .map(|k| {
                (n - k) as f64
                    * self.coeffs[(k - 1) as usize].abs()
                    * xmax.powi(n - k - 1)
                    * ymax.powi(k)
            })
            .sum()
    }
}

/// Free evaluation of a homogeneous phase.
pub fn eval_homogeneous(s: &HomogeneousPhase, x: f64, y: f64) -> f64 {
    s.eval(x, y)
}
