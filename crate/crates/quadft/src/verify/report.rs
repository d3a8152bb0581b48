//! Structured verification reports and their JSON/CSV serialization.
//!
//! Serialization is deterministic: identical inputs produce byte-identical
//! output. Floats render with 17 significant digits in JSON and CSV so the
//! files round-trip the exact f64 values.

use num_complex::Complex64;

/// Outcome of one check. `Untrusted` marks an under-resolved computation
/// and dominates `Pass`: an under-resolved check never passes silently.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Untrusted,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Untrusted => "untrusted",
        }
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One verified inequality instance `‖Tf‖_{p₁} ≤ 𝒞·‖f‖_p`.
#[derive(Debug, Clone)]
pub struct InequalityReport {
    pub transform: String,
    pub corpus_id: String,
    pub p: f64,
    pub p1: f64,
    pub lambda: Option<f64>,
    /// `‖Tf‖_{p₁}` on the target grid.
    pub lhs: f64,
    /// Proof-form bound times `‖f‖_p`; the verdict compares against this.
    pub rhs: f64,
    pub bound_proof: f64,
    /// Printed statement-form constant, reported only.
    pub bound_statement: f64,
    pub input_norm: f64,
    pub slack: f64,
    pub tolerance: f64,
    pub verdict: Verdict,
}

/// Unitarity measurement `‖H_Q f‖₂ / ‖f‖₂` for one corpus member and one
/// sign of `b`.
#[derive(Debug, Clone)]
pub struct UnitarityReport {
    pub corpus_id: String,
    pub b: f64,
    pub ratio: Option<f64>,
    pub deviation: Option<f64>,
    pub skipped: bool,
    pub note: String,
    pub verdict: Verdict,
}

/// Operator-norm decay sweep over an ascending λ sequence.
#[derive(Debug, Clone)]
pub struct DecayReport {
    pub phase: String,
    pub lambdas: Vec<f64>,
    /// Largest singular values of the symmetrized discretized kernels.
    pub norms: Vec<f64>,
    pub fitted_slope: f64,
    pub target_slope: f64,
    /// `max_λ ‖T_λ‖ · λ^{1/n}`.
    pub max_scaled_norm: f64,
    pub under_resolved: Vec<bool>,
}

impl DecayReport {
    pub fn any_under_resolved(&self) -> bool {
        self.under_resolved.iter().any(|b| *b)
    }

    /// Index of the λ attaining `max ‖T_λ‖·λ^{1/n}`.
    pub fn scaled_argmax(&self) -> usize {
        let n = -1.0 / self.target_slope;
        let mut best = 0;
        let mut best_v = f64::NEG_INFINITY;
        for (i, (&l, &s)) in self.lambdas.iter().zip(&self.norms).enumerate() {
            let v = s * l.powf(1.0 / n);
            if v > best_v {
                best_v = v;
                best = i;
            }
        }
        best
    }
}

/// `T_λ` L² decay check: raw sweep plus the endpoint-bound statistic.
///
/// The bound statistic divides `σ_max·√λ` by √(2π) to compare against the
/// cited estimate, which is stated for the unitary-normalized quadratic
/// Fourier operator `(1/√(2π))∫e^{iλQ}ψ·`; the raw statistic for the
/// unnormalized kernel is reported alongside.
#[derive(Debug, Clone)]
pub struct TLambdaDecayReport {
    pub decay: DecayReport,
    pub c1: f64,
    /// `max_λ σ_max(T_λ)·√λ` for the kernel as defined.
    pub max_scaled_raw: f64,
    /// `max_λ σ_max(T_λ)·√λ / √(2π)`, the unitary-normalized statistic.
    pub max_scaled_normalized: f64,
    /// Pass iff the normalized statistic is ≤ 1.05·C₁ and all λ resolved.
    pub verdict: Verdict,
}

/// Dirichlet-kernel limit check at one evaluation point.
#[derive(Debug, Clone)]
pub struct LimitReport {
    pub corpus_id: String,
    pub x: f64,
    pub target: Complex64,
    pub lambdas: Vec<f64>,
    pub approximants: Vec<Complex64>,
    pub errors: Vec<f64>,
}

/// One discrete Minkowski-inequality instance.
#[derive(Debug, Clone)]
pub struct MinkowskiReport {
    pub label: String,
    pub s: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub verdict: Verdict,
}

/// One fast-path-versus-quadrature agreement measurement.
#[derive(Debug, Clone)]
pub struct OracleReport {
    pub label: String,
    pub family: String,
    /// max over targets of |fast − quadrature|, divided by max |quadrature|.
    pub path_deviation: f64,
    /// max relative deviation of the kernel-matrix matvec vs quadrature.
    pub matrix_deviation: f64,
    pub tolerance: f64,
    pub verdict: Verdict,
}

/// Formats a float with 17 significant digits; infinities render as words.
pub fn f17(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else if v.is_infinite() {
        if v > 0.0 { "inf".to_string() } else { "-inf".to_string() }
    } else {
        format!("{v:.16e}")
    }
}

fn json_num(v: f64) -> String {
    if v.is_finite() {
        f17(v)
    } else {
        // JSON has no literal infinity; fall back to a tagged string
        format!("\"{}\"", f17(v))
    }
}

fn json_str(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Small deterministic JSON emitter (objects keep insertion order).
pub enum Json {
    Null,
    Bool(bool),
    Num(f64),
    Int(i64),
    Str(String),
    Arr(Vec<Json>),
    Obj(Vec<(String, Json)>),
    /// Pre-rendered JSON (used to embed serde-serialized spec echoes).
    Raw(String),
}

impl Json {
    pub fn obj(fields: Vec<(&str, Json)>) -> Json {
        Json::Obj(fields.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
    }

    pub fn write(&self, out: &mut String, indent: usize) {
        match self {
            Json::Null => out.push_str("null"),
            Json::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            Json::Num(v) => out.push_str(&json_num(*v)),
            Json::Int(v) => out.push_str(&v.to_string()),
            Json::Str(s) => out.push_str(&json_str(s)),
            Json::Raw(s) => out.push_str(s),
            Json::Arr(items) => {
                if items.is_empty() {
                    out.push_str("[]");
                    return;
                }
                out.push('[');
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    out.push('\n');
                    out.push_str(&"  ".repeat(indent + 1));
                    item.write(out, indent + 1);
                }
                out.push('\n');
                out.push_str(&"  ".repeat(indent));
                out.push(']');
            }
            Json::Obj(fields) => {
                if fields.is_empty() {
                    out.push_str("{}");
                    return;
                }
                out.push('{');
                for (i, (k, v)) in fields.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    out.push('\n');
                    out.push_str(&"  ".repeat(indent + 1));
                    out.push_str(&json_str(k));
                    out.push_str(": ");
                    v.write(out, indent + 1);
                }
                out.push('\n');
                out.push_str(&"  ".repeat(indent));
                out.push('}');
            }
        }
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        self.write(&mut s, 0);
        s.push('\n');
        s
    }
}

fn opt_num(v: Option<f64>) -> Json {
    match v {
        Some(x) => Json::Num(x),
        None => Json::Null,
    }
}

fn complex_json(z: Complex64) -> Json {
    Json::obj(vec![("re", Json::Num(z.re)), ("im", Json::Num(z.im))])
}

impl InequalityReport {
    pub fn to_json(&self) -> Json {
        Json::obj(vec![
            ("transform", Json::Str(self.transform.clone())),
            ("corpus", Json::Str(self.corpus_id.clone())),
            ("p", Json::Num(self.p)),
            ("p1", Json::Num(self.p1)),
            ("lambda", opt_num(self.lambda)),
            ("lhs", Json::Num(self.lhs)),
            ("rhs", Json::Num(self.rhs)),
            ("bound_proof", Json::Num(self.bound_proof)),
            ("bound_statement", Json::Num(self.bound_statement)),
            ("input_norm", Json::Num(self.input_norm)),
            ("slack", Json::Num(self.slack)),
            ("tolerance", Json::Num(self.tolerance)),
            ("verdict", Json::Str(self.verdict.as_str().to_string())),
        ])
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.transform,
            self.corpus_id,
            f17(self.p),
            f17(self.p1),
            self.lambda.map(f17).unwrap_or_default(),
            f17(self.lhs),
            f17(self.rhs),
            f17(self.bound_statement * self.input_norm),
            f17(self.slack),
            self.verdict
        )
    }
}

impl UnitarityReport {
    pub fn to_json(&self) -> Json {
        Json::obj(vec![
            ("corpus", Json::Str(self.corpus_id.clone())),
            ("b", Json::Num(self.b)),
            ("ratio", opt_num(self.ratio)),
            ("deviation", opt_num(self.deviation)),
            ("skipped", Json::Bool(self.skipped)),
            ("note", Json::Str(self.note.clone())),
            ("verdict", Json::Str(self.verdict.as_str().to_string())),
        ])
    }

    pub fn csv_row(&self) -> String {
        format!(
            "hq_unitarity,{},{},{},,{},{},,{},{}",
            self.corpus_id,
            f17(2.0),
            f17(2.0),
            self.ratio.map(f17).unwrap_or_default(),
            f17(1.0),
            self.deviation.map(|d| f17(1.0 - d)).unwrap_or_default(),
            self.verdict
        )
    }
}

impl DecayReport {
    pub fn to_json(&self) -> Json {
        Json::obj(vec![
            ("phase", Json::Str(self.phase.clone())),
            ("lambdas", Json::Arr(self.lambdas.iter().map(|&l| Json::Num(l)).collect())),
            ("norms", Json::Arr(self.norms.iter().map(|&s| Json::Num(s)).collect())),
            ("fitted_slope", Json::Num(self.fitted_slope)),
            ("target_slope", Json::Num(self.target_slope)),
            ("max_scaled_norm", Json::Num(self.max_scaled_norm)),
            (
                "under_resolved",
                Json::Arr(self.under_resolved.iter().map(|&b| Json::Bool(b)).collect()),
            ),
        ])
    }

    pub fn csv_rows(&self, transform: &str, verdict: Option<Verdict>) -> Vec<String> {
        self.lambdas
            .iter()
            .zip(&self.norms)
            .zip(&self.under_resolved)
            .map(|((&l, &s), &u)| {
                let v = if u {
                    Verdict::Untrusted
                } else {
                    verdict.unwrap_or(Verdict::Pass)
                };
                format!(
                    "{},{},{},{},{},{},,,,{}",
                    transform,
                    self.phase,
                    f17(2.0),
                    f17(2.0),
                    f17(l),
                    f17(s),
                    v
                )
            })
            .collect()
    }
}

impl TLambdaDecayReport {
    pub fn to_json(&self) -> Json {
        let mut fields = match self.decay.to_json() {
            Json::Obj(f) => f,
            _ => unreachable!(),
        };
        fields.push(("c1".to_string(), Json::Num(self.c1)));
        fields.push(("max_scaled_raw".to_string(), Json::Num(self.max_scaled_raw)));
        fields.push((
            "max_scaled_normalized".to_string(),
            Json::Num(self.max_scaled_normalized),
        ));
        fields.push(("verdict".to_string(), Json::Str(self.verdict.as_str().to_string())));
        Json::Obj(fields)
    }
}

impl LimitReport {
    pub fn to_json(&self) -> Json {
        Json::obj(vec![
            ("corpus", Json::Str(self.corpus_id.clone())),
            ("x", Json::Num(self.x)),
            ("target", complex_json(self.target)),
            ("lambdas", Json::Arr(self.lambdas.iter().map(|&l| Json::Num(l)).collect())),
            (
                "approximants",
                Json::Arr(self.approximants.iter().map(|&z| complex_json(z)).collect()),
            ),
            ("errors", Json::Arr(self.errors.iter().map(|&e| Json::Num(e)).collect())),
        ])
    }

    pub fn csv_rows(&self) -> Vec<String> {
        self.lambdas
            .iter()
            .zip(self.approximants.iter().zip(&self.errors))
            .map(|(&l, (a, &e))| {
                format!(
                    "dirichlet,{},,,{},{},{},,{},",
                    self.corpus_id,
                    f17(l),
                    f17(a.norm()),
                    f17(self.target.norm()),
                    f17(e)
                )
            })
            .collect()
    }
}

impl MinkowskiReport {
    pub fn to_json(&self) -> Json {
        Json::obj(vec![
            ("label", Json::Str(self.label.clone())),
            ("s", Json::Num(self.s)),
            ("lhs", Json::Num(self.lhs)),
            ("rhs", Json::Num(self.rhs)),
            ("verdict", Json::Str(self.verdict.as_str().to_string())),
        ])
    }

    pub fn csv_row(&self) -> String {
        format!(
            "minkowski,{},{},,,{},{},,{},{}",
            self.label,
            f17(self.s),
            f17(self.lhs),
            f17(self.rhs),
            f17(self.rhs - self.lhs),
            self.verdict
        )
    }
}

impl OracleReport {
    pub fn to_json(&self) -> Json {
        Json::obj(vec![
            ("label", Json::Str(self.label.clone())),
            ("family", Json::Str(self.family.clone())),
            ("path_deviation", Json::Num(self.path_deviation)),
            ("matrix_deviation", Json::Num(self.matrix_deviation)),
            ("tolerance", Json::Num(self.tolerance)),
            ("verdict", Json::Str(self.verdict.as_str().to_string())),
        ])
    }

    pub fn csv_row(&self) -> String {
        format!(
            "oracle,{},,,,{},{},,,{}",
            self.label,
            f17(self.path_deviation),
            f17(self.tolerance),
            self.verdict
        )
    }
}

/// Header shared by every CSV report file.
pub const CSV_HEADER: &str = "transform,corpus,p,p1,lambda,lhs,rhs_proof,rhs_statement,slack,verdict";
