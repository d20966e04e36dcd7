//! Command implementations behind the `alphadet` binary.
//!
//! Every command returns an [`Outcome`] holding its stdout text, optional
//! stderr text and exit code, so the commands can be driven in-process.
//!
//! Exit codes: `0` accept/success, `1` reject, `2` parse or input error,
//! `3` size bound exceeded, `4` truncation failure.

use std::fmt::Write as _;
use std::path::Path;

use alphadet::alpha_det::FAST_BOUND;
use alphadet::distribution::{pmf_table, sample_from_table, validate_moments};
use alphadet::divisibility::{check_divisible, check_divisible_symmetric, DivisibilityStatus, DivisibilityVerdict};
use alphadet::existence::{check_negative_alpha, check_positive_alpha, check_selfadjoint, Status, Verdict};
use alphadet::operator::{expansion_coefficient, verify_expansion};
use alphadet::{alpha_det_fast, AlphaParam, ComplexMatrix, KernelMatrix, MultiplicityVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

/// Kernel file: a `dim × dim` matrix given as real and (optional) imaginary
/// planes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelFile {
    pub dim: usize,
    pub real: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub imag: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Map<String, Value>>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("size bound exceeded: {0}")]
    Size(String),
    #[error("truncation failure: {0}")]
    Truncation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Input(_) => 2,
            CliError::Size(_) => 3,
            CliError::Truncation(_) => 4,
        }
    }
}

impl From<alphadet::Error> for CliError {
    fn from(e: alphadet::Error) -> Self {
        match e {
            alphadet::Error::DimensionTooLarge { .. } => CliError::Size(e.to_string()),
            alphadet::Error::TruncationFailure { .. } => CliError::Truncation(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

impl KernelFile {
    pub fn parse(text: &str) -> CliResult<Self> {
        let file: KernelFile = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        file.validate()?;
        Ok(file)
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    fn validate(&self) -> CliResult<()> {
        if self.dim == 0 {
            return Err(CliError::Parse("dim must be positive".into()));
        }
        let check = |plane: &[Vec<f64>], name: &str| {
            if plane.len() != self.dim || plane.iter().any(|row| row.len() != self.dim) {
                return Err(CliError::Parse(format!("{name} must be a {0}×{0} array", self.dim)));
            }
            Ok(())
        };
        check(&self.real, "real")?;
        if let Some(imag) = &self.imag {
            check(imag, "imag")?;
        }
        Ok(())
    }

    pub fn to_kernel(&self) -> CliResult<KernelMatrix> {
        self.validate()?;
        let d = self.dim;
        let m = ComplexMatrix::from_fn(d, |i, j| {
            let im = self.imag.as_ref().map_or(0.0, |p| p[i][j]);
            Complex64::new(self.real[i][j], im)
        });
        Ok(KernelMatrix::new(m))
    }

    /// Real and imaginary planes of `k`; `imag` is omitted when all zero.
    pub fn from_kernel(k: &KernelMatrix) -> Self {
        let d = k.dim();
        let plane = |f: fn(&Complex64) -> f64| -> Vec<Vec<f64>> {
            (0..d)
                .map(|i| (0..d).map(|j| f(&k.matrix()[(i, j)])).collect())
                .collect()
        };
        let imag = plane(|z| z.im);
        Self {
            dim: d,
            real: plane(|z| z.re),
            imag: imag.iter().flatten().any(|&v| v != 0.0).then_some(imag),
            metadata: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("kernel file serializes")
    }
}

/// Parses `-0.5`, `2` or a fraction such as `-1/3`.
pub fn parse_alpha(s: &str) -> Result<f64, String> {
    let value = match s.split_once('/') {
        Some((num, den)) => {
            let num: f64 = num.trim().parse().map_err(|e| format!("{s}: {e}"))?;
            let den: f64 = den.trim().parse().map_err(|e| format!("{s}: {e}"))?;
            num / den
        }
        None => s.trim().parse().map_err(|e| format!("{s}: {e}"))?,
    };
    if !value.is_finite() || value == 0.0 {
        return Err(format!("alpha must be a finite nonzero real, got {s}"));
    }
    Ok(value)
}

/// What a command prints and how it exits.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            stdout,
            stderr: String::new(),
            code: 0,
        }
    }

    pub fn from_error(e: &CliError) -> Self {
        Self {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: e.exit_code(),
        }
    }
}

/// Real number rounded to 12 decimals, without trailing zeros or `-0`.
pub fn format_real(x: f64) -> String {
    let s = format!("{x:.12}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

/// `a`, `a+bi` or `a-bi` with [`format_real`] parts; the imaginary part is
/// dropped when it rounds to zero.
pub fn format_complex(z: Complex64) -> String {
    let re = format_real(z.re);
    let im = format_real(z.im);
    if im == "0" {
        re
    } else if let Some(abs) = im.strip_prefix('-') {
        format!("{re}-{abs}i")
    } else {
        format!("{re}+{im}i")
    }
}

fn complex_json(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

fn report(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn load_kernel(path: &Path) -> CliResult<KernelMatrix> {
    KernelFile::load(path)?.to_kernel()
}

/// `det_α` of the matrix in `path`.
pub fn cmd_alphadet(path: &Path, alpha: f64) -> CliResult<Outcome> {
    let k = load_kernel(path)?;
    let value = alpha_det_fast(k.matrix(), &Complex64::new(alpha, 0.0))?;
    Ok(Outcome::ok(format!("{}\n", format_complex(value))))
}

fn verdict_json(v: &Verdict) -> Value {
    let (status, bound) = match v.status {
        Status::AcceptExact => ("AcceptExact", None),
        Status::AcceptUpToBound(n) => ("AcceptUpToBound", Some(n)),
        Status::Reject => ("Reject", None),
    };
    let mut out = json!({
        "status": status,
        "conditions_checked": v.conditions_checked,
        "notes": v.notes,
    });
    if let Some(n) = bound {
        out["n_max"] = json!(n);
    }
    if let Some(w) = &v.witness {
        let mut witness = json!({
            "condition": w.condition.label(),
            "subset": w.subset.indices(),
            "multiplicity": w.multiplicity.counts(),
            "value": complex_json(w.value),
        });
        if let Some(beta) = w.beta {
            witness["beta"] = json!(beta);
        }
        out["witness"] = witness;
    }
    out
}

/// Existence verdict. Hermitian kernels with `α < 0` use the spectral
/// criterion; other kernels with `α < 0` the principal-minor criterion.
pub fn cmd_check(path: &Path, alpha: f64, n_max: usize) -> CliResult<Outcome> {
    let k = load_kernel(path)?;
    let alpha = AlphaParam::new(alpha)?;
    let (verdict, route) = if alpha.is_positive() {
        (check_positive_alpha(&k, alpha, n_max)?, "block α-determinants of J_α")
    } else if k.is_hermitian() {
        (check_selfadjoint(&k, alpha)?, "spectrum of hermitian K")
    } else {
        (check_negative_alpha(&k, alpha)?, "principal minors of J_α")
    };
    let mut value = verdict_json(&verdict);
    value["route"] = json!(route);
    Ok(Outcome {
        stdout: report(&value),
        stderr: String::new(),
        code: if verdict.is_accept() { 0 } else { 1 },
    })
}

fn divisibility_json(v: &DivisibilityVerdict) -> Value {
    let (status, bound) = match v.status {
        DivisibilityStatus::NeverDivisible => ("NeverDivisible", None),
        DivisibilityStatus::DivisibleUpToBound(n) => ("DivisibleUpToBound", Some(n)),
        DivisibilityStatus::Reject => ("Reject", None),
    };
    let mut out = json!({
        "status": status,
        "conditions_checked": v.conditions_checked,
        "notes": v.notes,
    });
    if let Some(n) = bound {
        out["n_max"] = json!(n);
    }
    if let Some(w) = &v.witness {
        out["witness"] = json!({
            "condition": w.condition.label(),
            "subset": w.subset.indices(),
            "tuple": w.tuple,
            "value": complex_json(w.value),
        });
    }
    out
}

/// Infinite-divisibility verdict. Exit `0` only for `DivisibleUpToBound`.
pub fn cmd_divisible(path: &Path, alpha: f64, n_max: usize) -> CliResult<Outcome> {
    let k = load_kernel(path)?;
    let alpha = AlphaParam::new(alpha)?;
    let verdict = if alpha.is_positive() && k.is_real_symmetric() {
        check_divisible_symmetric(&k, alpha, n_max)?
    } else {
        check_divisible(&k, alpha, n_max)?
    };
    Ok(Outcome {
        stdout: report(&divisibility_json(&verdict)),
        stderr: String::new(),
        code: if verdict.is_divisible() { 0 } else { 1 },
    })
}

/// Options of [`cmd_sample`].
#[derive(Debug, Clone, PartialEq)]
pub struct SampleOptions {
    pub count: usize,
    pub seed: u64,
    pub mass_target: f64,
    /// Append a moment check for all `n` with total `<= 3`.
    pub validate: bool,
}

/// One draw per line as space-separated counts, optionally followed by a
/// JSON moment report. Exit `1` when some moment misses its 3 SE band.
pub fn cmd_sample(path: &Path, alpha: f64, opts: &SampleOptions) -> CliResult<Outcome> {
    let k = load_kernel(path)?;
    let alpha = AlphaParam::new(alpha)?;
    let table = pmf_table(&k, alpha, opts.mass_target)?;
    let batch = sample_from_table(&table, opts.count, opts.seed);
    let mut out = String::new();
    for draw in &batch.draws {
        let line: Vec<String> = draw.counts().iter().map(|c| c.to_string()).collect();
        writeln!(out, "{}", line.join(" ")).expect("write to string");
    }
    let mut code = 0;
    if opts.validate {
        let checks = validate_moments(&k, alpha, &batch, 3)?;
        let all_ok = checks.iter().all(|c| c.within_3se);
        if !all_ok {
            code = 1;
        }
        let rows: Vec<Value> = checks
            .iter()
            .map(|c| {
                json!({
                    "n": c.multiplicity.counts(),
                    "expected": c.expected,
                    "empirical": c.empirical,
                    "standard_error": c.standard_error,
                    "within_3se": c.within_3se,
                })
            })
            .collect();
        let value = json!({
            "seed": batch.seed,
            "count": batch.count,
            "bias_bound": batch.bias_bound,
            "all_within_3se": all_ok,
            "moments": rows,
        });
        out.push_str(&serde_json::to_string(&value).expect("report serializes"));
        out.push('\n');
    }
    Ok(Outcome {
        stdout: out,
        stderr: String::new(),
        code,
    })
}

/// Multiset notation for a multiplicity vector: `(2, 0, 1) -> (0,0,2)`.
pub fn point_key(n: &MultiplicityVector) -> String {
    let points: Vec<String> = n.points().iter().map(|p| p.to_string()).collect();
    format!("({})", points.join(","))
}

/// A `z` inside the convergence domain: `|α z_k| ‖K‖_F <= 1/4`.
pub fn default_z(k: &KernelMatrix, alpha: f64) -> Vec<Complex64> {
    let r = 0.25 / (1.0 + alpha.abs() * k.matrix().frobenius_norm());
    vec![Complex64::new(r, 0.0); k.dim()]
}

/// Coefficients `(Π 1/n_k!) det_α K[n]` for `|n| <= order`, one
/// `key value` line each; the `verify_expansion` residual goes to stderr.
/// For `α = -1/m` the identically zero coefficients with some `n_k > m`
/// are omitted.
pub fn cmd_expand(path: &Path, alpha: f64, order: usize, z: Option<Vec<f64>>) -> CliResult<Outcome> {
    let k = load_kernel(path)?;
    let alpha = AlphaParam::new(alpha)?;
    if order > FAST_BOUND {
        return Err(CliError::Size(format!("order {order} exceeds {FAST_BOUND}")));
    }
    let mut out = String::new();
    for n in MultiplicityVector::up_to_total(k.dim(), order) {
        if let Some(m) = alpha.reciprocal_int() {
            if n.counts().iter().any(|&c| c > m as usize) {
                continue;
            }
        }
        let coeff = expansion_coefficient(&k, alpha.value(), &n)?;
        writeln!(out, "{} {}", point_key(&n), format_complex(coeff)).expect("write to string");
    }
    let z = match z {
        Some(v) if v.len() != k.dim() => {
            return Err(CliError::Input(format!(
                "--z needs {} components, got {}",
                k.dim(),
                v.len()
            )));
        }
        Some(v) => v.into_iter().map(|x| Complex64::new(x, 0.0)).collect(),
        None => default_z(&k, alpha.value()),
    };
    let check = verify_expansion(&k, alpha, &z, order)?;
    let zs: Vec<String> = z.iter().map(|x| format_real(x.re)).collect();
    let stderr = format!(
        "residual {:e} at z=({}) spectral_radius {} terms {}{}\n",
        check.residual,
        zs.join(","),
        format_real(check.spectral_radius),
        check.terms,
        if check.exact { " exact" } else { "" },
    );
    Ok(Outcome {
        stdout: out,
        stderr,
        code: 0,
    })
}
