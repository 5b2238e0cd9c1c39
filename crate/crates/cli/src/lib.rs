//! Problem files and task dispatch behind the `tropeig` binary.
//!
//! A problem file is a JSON object:
//!
//! ```json
//! {
//!   "task": "x-simple",
//!   "matrix": [[1, 0.5], [0.5, 1]],
//!   "lambda": 1,
//!   "interval": {
//!     "lower": [1, 1], "upper": [2, "inf"],
//!     "lower_open": [true, true], "upper_open": [false, true]
//!   },
//!   "b": [2, 1],
//!   "x": [1, 1]
//! }
//! ```
//!
//! Only `matrix` is always required. `lambda` is a positive number or
//! `"principal"` (the maximum cycle geometric mean, also the default). `b` is
//! the right-hand side for `solve`, `x` the starting vector for `orbit`. The
//! task given on the command line takes precedence over `task` in the file.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use thiserror::Error;
use tropeig::interval::{self, Settings};
use tropeig::verdict::Ext;
use tropeig::{one_sided, spectral};
use tropeig::{Condition, Decision, IntervalBox, Tolerance, TropMatrix, TropVector, Value, Verdict};

/// Largest accepted matrix dimension.
pub const DEFAULT_MAX_DIM: usize = 500;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    Eigenvalues,
    Eigencone,
    Solve,
    SimpleImage,
    XSimple,
    Robust,
    Visualize,
    Orbit,
}

impl Task {
    pub fn name(self) -> &'static str {
        match self {
            Task::Eigenvalues => "eigenvalues",
            Task::Eigencone => "eigencone",
            Task::Solve => "solve",
            Task::SimpleImage => "simple-image",
            Task::XSimple => "x-simple",
            Task::Robust => "robust",
            Task::Visualize => "visualize",
            Task::Orbit => "orbit",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Named {
    Principal,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LambdaSpec {
    Value(f64),
    Named(Named),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub task: Option<Task>,
    pub matrix: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<LambdaSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interval: Option<IntervalBox>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<f64>>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("invalid problem file: {0}")]
    Schema(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error(transparent)]
    Library(#[from] tropeig::Error),
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Schema(e.to_string()))
    }

    /// The matrix, checked to be square, nonempty and at most `max_dim` wide.
    pub fn matrix(&self, max_dim: usize) -> Result<TropMatrix, CliError> {
        let n = self.matrix.len();
        if n == 0 {
            return Err(CliError::Input("matrix is empty".into()));
        }
        if n > max_dim {
            return Err(CliError::Input(format!("dimension {n} exceeds the maximum {max_dim}")));
        }
        if let Some(k) = self.matrix.iter().position(|r| r.len() != n) {
            return Err(CliError::Input(format!(
                "matrix must be square: row {k} has {} entries, expected {n}",
                self.matrix[k].len()
            )));
        }
        Ok(TropMatrix::from_rows(&self.matrix)?)
    }

    fn vector(&self, field: &str, v: &Option<Vec<f64>>, n: usize) -> Result<Option<TropVector>, CliError> {
        let Some(v) = v else {
            return Ok(None);
        };
        if v.len() != n {
            return Err(CliError::Input(format!("{field} has length {}, expected {n}", v.len())));
        }
        Ok(Some(TropVector::new(v.clone())?))
    }

    fn interval(&self, n: usize) -> Result<&IntervalBox, CliError> {
        let x = self
            .interval
            .as_ref()
            .ok_or_else(|| CliError::Input("this task needs an \"interval\" box".into()))?;
        if x.len() != n {
            return Err(CliError::Input(format!("interval has dimension {}, expected {n}", x.len())));
        }
        Ok(x)
    }
}

/// Command-line knobs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Options {
    pub tolerance: f64,
    pub seed: u64,
    pub max_coverings: usize,
    pub orbit_steps: usize,
    pub max_dim: usize,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            tolerance: tropeig::DEFAULT_REL_TOL,
            seed: 42,
            max_coverings: one_sided::DEFAULT_COVERING_LIMIT,
            orbit_steps: 200,
            max_dim: DEFAULT_MAX_DIM,
        }
    }
}

impl Options {
    fn settings(&self) -> Settings {
        Settings {
            tol: Tolerance::new(self.tolerance),
            seed: self.seed,
            orbit_steps: self.orbit_steps,
            ..Settings::default()
        }
    }
}

fn resolve_lambda(p: &ProblemFile, a: &TropMatrix) -> Result<f64, CliError> {
    match p.lambda {
        None | Some(LambdaSpec::Named(Named::Principal)) => Ok(spectral::mcgm(a)?),
        Some(LambdaSpec::Value(l)) if l > 0.0 && l.is_finite() => Ok(l),
        Some(LambdaSpec::Value(l)) => Err(CliError::Input(format!("lambda must be positive and finite, got {l}"))),
    }
}

/// Runs `task` on the problem. The returned verdict ends with a `run`
/// condition recording the task, seed and tolerance.
pub fn run(task: Task, p: &ProblemFile, opts: &Options) -> Result<Verdict, CliError> {
    if !(opts.tolerance > 0.0 && opts.tolerance < 1.0) {
        return Err(CliError::Input(format!("tolerance must lie in (0, 1), got {}", opts.tolerance)));
    }
    let a = p.matrix(opts.max_dim)?;
    let n = a.rows();
    let tol = Tolerance::new(opts.tolerance);
    let settings = opts.settings();
    let mut v = match task {
        Task::Eigenvalues => {
            let ev = spectral::eigenvalues(&a, tol)?;
            let mut v = Verdict::new("eigenvalues", Decision::Yes);
            v.push(
                Condition::new("eigenvalues", true)
                    .vector("values", &ev)
                    .scalar("mcgm", spectral::mcgm(&a)?),
            );
            v.push(Condition::new("zero_eigenvalue", spectral::has_zero_eigenvalue(&a)?).note("holds iff A has a zero column"));
            v
        }
        Task::Eigencone => {
            let lambda = resolve_lambda(p, &a)?;
            let es = spectral::eigen_structure(&a, lambda, tol)?;
            let mut v = Verdict::new("eigencone", Decision::Yes);
            let mut gens = Condition::new("generators", true).scalar("lambda", lambda);
            for s in 0..es.generator_count() {
                gens = gens.vector(&format!("g{s}"), es.generator(s).as_slice());
            }
            v.push(gens);
            v.push(
                Condition::new("critical_graph", true)
                    .set("max_support", &es.n_lambda)
                    .sets("components", &es.crit_components)
                    .set("representatives", &es.representatives.iter().copied().collect()),
            );
            v
        }
        Task::Solve => solve(p, &a, tol, opts)?,
        Task::SimpleImage => {
            let lambda = resolve_lambda(p, &a)?;
            spectral::simple_image_eigenvector_exists(&a, lambda, tol)?
        }
        Task::XSimple => {
            let lambda = resolve_lambda(p, &a)?;
            let x = p.interval(n)?;
            if x.is_lower_open() {
                interval::has_x_simple_eigencone_open(&a, lambda, x, &settings)?
            } else {
                interval::has_x_simple_eigencone(&a, lambda, x, &settings)?
            }
        }
        Task::Robust => {
            let lambda = resolve_lambda(p, &a)?;
            interval::weak_x_robustness(&a, lambda, p.interval(n)?, &settings)?
        }
        Task::Visualize => {
            let (x, scaled) = spectral::strict_visualization(&a, tol)?;
            let mut rows = Condition::new("scaled_matrix", true).scalar("lambda", spectral::mcgm(&a)?);
            for i in 0..n {
                rows = rows.vector(&format!("row{i}"), scaled.row(i));
            }
            let mut v = Verdict::new("strict visualization", Decision::Yes);
            v.push(rows);
            v.with_witness(x)
        }
        Task::Orbit => {
            let lambda = resolve_lambda(p, &a)?;
            let start = p.vector("x", &p.x, n)?.unwrap_or_else(|| TropVector::ones(n));
            let hit = interval::attraction_test(&a, lambda, &start, opts.orbit_steps, tol);
            let mut v = Verdict::new(
                "orbit reaches the eigencone",
                if hit.is_some() { Decision::Yes } else { Decision::Inconclusive },
            );
            let mut c = Condition::new("attraction", hit.is_some())
                .scalar("lambda", lambda)
                .scalar("max_steps", opts.orbit_steps as f64);
            if let Some(t) = hit {
                c = c.scalar("steps", t as f64);
            } else {
                c = c.note("not reached within the step budget");
            }
            v.push(c);
            v.with_witness(start)
        }
    };
    v.push(
        Condition::new("run", true)
            .text("task", task.name())
            .text("seed", opts.seed.to_string())
            .scalar("tolerance", opts.tolerance),
    );
    Ok(v)
}

fn solve(p: &ProblemFile, a: &TropMatrix, tol: Tolerance, opts: &Options) -> Result<Verdict, CliError> {
    let b = p
        .vector("b", &p.b, a.rows())?
        .ok_or_else(|| CliError::Input("solve needs a right-hand side \"b\"".into()))?;
    if let Some(x) = &p.interval {
        if x.len() != a.cols() {
            return Err(CliError::Input(format!("interval has dimension {}, expected {}", x.len(), a.cols())));
        }
        let mut v = interval::solvable_in_box(a, &b, x, tol)?;
        if v.is_yes() {
            let u = interval::unique_in_box(a, &b, x, tol)?;
            let unique = u.is_yes();
            v.push(Condition::new("unique_in_box", unique));
            v.certificate.extend(u.certificate);
            if !unique {
                v.witness = u.witness;
                v.alternative = u.alternative;
            }
        }
        return Ok(v);
    }
    let s = one_sided::analyze(a, &b, tol)?;
    let mut v = Verdict::new("A x = b solvable", Decision::from_bool(s.solvable));
    let mut c = Condition::new("solvable", s.solvable)
        .vector("gamma_star", &s.gamma_star)
        .sets("m_sets", &s.m_sets)
        .set("support_b", &s.support_b);
    if !s.solvable {
        c = c.note("unsolvable: the sets M_j do not cover supp(b)");
        v.push(c);
        return Ok(v);
    }
    v.push(c);
    let desc = one_sided::solution_description(a, &b, tol, opts.max_coverings)?;
    v.push(Condition::new("unique", s.unique));
    v.push(Condition::new("minimal_coverings", true).sets("coverings", &desc.minimal_coverings));
    if !desc.minimal_coverings.is_empty() {
        v.witness = Some(desc.solution_for(0, 0.0));
    }
    Ok(v)
}

/// 0 when decided, 2 when inconclusive.
pub fn exit_code(v: &Verdict) -> u8 {
    match v.decision {
        Decision::Yes | Decision::No => 0,
        Decision::Inconclusive => 2,
    }
}

fn fmt_num(x: f64) -> String {
    if x.is_infinite() {
        "inf".into()
    } else {
        format!("{x}")
    }
}

fn fmt_value(v: &Value) -> String {
    let set = |s: &[usize]| format!("{{{}}}", s.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(", "));
    match v {
        Value::Scalar(Ext(x)) => fmt_num(*x),
        Value::Vector(xs) => format!("({})", xs.iter().map(|e| fmt_num(e.0)).collect::<Vec<_>>().join(", ")),
        Value::Set(s) => set(s),
        Value::Sets(ss) => ss.iter().map(|s| set(s)).collect::<Vec<_>>().join(" "),
        Value::Text(t) => t.clone(),
    }
}

fn fmt_condition(out: &mut String, c: &Condition) {
    let mark = if c.holds { "holds" } else { "fails" };
    let _ = write!(out, "  [{mark}] {}", c.id);
    if !c.note.is_empty() {
        let _ = write!(out, ": {}", c.note);
    }
    out.push('\n');
    for d in &c.data {
        let _ = writeln!(out, "      {} = {}", d.name, fmt_value(&d.value));
    }
}

/// Human-readable report. The full certificate trail is printed only when
/// `certificate` is set; otherwise just the first condition.
pub fn render_text(task: Task, v: &Verdict, opts: &Options, certificate: bool) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "tropeig {} (seed {}, tolerance {:e})", task.name(), opts.seed, opts.tolerance);
    let decision = match v.decision {
        Decision::Yes => "yes",
        Decision::No => "no",
        Decision::Inconclusive => "inconclusive",
    };
    let _ = writeln!(out, "{}: {decision}", v.question);
    if let Some(w) = &v.witness {
        let _ = writeln!(out, "witness: ({})", w.iter().map(fmt_num).collect::<Vec<_>>().join(", "));
    }
    if let Some(w) = &v.alternative {
        let _ = writeln!(out, "alternative: ({})", w.iter().map(fmt_num).collect::<Vec<_>>().join(", "));
    }
    let shown = if certificate { v.certificate.len() } else { v.certificate.len().min(1) };
    for c in &v.certificate[..shown] {
        fmt_condition(&mut out, c);
    }
    out
}
