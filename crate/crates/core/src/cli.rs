//! The `bohr` command-line front end.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::error::BohrError;
use crate::extremal::boundary_points;
use crate::functionals::{dilatation_from_k, LambdaWeight};
use crate::radii::{
    analytic_radius, closed_form_radius, harmonic_radius, hypergeom_radius, sharpness_probe,
    subordination_radius, CatalogCase, CatalogParams, ExtremalFamily, FunctionalSpec,
    DEFAULT_A_GRID, DEFAULT_TOL,
};
use crate::specfun::HypergeomParams;
use crate::weights::WeightFamily;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;

/// Rows whose closed form and bisection value differ by more than this are flagged.
pub const MISMATCH_TOL: f64 = 1e-10;

const SIGNIFICANT_DIGITS: usize = 12;

#[derive(Debug, Parser)]
#[command(
    name = "bohr",
    version,
    about = "Bohr radii for analytic and quasiconformal harmonic maps"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    pub format: Format,

    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute one radius (closed form and bisection where both exist).
    Radius(RadiusArgs),
    /// Sweep parameter grids and tabulate closed form against bisection.
    Table(RadiusArgs),
    /// Evaluate a functional on an extremal function and compare with its threshold.
    Verify(VerifyArgs),
    /// Look for an extremal witness just beyond a radius.
    Sharpness(SharpnessArgs),
    /// Points on the boundary circle of Ω_γ.
    Boundary(BoundaryArgs),
    /// Hadamard product of ₂F₁ coefficients with a coefficient list.
    Convolve(ConvolveArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Problem {
    Analytic,
    Harmonic,
    Subordination,
    Hypergeom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    Power,
    Even,
    Odd,
    ShiftedLinear,
    PowerAlpha,
    Hypergeom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LambdaMode {
    Zero,
    One,
}

impl LambdaMode {
    fn weight(self) -> LambdaWeight {
        match self {
            LambdaMode::Zero => LambdaWeight::zero(),
            LambdaMode::One => LambdaWeight::one(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FunctionalKind {
    Refined,
    Harmonic,
    Subordination,
}

#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    /// Weight family.
    #[arg(long, value_enum, default_value_t = FamilyKind::Power)]
    pub family: FamilyKind,
    /// Exponent α of the power-alpha family.
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub alpha: f64,
    /// First nonzero index N of shifted-linear and power-alpha weights.
    #[arg(long = "start", default_value_t = 1)]
    pub start: usize,
    /// ₂F₁ parameter a.
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub a: f64,
    /// ₂F₁ parameter b.
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub b: f64,
    /// ₂F₁ parameter c.
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub c: f64,
}

impl FamilyArgs {
    fn build(&self) -> Result<WeightFamily, BohrError> {
        Ok(match self.family {
            FamilyKind::Power => WeightFamily::Power,
            FamilyKind::Even => WeightFamily::Even,
            FamilyKind::Odd => WeightFamily::OddWithUnitHead,
            FamilyKind::ShiftedLinear => WeightFamily::shifted_linear(self.start),
            FamilyKind::PowerAlpha => WeightFamily::power_alpha(self.alpha, self.start)?,
            FamilyKind::Hypergeom => WeightFamily::hypergeom(self.a, self.b, self.c)?,
        })
    }
}

/// Every numeric parameter accepts a value, a list `v1,v2,...`, or a grid `lo:hi:step`.
#[derive(Debug, Clone, Args)]
pub struct RadiusArgs {
    /// Closed-form catalog entry (e.g. classical, theorem-b, app3, cor4-1).
    #[arg(long)]
    pub case: Option<String>,
    /// Radius problem used when no case is given.
    #[arg(long, value_enum, default_value_t = Problem::Analytic)]
    pub problem: Problem,
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long, default_value = "1")]
    pub p: String,
    #[arg(long, default_value = "0")]
    pub gamma: String,
    /// Dilatation bound k.
    #[arg(long, default_value = "0")]
    pub k: String,
    /// Quasiconformality constant K (used by quasi-subordination).
    #[arg(long = "big-k", default_value = "1")]
    pub big_k: String,
    /// Exponent y of ₂F₁(y, 1; 1; x) (used by remark3-1).
    #[arg(long, default_value = "1")]
    pub y: String,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
}

#[derive(Debug, Clone, Args)]
pub struct ExtremalArgs {
    #[arg(long, value_enum, default_value_t = FunctionalKind::Refined)]
    pub functional: FunctionalKind,
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long, default_value_t = 1.0)]
    pub p: f64,
    #[arg(long, default_value_t = 0.0)]
    pub gamma: f64,
    #[arg(long, default_value_t = 0.0)]
    pub k: f64,
    /// Sets k = (K-1)/(K+1), overriding --k.
    #[arg(long = "big-k")]
    pub big_k: Option<f64>,
    #[arg(long, value_enum, default_value_t = LambdaMode::One)]
    pub lambda: LambdaMode,
}

impl ExtremalArgs {
    fn dilatation(&self) -> Result<f64, BohrError> {
        match self.big_k {
            Some(k) => dilatation_from_k(k),
            None => Ok(self.k),
        }
    }

    fn specs(&self) -> Result<(FunctionalSpec, ExtremalFamily), BohrError> {
        let family = self.family.build()?;
        let k = self.dilatation()?;
        Ok(match self.functional {
            FunctionalKind::Refined => (
                FunctionalSpec::Refined {
                    family,
                    p: self.p,
                    gamma: self.gamma,
                    lambda: self.lambda.weight(),
                },
                ExtremalFamily::Mobius { gamma: self.gamma },
            ),
            FunctionalKind::Harmonic => (
                FunctionalSpec::Harmonic { family, p: self.p },
                ExtremalFamily::Harmonic {
                    gamma: self.gamma,
                    k,
                },
            ),
            FunctionalKind::Subordination => (
                FunctionalSpec::Subordination { family },
                ExtremalFamily::Subordination { k },
            ),
        })
    }

    fn radius(&self, tol: f64) -> Result<f64, BohrError> {
        let family = self.family.build()?;
        let k = self.dilatation()?;
        Ok(match self.functional {
            FunctionalKind::Refined => analytic_radius(&family, self.p, self.gamma, tol)?,
            FunctionalKind::Harmonic => harmonic_radius(&family, self.p, self.gamma, k, tol)?,
            FunctionalKind::Subordination => subordination_radius(&family, k, tol)?,
        }
        .value)
    }
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub extremal: ExtremalArgs,
    /// Extremal parameter a ∈ (0, 1).
    #[arg(long = "at", default_value_t = 0.999)]
    pub at: f64,
    /// Radius at which to evaluate.
    #[arg(long)]
    pub r: f64,
    #[arg(long, default_value_t = 1e-14)]
    pub tol: f64,
}

#[derive(Debug, Clone, Args)]
pub struct SharpnessArgs {
    #[command(flatten)]
    pub extremal: ExtremalArgs,
    /// Radius to probe beyond; defaults to the solver radius.
    #[arg(long)]
    pub radius: Option<f64>,
    #[arg(long, default_value_t = 0.01)]
    pub eps: f64,
    /// Values of a, tried in order.
    #[arg(long = "a-grid", value_delimiter = ',', default_values_t = DEFAULT_A_GRID.to_vec())]
    pub a_grid: Vec<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct BoundaryArgs {
    /// γ as a value, list or grid.
    #[arg(long, default_value = "0")]
    pub gamma: String,
    #[arg(long, default_value_t = 64)]
    pub count: usize,
}

#[derive(Debug, Clone, Args)]
pub struct ConvolveArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub a: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub b: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub c: f64,
    /// Coefficients c_0, c_1, ... of the second series.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        required = true
    )]
    pub coeffs: Vec<f64>,
    /// Number of products to print; defaults to the length of --coeffs.
    #[arg(long)]
    pub n: Option<usize>,
}

/// Failure of a command, mapped onto an exit status.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Numerical(_) => EXIT_NUMERICAL,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Numerical(m) => m,
        }
    }
}

impl From<BohrError> for CliError {
    fn from(e: BohrError) -> Self {
        if e.is_numerical() {
            CliError::Numerical(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

/// A rendered report.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    /// Single-object reports are emitted as one JSON object, tables as arrays.
    pub single: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(usize),
    Text(String),
    Empty,
}

impl Cell {
    fn opt(v: Option<f64>) -> Cell {
        v.map_or(Cell::Empty, Cell::Num)
    }

    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => format_number(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => csv_quote(s),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) => round_significant(*x)
                .and_then(serde_json::Number::from_f64)
                .map_or(Value::Null, Value::Number),
            Cell::Int(i) => json!(i),
            Cell::Text(s) => json!(s),
            Cell::Empty => Value::Null,
        }
    }
}

impl Report {
    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let objects: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut m = Map::new();
                for (c, v) in self.columns.iter().zip(row) {
                    m.insert((*c).to_string(), v.json());
                }
                Value::Object(m)
            })
            .collect();
        let value = match (self.single, objects.len()) {
            (true, 1) => objects.into_iter().next().expect("one row"),
            _ => Value::Array(objects),
        };
        let mut s = serde_json::to_string_pretty(&value).expect("JSON values serialize");
        s.push('\n');
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

/// `%.12g`-style formatting: 12 significant digits, trailing zeros trimmed.
pub fn format_number(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= SIGNIFICANT_DIGITS as i32 {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{m}e{sign}{:02}", exp.abs());
    }
    let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exp).max(0) as usize;
    let s = trim_zeros(&format!("{:.*}", decimals, x));
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

fn round_significant(x: f64) -> Option<f64> {
    if !x.is_finite() {
        return None;
    }
    let v: f64 = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().ok()?;
    Some(if v == 0.0 { 0.0 } else { v })
}

fn csv_quote(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Parses `v`, `v1,v2,...` or `lo:hi:step`.
///
/// A grid contains `lo + m step` for `m = 0, 1, ...` up to and including
/// `hi` (with a rounding allowance of `1e-9 step`). Values are rounded to
/// 12 significant digits.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>, String> {
    let num = |s: &str| -> Result<f64, String> {
        let v: f64 = s
            .trim()
            .parse()
            .map_err(|_| format!("`{s}` is not a number"))?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(format!("`{s}` is not finite"))
        }
    };
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        [single] => single.split(',').map(num).collect(),
        [lo, hi, step] => {
            let (lo, hi, step) = (num(lo)?, num(hi)?, num(step)?);
            if step <= 0.0 {
                return Err(format!("grid step must be positive in `{spec}`"));
            }
            if hi < lo {
                return Err(format!("grid upper end is below the lower end in `{spec}`"));
            }
            let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
            if count > 100_000 {
                return Err(format!("grid `{spec}` has more than 100000 points"));
            }
            Ok((0..count)
                .map(|m| round_significant(lo + m as f64 * step).unwrap_or(lo))
                .collect())
        }
        _ => Err(format!(
            "`{spec}` is neither a value, a list nor lo:hi:step"
        )),
    }
}

fn grid(name: &str, spec: &str) -> Result<Vec<f64>, CliError> {
    parse_grid(spec).map_err(|e| CliError::Usage(format!("--{name}: {e}")))
}

fn scalar(name: &str, spec: &str) -> Result<f64, CliError> {
    match grid(name, spec)?.as_slice() {
        [v] => Ok(*v),
        _ => Err(CliError::Usage(format!(
            "--{name} takes a single value here"
        ))),
    }
}

fn check_range(name: &str, v: f64, ok: bool, expected: &str) -> Result<(), CliError> {
    if ok {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "--{name} = {v} is outside {expected}"
        )))
    }
}

fn validate_point(pt: &CatalogParams) -> Result<(), CliError> {
    check_range("gamma", pt.gamma, (0.0..1.0).contains(&pt.gamma), "[0, 1)")?;
    check_range("p", pt.p, pt.p > 0.0 && pt.p <= 2.0, "(0, 2]")?;
    check_range("k", pt.k, (0.0..=1.0).contains(&pt.k), "[0, 1]")?;
    check_range("big-k", pt.big_k, pt.big_k >= 1.0, "[1, inf)")?;
    check_range("y", pt.y, pt.y > 0.0, "(0, inf)")
}

pub const RADIUS_COLUMNS: [&str; 12] = [
    "case",
    "family",
    "p",
    "gamma",
    "k",
    "method",
    "value_closed",
    "value_bisect",
    "delta",
    "residual",
    "iterations",
    "flag",
];

/// Closed form matching a solver problem, when one is catalogued.
fn matching_closed_form(
    problem: Problem,
    family: &FamilyArgs,
    pt: &CatalogParams,
) -> Result<Option<(String, f64)>, BohrError> {
    let case = match (problem, family.family) {
        (Problem::Analytic, FamilyKind::Power) => Some(CatalogCase::App1),
        (Problem::Analytic, FamilyKind::Even) => Some(CatalogCase::App2),
        (Problem::Analytic, FamilyKind::Odd) => Some(CatalogCase::App3),
        (Problem::Analytic, FamilyKind::ShiftedLinear) if family.start <= 1 => {
            Some(CatalogCase::App4)
        }
        (Problem::Analytic, FamilyKind::PowerAlpha) if family.start <= 1 && family.alpha == 1.0 => {
            Some(CatalogCase::App5Alpha1)
        }
        (Problem::Harmonic, FamilyKind::Power) if pt.p == 1.0 => Some(CatalogCase::Cor41),
        (Problem::Harmonic, FamilyKind::Power) if pt.p == 2.0 => Some(CatalogCase::Cor42),
        (Problem::Hypergeom, _) if family.b == 1.0 && family.c == 1.0 && family.a > 0.0 => {
            let params = CatalogParams { y: family.a, ..*pt };
            let v = closed_form_radius(CatalogCase::Remark31, &params)?;
            return Ok(Some((CatalogCase::Remark31.id().into(), v)));
        }
        (Problem::Subordination, FamilyKind::Power) => {
            return Ok(Some((
                CatalogCase::QuasiSubordination.id().into(),
                1.0 / (3.0 + 2.0 * pt.k),
            )));
        }
        _ => None,
    };
    case.map(|c| Ok((c.id().to_string(), closed_form_radius(c, pt)?)))
        .transpose()
}

struct RadiusRow {
    case: String,
    family: String,
    p: Option<f64>,
    gamma: Option<f64>,
    k: Option<f64>,
    closed: Option<f64>,
    solved: crate::radii::RadiusResult,
}

impl RadiusRow {
    fn cells(&self) -> Vec<Cell> {
        let delta = self.closed.map(|c| (c - self.solved.value).abs());
        let method = if self.closed.is_some() {
            "both"
        } else {
            "bisection"
        };
        let flag = match delta {
            Some(d) if d > MISMATCH_TOL => "MISMATCH",
            _ => "",
        };
        vec![
            Cell::Text(self.case.clone()),
            Cell::Text(self.family.clone()),
            Cell::opt(self.p),
            Cell::opt(self.gamma),
            Cell::opt(self.k),
            Cell::Text(method.into()),
            Cell::opt(self.closed),
            Cell::Num(self.solved.value),
            Cell::opt(delta),
            Cell::Num(self.solved.residual),
            Cell::Int(self.solved.iterations),
            Cell::Text(flag.into()),
        ]
    }
}

fn catalog_row(case: CatalogCase, pt: &CatalogParams, tol: f64) -> Result<RadiusRow, BohrError> {
    let closed = closed_form_radius(case, pt)?;
    let solved = case.solve(pt, tol)?;
    let (p, k) = match case {
        CatalogCase::TheoremB => (Some(1.0), None),
        CatalogCase::Cor41 => (Some(1.0), Some(pt.k)),
        CatalogCase::Cor42 => (Some(2.0), Some(pt.k)),
        CatalogCase::QuasiSubordination => (None, Some(dilatation_from_k(pt.big_k)?)),
        _ => (Some(pt.p), None),
    };
    let gamma = match case {
        CatalogCase::QuasiSubordination => None,
        _ => Some(pt.gamma),
    };
    Ok(RadiusRow {
        case: case.id().into(),
        family: case.family(pt)?.label(),
        p,
        gamma,
        k,
        closed: Some(closed),
        solved,
    })
}

fn problem_row(args: &RadiusArgs, pt: &CatalogParams) -> Result<RadiusRow, BohrError> {
    let fa = &args.family;
    let (family_label, solved) = match args.problem {
        Problem::Hypergeom => {
            let label = WeightFamily::hypergeom(fa.a, fa.b, fa.c)?.label();
            (
                label,
                hypergeom_radius(fa.a, fa.b, fa.c, pt.p, pt.gamma, args.tol)?,
            )
        }
        problem => {
            let family = fa.build()?;
            let r = match problem {
                Problem::Analytic => analytic_radius(&family, pt.p, pt.gamma, args.tol)?,
                Problem::Harmonic => harmonic_radius(&family, pt.p, pt.gamma, pt.k, args.tol)?,
                _ => subordination_radius(&family, pt.k, args.tol)?,
            };
            (family.label(), r)
        }
    };
    let closed = matching_closed_form(args.problem, fa, pt)?;
    let uses = |on: bool, v: f64| on.then_some(v);
    Ok(RadiusRow {
        case: closed
            .as_ref()
            .map_or_else(|| "-".to_string(), |(id, _)| id.clone()),
        family: family_label,
        p: uses(args.problem != Problem::Subordination, pt.p),
        gamma: uses(args.problem != Problem::Subordination, pt.gamma),
        k: uses(
            matches!(args.problem, Problem::Harmonic | Problem::Subordination),
            pt.k,
        ),
        closed: closed.map(|(_, v)| v),
        solved,
    })
}

fn radius_points(args: &RadiusArgs, sweep: bool) -> Result<Vec<CatalogParams>, CliError> {
    let values = |name: &str, spec: &str| -> Result<Vec<f64>, CliError> {
        if sweep {
            grid(name, spec)
        } else {
            scalar(name, spec).map(|v| vec![v])
        }
    };
    let gammas = values("gamma", &args.gamma)?;
    let ps = values("p", &args.p)?;
    let ks = values("k", &args.k)?;
    let big_ks = values("big-k", &args.big_k)?;
    let ys = values("y", &args.y)?;
    let mut points = Vec::new();
    for &gamma in &gammas {
        for &p in &ps {
            for &k in &ks {
                for &big_k in &big_ks {
                    for &y in &ys {
                        let pt = CatalogParams {
                            gamma,
                            p,
                            k,
                            big_k,
                            y,
                        };
                        validate_point(&pt)?;
                        points.push(pt);
                    }
                }
            }
        }
    }
    Ok(points)
}

fn radius_report(args: &RadiusArgs, sweep: bool) -> Result<Report, CliError> {
    if !(args.tol.is_finite() && args.tol > 0.0) {
        return Err(CliError::Usage(format!(
            "--tol = {} must be positive",
            args.tol
        )));
    }
    let case = args
        .case
        .as_deref()
        .map(str::parse::<CatalogCase>)
        .transpose()?;
    let mut rows = Vec::new();
    for pt in radius_points(args, sweep)? {
        let row = match case {
            Some(c) => catalog_row(c, &pt, args.tol)?,
            None => problem_row(args, &pt)?,
        };
        rows.push(row.cells());
    }
    Ok(Report {
        columns: RADIUS_COLUMNS.to_vec(),
        rows,
        single: !sweep,
    })
}

fn functional_name(kind: FunctionalKind) -> &'static str {
    match kind {
        FunctionalKind::Refined => "refined",
        FunctionalKind::Harmonic => "harmonic",
        FunctionalKind::Subordination => "subordination",
    }
}

fn verify_report(args: &VerifyArgs) -> Result<Report, CliError> {
    let (functional, extremal) = args.extremal.specs()?;
    let member = extremal.member(args.at)?;
    let value = functional.evaluate(&member, args.r, args.tol)?;
    let threshold = functional.threshold(&member, args.r)?;
    let defect = functional.defect(&member, args.r)?;
    let status = if defect <= 0.0 { "pass" } else { "fail" };
    Ok(Report {
        columns: vec![
            "functional",
            "family",
            "a",
            "r",
            "value",
            "threshold",
            "defect",
            "status",
        ],
        rows: vec![vec![
            Cell::Text(functional_name(args.extremal.functional).into()),
            Cell::Text(args.extremal.family.build()?.label()),
            Cell::Num(args.at),
            Cell::Num(args.r),
            Cell::Num(value),
            Cell::Num(threshold),
            Cell::Num(defect),
            Cell::Text(status.into()),
        ]],
        single: true,
    })
}

fn sharpness_report(args: &SharpnessArgs) -> Result<Report, CliError> {
    let (functional, extremal) = args.extremal.specs()?;
    let radius = match args.radius {
        Some(r) => r,
        None => args.extremal.radius(DEFAULT_TOL)?,
    };
    let witness = sharpness_probe(radius, &functional, &extremal, args.eps, &args.a_grid)?;
    let row = match witness {
        Some(w) => vec![
            Cell::Text(functional_name(args.extremal.functional).into()),
            Cell::Num(radius),
            Cell::Num(w.r),
            Cell::Num(w.a),
            Cell::Num(w.functional_value),
            Cell::Num(w.threshold),
            Cell::Num(w.defect),
            Cell::Text("witness".into()),
        ],
        None => vec![
            Cell::Text(functional_name(args.extremal.functional).into()),
            Cell::Num(radius),
            Cell::Num(radius + args.eps),
            Cell::Empty,
            Cell::Empty,
            Cell::Empty,
            Cell::Empty,
            Cell::Text("inconclusive".into()),
        ],
    };
    Ok(Report {
        columns: vec![
            "functional",
            "radius",
            "r",
            "a",
            "functional_value",
            "threshold",
            "defect",
            "status",
        ],
        rows: vec![row],
        single: true,
    })
}

fn boundary_report(args: &BoundaryArgs) -> Result<Report, CliError> {
    let mut rows = Vec::new();
    for gamma in grid("gamma", &args.gamma)? {
        check_range("gamma", gamma, (0.0..1.0).contains(&gamma), "[0, 1)")?;
        for (i, (x, y)) in boundary_points(gamma, args.count)?.into_iter().enumerate() {
            rows.push(vec![
                Cell::Num(gamma),
                Cell::Int(i),
                Cell::Num(x),
                Cell::Num(y),
            ]);
        }
    }
    Ok(Report {
        columns: vec!["gamma", "index", "x", "y"],
        rows,
        single: false,
    })
}

fn convolve_report(args: &ConvolveArgs) -> Result<Report, CliError> {
    let params = HypergeomParams::new(args.a, args.b, args.c)?;
    let n = args.n.unwrap_or(args.coeffs.len());
    let rows = (0..n)
        .map(|i| {
            let g = params.coefficient(i);
            let c = args.coeffs.get(i).copied().unwrap_or(0.0);
            vec![Cell::Int(i), Cell::Num(g), Cell::Num(c), Cell::Num(g * c)]
        })
        .collect();
    Ok(Report {
        columns: vec!["n", "gamma_n", "coefficient", "product"],
        rows,
        single: false,
    })
}

/// Builds the report for a parsed command line.
pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Radius(a) => radius_report(a, false),
        Command::Table(a) => radius_report(a, true),
        Command::Verify(a) => verify_report(a),
        Command::Sharpness(a) => sharpness_report(a),
        Command::Boundary(a) => boundary_report(a),
        Command::Convolve(a) => convolve_report(a),
    }
}

/// Parses `args`, runs the command and writes the report; returns the exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(stdout, "{text}")
            } else {
                write!(stderr, "{text}")
            };
            return code;
        }
    };
    let report = match execute(&cli) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message());
            return e.exit_code();
        }
    };
    let text = report.render(cli.format);
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display())),
        None => stdout.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    match written {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: cannot write report: {e}");
            EXIT_USAGE
        }
    }
}
