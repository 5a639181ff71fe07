//! Command-line front end: problem files in, JSON reports or CSV traces out.
//!
//! Exit codes: 0 success, 1 other failure, 2 inadmissible tuple,
//! 3 invalid input, 4 no oriented triple for `reduce`.

use std::ffi::OsString;
use std::f64::consts::TAU;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize, Serializer};
use serde_json::value::RawValue;

use crate::blaschke::{factorize, is_blaschke_certificate, unimodularity_check, winding_degree, RationalFunction};
use crate::error::Error;
use crate::generate::{dominant_diagonal, random_problem, ProblemKind};
use crate::parametrization::{attainment, interpolant_with_tol, node_residuals, InterpolantFamily, DEFAULT_DELTA_TOL};
use crate::pick::{condition_estimate, pick_matrix};
use crate::problem::{is_constant_problem, sort_ccw, BoundaryData, GammaTuple};
use crate::reduction::{
    exists_degree_n_minus_2, min_degree_candidate, min_degree_lower_bound, orientation_evidence, reducing_gamma,
    OrientationReport,
};

/// Tolerances an emitted interpolant is checked against.
pub const REPORT_RESIDUAL_TOL: f64 = 1e-9;
pub const REPORT_UNIMODULAR_TOL: f64 = 1e-9;
const UNIMODULAR_SAMPLES: usize = 1024;

#[derive(Parser)]
#[command(name = "boundary-blaschke", version, about = "Boundary interpolation by finite Blaschke products")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the interpolant for one parameter tuple and report on it.
    Solve(SolveArgs),
    /// Find an interpolant of degree at most n - 2, or show none exists.
    Reduce {
        problem: PathBuf,
        #[arg(long, default_value_t = DEFAULT_DELTA_TOL)]
        delta_tol: f64,
    },
    /// Sample the interpolant on the unit circle as CSV.
    Trace {
        #[command(flatten)]
        solve: SolveArgs,
        #[arg(long, default_value_t = 1024)]
        samples: usize,
    },
    /// Rank lower bound on the degree and the candidate of that degree.
    Mindegree { problem: PathBuf },
    /// Print a random problem file.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Kind::Random)]
        kind: Kind,
    },
}

#[derive(Args)]
struct SolveArgs {
    problem: PathBuf,
    /// `auto` or a comma-separated list of n - 1 positive values.
    #[arg(long, default_value = "auto")]
    gamma: String,
    #[arg(long, default_value_t = DEFAULT_DELTA_TOL)]
    delta_tol: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Random,
    FixedPoint,
    Reversed,
}

/// Result of one CLI invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Lib(Error),
    Input(String),
    Io(String),
    NoTriple(Vec<OrientationReport>),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(stdout) => Outcome { code: 0, stdout, stderr: String::new() },
        Err(f) => failure_outcome(f),
    }
}

fn dispatch(cmd: Command) -> Result<String, Failure> {
    match cmd {
        Command::Solve(a) => {
            let data = load(&a.problem)?;
            let report = solve_report(&data, &a.gamma, a.delta_tol)?;
            Ok(to_json(&report))
        }
        Command::Reduce { problem, delta_tol } => reduce(&load(&problem)?, delta_tol),
        Command::Trace { solve, samples } => {
            if samples < 16 {
                return Err(Failure::Input(format!("--samples must be at least 16, got {samples}")));
            }
            let data = load(&solve.problem)?;
            let f = match is_constant_problem(&data) {
                Some(w) => RationalFunction::constant(w.value()),
                None => {
                    let gamma = parse_gamma(&solve.gamma, &data)?;
                    interpolant_with_tol(&data, &gamma, solve.delta_tol)?.f
                }
            };
            trace_csv(&f, samples)
        }
        Command::Mindegree { problem } => Ok(to_json(&mindegree(&load(&problem)?)?)),
        Command::Generate { n, seed, kind } => {
            if n < 2 {
                return Err(Failure::Input("--n must be at least 2".into()));
            }
            let kind = match kind {
                Kind::Random => ProblemKind::Random,
                Kind::FixedPoint => ProblemKind::FixedPoint,
                Kind::Reversed => ProblemKind::Reversed,
            };
            let data = random_problem(&mut ChaCha8Rng::seed_from_u64(seed), n, kind);
            let pts = |v: Vec<Complex64>| v.into_iter().map(Cx::from).collect::<Vec<_>>();
            let file = ProblemOut {
                nodes: pts((0..n).map(|i| data.t(i)).collect()),
                targets: pts((0..n).map(|i| data.w(i)).collect()),
            };
            Ok(to_json(&file))
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotAdmissible { .. } => 2,
        Error::Validation(_) | Error::GammaLength { .. } | Error::NonPositiveGamma { .. } | Error::ConstantProblem => 3,
        Error::NoOrientedTriple => 4,
        _ => 1,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Validation(_) => "Validation",
        Error::NotPositiveDefinite { .. } => "NotPositiveDefinite",
        Error::NotHermitian { .. } => "NotHermitian",
        Error::Singular => "Singular",
        Error::DegenerateInput => "DegenerateInput",
        Error::NotAdmissible { .. } => "NotAdmissible",
        Error::GammaLength { .. } => "GammaLength",
        Error::NonPositiveGamma { .. } => "NonPositiveGamma",
        Error::PoleAtPoint { .. } => "PoleAtPoint",
        Error::PoleAtNode { .. } => "PoleAtNode",
        Error::NotUnimodular { .. } => "NotUnimodular",
        Error::NegativeDerivative { .. } => "NegativeDerivative",
        Error::NotBlaschke(_) => "NotBlaschke",
        Error::NotASolution { .. } => "NotASolution",
        Error::ConstantProblem => "ConstantProblem",
        Error::NoOrientedTriple => "NoOrientedTriple",
        Error::DuplicatePoint(..) => "DuplicatePoint",
        Error::PatternMismatch(_) => "PatternMismatch",
        Error::NoHyperbolicPoint => "NoHyperbolicPoint",
        Error::TooLarge { .. } => "TooLarge",
        Error::NumericalFailure(_) => "NumericalFailure",
    }
}

#[derive(Serialize)]
struct ErrorPayload {
    error: &'static str,
    message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    violations: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    evidence: Option<Vec<TripleJson>>,
}

fn failure_outcome(f: Failure) -> Outcome {
    let (code, payload) = match f {
        Failure::Lib(e) => (
            exit_code(&e),
            ErrorPayload {
                error: error_kind(&e),
                message: e.to_string(),
                violations: match &e {
                    Error::Validation(v) => Some(v.violations.iter().map(|x| x.to_string()).collect()),
                    _ => None,
                },
                evidence: None,
            },
        ),
        Failure::Input(m) => (3, ErrorPayload { error: "InvalidInput", message: m, violations: None, evidence: None }),
        Failure::Io(m) => (1, ErrorPayload { error: "Io", message: m, violations: None, evidence: None }),
        Failure::NoTriple(ev) => (
            4,
            ErrorPayload {
                error: "NoOrientedTriple",
                message: Error::NoOrientedTriple.to_string(),
                violations: None,
                evidence: Some(ev.iter().map(TripleJson::from).collect()),
            },
        ),
    };
    Outcome { code, stdout: String::new(), stderr: to_json(&payload) }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report types serialize");
    s.push('\n');
    s
}

/// A real number written with 17 significant digits; non-finite values
/// become `null`.
#[derive(Debug, Clone, Copy)]
struct Num(f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return s.serialize_none();
        }
        let raw = RawValue::from_string(format!("{:.16e}", self.0)).map_err(serde::ser::Error::custom)?;
        raw.serialize(s)
    }
}

#[derive(Serialize)]
struct Cx {
    re: Num,
    im: Num,
}

impl From<Complex64> for Cx {
    fn from(z: Complex64) -> Self {
        Cx { re: Num(z.re), im: Num(z.im) }
    }
}

fn cxs(v: &[Complex64]) -> Vec<Cx> {
    v.iter().map(|&z| Cx::from(z)).collect()
}

#[derive(Serialize)]
struct ProblemOut {
    nodes: Vec<Cx>,
    targets: Vec<Cx>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PointIn {
    Cartesian { re: f64, im: f64 },
    Tagged(String),
}

#[derive(Deserialize)]
struct ProblemIn {
    nodes: Vec<PointIn>,
    targets: Vec<PointIn>,
}

fn point(p: &PointIn) -> Result<Complex64, Failure> {
    match p {
        PointIn::Cartesian { re, im } => Ok(Complex64::new(*re, *im)),
        PointIn::Tagged(s) => {
            let angle = s
                .strip_prefix("angle:")
                .and_then(|a| a.trim().parse::<f64>().ok())
                .filter(|a| a.is_finite())
                .ok_or_else(|| Failure::Input(format!("cannot read point {s:?}; expected \"angle:<radians>\"")))?;
            Ok(Complex64::from_polar(1.0, angle))
        }
    }
}

/// Parses a problem file body: `{"nodes": [...], "targets": [...]}` with
/// points as `{"re": x, "im": y}` or `"angle:theta"`.
pub fn parse_problem(text: &str) -> Result<BoundaryData, Error> {
    match parse_problem_inner(text) {
        Ok(d) => Ok(d),
        Err(Failure::Lib(e)) => Err(e),
        Err(Failure::Input(m)) | Err(Failure::Io(m)) => Err(Error::NumericalFailure(m)),
        Err(Failure::NoTriple(_)) => Err(Error::NoOrientedTriple),
    }
}

fn parse_problem_inner(text: &str) -> Result<BoundaryData, Failure> {
    let raw: ProblemIn = serde_json::from_str(text).map_err(|e| Failure::Input(format!("bad problem file: {e}")))?;
    let nodes = raw.nodes.iter().map(point).collect::<Result<Vec<_>, _>>()?;
    let targets = raw.targets.iter().map(point).collect::<Result<Vec<_>, _>>()?;
    Ok(BoundaryData::new(&nodes, &targets)?)
}

fn load(path: &PathBuf) -> Result<BoundaryData, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    parse_problem_inner(&text)
}

fn parse_gamma(text: &str, data: &BoundaryData) -> Result<GammaTuple, Failure> {
    if text.trim() == "auto" {
        return Ok(GammaTuple::uniform(data.n() - 1, dominant_diagonal(data))?);
    }
    let vals = text
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Failure::Input(format!("cannot read --gamma {text:?}: {e}")))?;
    let g = GammaTuple::new(vals)?;
    g.check_for(data)?;
    Ok(g)
}

#[derive(Serialize)]
struct Coeffs {
    numerator: Vec<Cx>,
    denominator: Vec<Cx>,
}

impl From<&RationalFunction> for Coeffs {
    fn from(f: &RationalFunction) -> Self {
        let g = f.normalized();
        Coeffs { numerator: cxs(g.numerator().coeffs()), denominator: cxs(g.denominator().coeffs()) }
    }
}

#[derive(Serialize)]
struct FactorJson {
    constant: Cx,
    zeros: Vec<Cx>,
}

#[derive(Serialize)]
struct DerivativeJson {
    index: usize,
    attained: bool,
    derivative: Num,
    expected: Num,
}

#[derive(Serialize)]
struct DeltaJson {
    values: Vec<Cx>,
    zero_set: Vec<usize>,
    threshold: Num,
}

#[derive(Serialize)]
struct Certificates {
    max_residual: Num,
    unimodularity_deviation: Num,
    schwarz_pick_psd: Option<bool>,
    degree_agrees: bool,
    valid: bool,
}

#[derive(Serialize)]
struct TripleJson {
    triple: [usize; 3],
    g_nodes: Num,
    g_targets: Num,
    same_orientation: bool,
}

impl From<&OrientationReport> for TripleJson {
    fn from(r: &OrientationReport) -> Self {
        TripleJson {
            triple: [r.triple.0, r.triple.1, r.triple.2],
            g_nodes: Num(r.g_nodes),
            g_targets: Num(r.g_targets),
            same_orientation: r.same_orientation,
        }
    }
}

#[derive(Serialize)]
struct ReductionJson {
    /// Original 1-based indices in the order used for the construction.
    order: Vec<usize>,
    triple: [usize; 3],
    /// Tuple by original index; `null` at the node taken last.
    gamma_by_original_index: Vec<Option<Num>>,
}

#[derive(Serialize)]
struct SolveReport {
    n: usize,
    constant: bool,
    gamma: Vec<Num>,
    interpolant: Coeffs,
    factorization: Option<FactorJson>,
    predicted_degree: usize,
    winding_degree: Option<i64>,
    min_degree_lower_bound: usize,
    residuals: Vec<Num>,
    derivatives: Vec<DerivativeJson>,
    delta: Option<DeltaJson>,
    condition_estimate: Option<Num>,
    certificates: Certificates,
    #[serde(skip_serializing_if = "Option::is_none")]
    reduction: Option<ReductionJson>,
}

fn solve_report(data: &BoundaryData, gamma: &str, delta_tol: f64) -> Result<SolveReport, Failure> {
    if let Some(w) = is_constant_problem(data) {
        return Ok(report_for(data, &RationalFunction::constant(w.value()), None)?);
    }
    let g = parse_gamma(gamma, data)?;
    let fam = interpolant_with_tol(data, &g, delta_tol)?;
    Ok(report_for(data, &fam.f, Some(&fam))?)
}

fn report_for(data: &BoundaryData, f: &RationalFunction, fam: Option<&InterpolantFamily>) -> Result<SolveReport, Error> {
    let residuals = node_residuals(f, data)?;
    let max_residual = residuals.iter().copied().fold(0.0, f64::max);
    let deviation = unimodularity_check(f, UNIMODULAR_SAMPLES);
    let winding = winding_degree(f).ok();
    let predicted = fam.map_or(0, |m| m.predicted_degree);
    let degree_agrees = winding == Some(predicted as i64);
    let derivatives = match fam {
        Some(m) => attainment(m)?
            .into_iter()
            .map(|a| DerivativeJson {
                index: a.index,
                attained: a.attained,
                derivative: Num(a.derivative),
                expected: Num(a.expected),
            })
            .collect(),
        None => Vec::new(),
    };
    let condition = match fam {
        Some(m) => Some(Num(condition_estimate(&pick_matrix(data, &m.gamma)?))),
        None => None,
    };
    Ok(SolveReport {
        n: data.n(),
        constant: fam.is_none(),
        gamma: fam.map_or_else(Vec::new, |m| m.gamma.values().iter().map(|&x| Num(x)).collect()),
        interpolant: Coeffs::from(f),
        factorization: factorize(f).ok().map(|b| FactorJson { constant: b.constant().value().into(), zeros: cxs(b.zeros()) }),
        predicted_degree: predicted,
        winding_degree: winding,
        min_degree_lower_bound: min_degree_lower_bound(data),
        residuals: residuals.iter().map(|&r| Num(r)).collect(),
        derivatives,
        delta: fam.map(|m| DeltaJson {
            values: cxs(m.delta.values()),
            zero_set: m.delta.zero_set().iter().map(|i| i + 1).collect(),
            threshold: Num(m.delta.tol()),
        }),
        condition_estimate: condition,
        certificates: Certificates {
            max_residual: Num(max_residual),
            unimodularity_deviation: Num(deviation),
            schwarz_pick_psd: is_blaschke_certificate(f, data).ok(),
            degree_agrees,
            valid: max_residual <= REPORT_RESIDUAL_TOL && deviation <= REPORT_UNIMODULAR_TOL && degree_agrees,
        },
        reduction: None,
    })
}

fn reduce(data: &BoundaryData, delta_tol: f64) -> Result<String, Failure> {
    if is_constant_problem(data).is_some() {
        return Err(Error::ConstantProblem.into());
    }
    let (sorted, sort_perm) = sort_ccw(data);
    if exists_degree_n_minus_2(&sorted)?.is_none() {
        let ev = orientation_evidence(&sorted)
            .into_iter()
            .map(|mut r| {
                let (i, j, k) = r.triple;
                let mut idx = [sort_perm[i - 1] + 1, sort_perm[j - 1] + 1, sort_perm[k - 1] + 1];
                idx.sort_unstable();
                r.triple = (idx[0], idx[1], idx[2]);
                r
            })
            .collect();
        return Err(Failure::NoTriple(ev));
    }
    let red = reducing_gamma(&sorted)?;
    let fam = interpolant_with_tol(&red.data, &red.gamma, delta_tol)?;
    let mut report = report_for(&red.data, &fam.f, Some(&fam))?;
    let order: Vec<usize> = red.perm.iter().map(|&p| sort_perm[p] + 1).collect();
    let (i, j, k) = red.triple.triple;
    let by_sorted = red.original_gamma();
    let mut by_original = vec![None; data.n()];
    for (s, g) in by_sorted.into_iter().enumerate() {
        by_original[sort_perm[s]] = g.map(Num);
    }
    report.reduction = Some(ReductionJson {
        order,
        triple: [sort_perm[i - 1] + 1, sort_perm[j - 1] + 1, sort_perm[k - 1] + 1],
        gamma_by_original_index: by_original,
    });
    Ok(to_json(&report))
}

fn trace_csv(f: &RationalFunction, samples: usize) -> Result<String, Failure> {
    let mut out = String::from("theta,re_f,im_f,abs_f,arg_f\n");
    let mut arg = 0.0;
    let mut prev: Option<Complex64> = None;
    for k in 0..samples {
        let theta = TAU * k as f64 / samples as f64;
        let v = f.eval(Complex64::from_polar(1.0, theta))?;
        arg = match prev {
            None => v.arg(),
            Some(p) => arg + (v / p).arg(),
        };
        prev = Some(v);
        out.push_str(&format!("{},{},{},{},{}\n", theta, v.re, v.im, v.norm(), arg));
    }
    Ok(out)
}

#[derive(Serialize)]
struct MindegreeReport {
    q: usize,
    candidate: Option<Coeffs>,
    certified: Option<bool>,
    winding_degree: Option<i64>,
    advisory: &'static str,
}

fn mindegree(data: &BoundaryData) -> Result<MindegreeReport, Failure> {
    let q = min_degree_lower_bound(data);
    let cand = min_degree_candidate(data)?;
    Ok(MindegreeReport {
        q,
        winding_degree: cand.as_ref().and_then(|c| winding_degree(&c.f).ok()),
        certified: cand.as_ref().map(|c| c.certified),
        candidate: cand.as_ref().map(|c| Coeffs::from(&c.f)),
        advisory: "no rational interpolant has degree below q; one of degree q is unique when it exists, \
                   and need not be a Blaschke product",
    })
}
