//! Command-line front-end.
//!
//! Exit codes: 0 success, 1 I/O, parse or usage errors, 2 support
//! violations, forbidden evaluation points and degenerate divisions,
//! 3 invalid perturbation specs, side mismatches and failed verification,
//! 4 unknown verification suite.

pub mod verify;

use std::ffi::OsString;
use std::path::{Path as FsPath, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::io::{self, fmt_f64, IoError};
use crate::numeric::max_deviation_c;
use crate::oprl::RealRecurrence;
use crate::opuc::VerblunskySeq;
use crate::perturb::{self, Path, PerturbationSpec, Side};
use crate::spectral::{self, CFunctionHandle, SFunctionHandle, DEFAULT_DEPTH};
use crate::szego::{geronimus_forward, geronimus_inverse};
use crate::Error;

use verify::{Suite, VerifyConfig};

pub const DEPTH_ENV: &str = "ORTHO_SZEGO_DEPTH";

#[derive(Debug, Parser)]
#[command(name = "ortho-szego", version, about = "OPRL/OPUC coefficient transforms across the Szegő map")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    /// Verblunsky coefficients to recurrence coefficients.
    Fwd,
    /// Recurrence coefficients to Verblunsky coefficients.
    Inv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Line,
    Circle,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Line => Side::Line,
            SideArg::Circle => Side::Circle,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Geronimus relations in either direction.
    Geronimus {
        #[arg(value_enum)]
        direction: Direction,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Number of recurrence pairs (default: as many as the input allows).
        #[arg(long)]
        n: Option<usize>,
    },
    /// Apply perturbations read from a JSON spec file.
    Perturb {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, value_enum)]
        side: SideArg,
        /// Number of pairs for the `--both-paths` comparison.
        #[arg(long)]
        n: Option<usize>,
        /// Also map each perturbation across the Szegő map by the closed
        /// form and by brute force, and report their deviation.
        #[arg(long)]
        both_paths: bool,
    },
    /// Run a verification suite.
    Verify {
        suite: String,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Evaluate S (line) or F (circle) convergents at points.
    Eval {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        side: SideArg,
        /// Comma-separated points such as `2,-1.5,0.3+0.1i`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        points: Vec<String>,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Evaluate the corollary formulas on their Chebyshev data sets.
    Fixtures {
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Io(IoError),
    Compute(Error),
    Mismatch(String),
    VerifyFailed,
    UnknownSuite(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) | Failure::Io(_) => 1,
            Failure::Compute(e) => error_exit_code(e),
            Failure::Mismatch(_) | Failure::VerifyFailed => 3,
            Failure::UnknownSuite(_) => 4,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "{m}"),
            Failure::Io(e) => write!(f, "{e}"),
            Failure::Compute(e) => write!(f, "{e}"),
            Failure::Mismatch(m) => write!(f, "{m}"),
            Failure::VerifyFailed => write!(f, "verification failed"),
            Failure::UnknownSuite(s) => write!(
                f,
                "unknown suite '{s}' (expected one of: {})",
                Suite::ALL.map(Suite::name).join(", ")
            ),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure::Io(e)
    }
}

pub fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::SupportViolation { .. }
        | Error::ForbiddenPoint { .. }
        | Error::DivisionDegenerate { .. }
        | Error::PoleHit { .. }
        | Error::DenominatorVanishes { .. } => 2,
        Error::InvalidSpec(_)
        | Error::InvalidEta { .. }
        | Error::InvalidXi { .. }
        | Error::InvalidPrepend { .. } => 3,
        Error::InsufficientCoefficients { .. }
        | Error::NonPositiveD { .. }
        | Error::ZeroArgument
        | Error::ComplexAlpha { .. }
        | Error::AlphaOutOfRange { .. } => 1,
    }
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match execute(cli.command) {
        Ok(()) => 0,
        Err(failure) => {
            eprintln!("error: {failure}");
            failure.exit_code()
        }
    }
}

fn resolve_depth(arg: Option<usize>) -> Result<usize, Failure> {
    let depth = match arg {
        Some(d) => d,
        None => match std::env::var(DEPTH_ENV) {
            Ok(raw) => raw
                .trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("{DEPTH_ENV}={raw} is not a count")))?,
            Err(_) => DEFAULT_DEPTH,
        },
    };
    if depth == 0 {
        return Err(Failure::Usage("depth must be >= 1".into()));
    }
    Ok(depth)
}

pub fn execute(command: Command) -> Result<(), Failure> {
    match command {
        Command::Geronimus {
            direction,
            input,
            out,
            n,
        } => cmd_geronimus(direction, &input, out.as_deref(), n),
        Command::Perturb {
            input,
            out,
            spec,
            side,
            n,
            both_paths,
        } => cmd_perturb(&input, out.as_deref(), &spec, side.into(), n, both_paths),
        Command::Verify {
            suite,
            tol,
            seed,
            depth,
        } => cmd_verify(&suite, tol, seed, depth),
        Command::Eval {
            input,
            out,
            side,
            points,
            depth,
            format,
        } => cmd_eval(&input, out.as_deref(), side.into(), &points, depth, format),
        Command::Fixtures { out, depth, format } => cmd_fixtures(out.as_deref(), depth, format),
    }
}

fn emit<T: Serialize + ?Sized>(out: Option<&FsPath>, value: &T) -> Result<(), Failure> {
    let text = io::to_json(value).map_err(|e| Failure::Usage(e.to_string()))?;
    io::write_text(out, &text)?;
    Ok(())
}

pub fn cmd_geronimus(
    direction: Direction,
    input: &FsPath,
    out: Option<&FsPath>,
    n: Option<usize>,
) -> Result<(), Failure> {
    match direction {
        Direction::Fwd => {
            let vs: VerblunskySeq = io::read_json(input)?;
            let rc = geronimus_forward(&vs, n.unwrap_or(vs.len() / 2))?;
            emit(out, &rc)
        }
        Direction::Inv => {
            let rc: RealRecurrence = io::read_json(input)?;
            let vs = geronimus_inverse(&rc, n.unwrap_or(rc.len()))?;
            emit(out, &vs)
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum SpecFile {
    Many(Vec<PerturbationSpec>),
    One(PerturbationSpec),
}

#[derive(Serialize)]
#[serde(untagged)]
enum Coefficients {
    Line(RealRecurrence),
    Circle(VerblunskySeq),
}

#[derive(Serialize)]
struct PathComparison {
    spec: PerturbationSpec,
    n: usize,
    theorem: Coefficients,
    oracle: Coefficients,
    max_deviation: f64,
}

#[derive(Serialize)]
struct BothPaths {
    result: Coefficients,
    paths: Vec<PathComparison>,
}

fn default_line_n(rc: &RealRecurrence, spec: &PerturbationSpec) -> usize {
    match spec {
        PerturbationSpec::Associated { k } => rc.len().saturating_sub(*k),
        PerturbationSpec::AntiAssociated { k, .. } => rc.len() + k,
        _ => rc.len(),
    }
}

fn default_circle_n(vs: &VerblunskySeq, spec: &PerturbationSpec) -> usize {
    let len = vs.len();
    match spec {
        PerturbationSpec::Associated { k } => len.saturating_sub(k + 1) / 2,
        PerturbationSpec::AntiAssociated { k, .. } => (len + k) / 2,
        PerturbationSpec::Sieve { ell } => len * ell / 2,
        _ => len / 2,
    }
}

fn rc_flat(rc: &RealRecurrence) -> Vec<Complex64> {
    rc.b_coeffs()
        .iter()
        .chain(rc.d_coeffs())
        .map(|&v| Complex64::new(v, 0.0))
        .collect()
}

pub fn cmd_perturb(
    input: &FsPath,
    out: Option<&FsPath>,
    spec_path: &FsPath,
    side: Side,
    n: Option<usize>,
    both_paths: bool,
) -> Result<(), Failure> {
    let specs = match io::read_json::<SpecFile>(spec_path)? {
        SpecFile::Many(v) => v,
        SpecFile::One(s) => vec![s],
    };
    for spec in &specs {
        spec.validate()?;
        if !spec.accepts(side) {
            return Err(Failure::Mismatch(format!(
                "{spec:?} does not act on the {} side",
                if side == Side::Line { "line" } else { "circle" }
            )));
        }
    }
    let mut comparisons = Vec::new();
    let result = match side {
        Side::Line => {
            let mut rc: RealRecurrence = io::read_json(input)?;
            for spec in &specs {
                if both_paths {
                    let m = n.unwrap_or_else(|| default_line_n(&rc, spec));
                    let th = perturb::line_spec_to_verblunsky(&rc, spec, m, Path::Theorem)?;
                    let or = perturb::line_spec_to_verblunsky(&rc, spec, m, Path::Oracle)?;
                    comparisons.push(PathComparison {
                        spec: spec.clone(),
                        n: m,
                        max_deviation: max_deviation_c(th.as_slice(), or.as_slice()),
                        theorem: Coefficients::Circle(th),
                        oracle: Coefficients::Circle(or),
                    });
                }
                rc = perturb::apply_line(&rc, spec)?;
            }
            Coefficients::Line(rc)
        }
        Side::Circle => {
            let mut vs: VerblunskySeq = io::read_json(input)?;
            for spec in &specs {
                if both_paths {
                    let m = n.unwrap_or_else(|| default_circle_n(&vs, spec));
                    let th = perturb::circle_spec_to_recurrence(&vs, spec, m, Path::Theorem)?;
                    let or = perturb::circle_spec_to_recurrence(&vs, spec, m, Path::Oracle)?;
                    comparisons.push(PathComparison {
                        spec: spec.clone(),
                        n: m,
                        max_deviation: max_deviation_c(&rc_flat(&th), &rc_flat(&or)),
                        theorem: Coefficients::Line(th),
                        oracle: Coefficients::Line(or),
                    });
                }
                vs = perturb::apply_circle(&vs, spec)?;
            }
            Coefficients::Circle(vs)
        }
    };
    if both_paths {
        emit(
            out,
            &BothPaths {
                result,
                paths: comparisons,
            },
        )
    } else {
        emit(out, &result)
    }
}

pub fn cmd_verify(suite: &str, tol: Option<f64>, seed: u64, depth: Option<usize>) -> Result<(), Failure> {
    let suite = Suite::from_str(suite).map_err(Failure::UnknownSuite)?;
    if let Some(t) = tol {
        if !(t > 0.0) {
            return Err(Failure::Usage(format!("--tol {t} must be > 0")));
        }
    }
    let cfg = VerifyConfig {
        tol,
        seed,
        depth: resolve_depth(depth)?,
    };
    let report = verify::run_suite(suite, &cfg);
    io::write_text(None, &report.render(seed))?;
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::VerifyFailed)
    }
}

fn parse_point(raw: &str) -> Result<Complex64, Failure> {
    let trimmed = raw.trim();
    Complex64::from_str(trimmed).map_err(|_| Failure::Usage(format!("cannot parse point '{trimmed}'")))
}

#[derive(Serialize)]
struct EvalRow {
    point: Complex64,
    value: Complex64,
    error_estimate: f64,
}

pub fn cmd_eval(
    input: &FsPath,
    out: Option<&FsPath>,
    side: Side,
    points: &[String],
    depth: Option<usize>,
    format: Format,
) -> Result<(), Failure> {
    let points: Vec<Complex64> = points.iter().map(|p| parse_point(p)).collect::<Result<_, _>>()?;
    let depth = resolve_depth(depth)?;
    let rows: Vec<EvalRow> = match side {
        Side::Line => {
            let rc: RealRecurrence = io::read_json(input)?;
            let d = clamp_depth(depth, rc.len());
            let h = SFunctionHandle::new(rc, d)?;
            points
                .iter()
                .map(|&x| h.estimate(x))
                .map(|e| e.map(|e| (e.value, e.error)))
                .zip(&points)
                .map(|(r, &p)| r.map(|(value, err)| EvalRow { point: p, value, error_estimate: err }))
                .collect::<Result<_, _>>()?
        }
        Side::Circle => {
            let vs: VerblunskySeq = io::read_json(input)?;
            let d = clamp_depth(depth, vs.len());
            let h = CFunctionHandle::new(vs, d)?;
            points
                .iter()
                .map(|&z| {
                    h.estimate(z).map(|e| EvalRow {
                        point: z,
                        value: e.value,
                        error_estimate: e.error,
                    })
                })
                .collect::<Result<_, _>>()?
        }
    };
    match format {
        Format::Json => emit(out, &rows),
        Format::Csv => {
            let table: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        fmt_f64(r.point.re),
                        fmt_f64(r.point.im),
                        fmt_f64(r.value.re),
                        fmt_f64(r.value.im),
                        fmt_f64(r.error_estimate),
                    ]
                })
                .collect();
            let text = io::to_csv(
                &["point_re", "point_im", "value_re", "value_im", "error_estimate"],
                &table,
            )?;
            io::write_text(out, &text)?;
            Ok(())
        }
    }
}

fn clamp_depth(requested: usize, available: usize) -> usize {
    if available < requested {
        eprintln!("note: depth {requested} reduced to {available}, the number of available coefficients");
    }
    requested.min(available).max(1)
}

pub fn cmd_fixtures(out: Option<&FsPath>, depth: Option<usize>, format: Format) -> Result<(), Failure> {
    let rows = spectral::corollary_fixtures(resolve_depth(depth)?)?;
    match format {
        Format::Json => emit(out, &rows),
        Format::Csv => {
            let table: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.name.clone(),
                        r.checked.to_string(),
                        fmt_f64(r.row.point.re),
                        fmt_f64(r.row.point.im),
                        fmt_f64(r.row.lhs.re),
                        fmt_f64(r.row.lhs.im),
                        fmt_f64(r.row.rhs.re),
                        fmt_f64(r.row.rhs.im),
                        fmt_f64(r.row.residual),
                    ]
                })
                .collect();
            let header = [
                "name", "checked", "point_re", "point_im", "lhs_re", "lhs_im", "rhs_re", "rhs_im",
                "residual",
            ];
            io::write_text(out, &io::to_csv(&header, &table)?)?;
            Ok(())
        }
    }
}
