//! Commands behind the `sphere-closure` binary.
//!
//! Exit codes: 0 success, 2 bad input, 3 mathematical error, 4 failed
//! verification.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::closure::{compute_closure_with_digits, rhs_constraints};
use crate::error::Error;
use crate::geometry::SphereSpec;
use crate::numberfield::embeddings;
use crate::rational::parse_decimal;
use crate::sampler::{density_probe, sample_rational_points, verify_samples, ProbeReport, VerifyReport};
use crate::schema::{
    closure_to_json, embeddings_to_json, kind_name, load_problem, rhs_to_json, to_json_line, LoadError, RhsJson,
};

pub const EXIT_INPUT: i32 = 2;
pub const EXIT_MATH: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "sphere-closure", version, about = "Closure of the rational points on a sphere with algebraic center")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Problem file (JSON).
    pub input: PathBuf,
    /// Decimal digits for certified approximations.
    #[arg(long, env = "SPHERE_CLOSURE_DIGITS", default_value_t = 64)]
    pub digits: u32,
    /// Write the output here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the closure object.
    Closure(Common),
    /// Emit exact rational points of the sphere.
    Sample {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 50)]
        height: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Sample, then check every point exactly and against each conjugate constraint.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 50)]
        height: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Residual tolerance, e.g. 1e-50.
        #[arg(long, default_value = "1e-50")]
        tol: String,
        /// Also run the density probe with this radius.
        #[arg(long)]
        probe_eps: Option<String>,
        #[arg(long, default_value_t = 100)]
        budget: usize,
    },
    /// Certified roots of the minimal polynomial.
    Embeddings(Common),
    /// One sphere/hyperplane constraint per embedding.
    Rhs(Common),
}

/// A failed command: exit code and message for stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        LoadError::from(e).into()
    }
}

impl From<LoadError> for CliError {
    fn from(e: LoadError) -> Self {
        let code = match e {
            LoadError::Input(_) => EXIT_INPUT,
            LoadError::Math(_) => EXIT_MATH,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

fn load(path: &Path) -> Result<SphereSpec, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
    load_problem(&text).map_err(|e| {
        let mut e = CliError::from(e);
        e.message = format!("{}: {}", path.display(), e.message);
        e
    })
}

fn emit(out: &Option<PathBuf>, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match out {
        Some(p) => fs::write(p, text)
            .map_err(|e| CliError::input(format!("cannot write {}: {e}", p.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| CliError::input(format!("cannot write output: {e}"))),
    }
}

#[derive(Serialize)]
struct RhsDoc {
    digits: u32,
    rhs: Vec<RhsJson>,
}

#[derive(Serialize)]
struct VerifyDoc {
    kind: &'static str,
    dim: usize,
    passed: bool,
    verify: VerifyReport,
    probe: Option<ProbeReport>,
}

pub fn cmd_closure(c: &Common, stdout: &mut dyn Write) -> Result<(), CliError> {
    let spec = load(&c.input)?;
    let closure = compute_closure_with_digits(&spec, c.digits)?;
    let rhs = rhs_constraints(&spec, c.digits)?;
    emit(&c.out, &to_json_line(&closure_to_json(&closure, &rhs)), stdout)
}

pub fn cmd_sample(
    c: &Common,
    count: usize,
    height: u64,
    seed: u64,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let spec = load(&c.input)?;
    let pts = sample_rational_points(&spec, count, height, seed)?;
    let rows: Vec<Vec<String>> = pts
        .iter()
        .map(|p| p.iter().map(crate::rational::format_rational).collect())
        .collect();
    emit(&c.out, &to_json_line(&rows), stdout)
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_verify(
    c: &Common,
    count: usize,
    height: u64,
    seed: u64,
    tol: &str,
    probe_eps: Option<&str>,
    budget: usize,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let tol = parse_decimal(tol).map_err(|e| CliError::input(format!("--tol: {e}")))?;
    let eps = probe_eps
        .map(|s| {
            parse_decimal(s)
                .map(|r| crate::rational::to_f64(&r))
                .map_err(|e| CliError::input(format!("--probe-eps: {e}")))
        })
        .transpose()?;
    let spec = load(&c.input)?;
    let closure = compute_closure_with_digits(&spec, c.digits)?;
    let pts = sample_rational_points(&spec, count, height, seed)?;
    let verify = verify_samples(&spec, &closure, &pts, c.digits, &tol)?;
    let probe = match eps {
        Some(eps) if closure.dim > 0 => Some(density_probe(&spec, &closure, &pts, eps, budget, seed)?),
        _ => None,
    };
    let passed = verify.passed && probe.as_ref().is_none_or(|p| p.passed);
    let doc = VerifyDoc {
        kind: kind_name(closure.kind),
        dim: closure.dim,
        passed,
        verify,
        probe,
    };
    emit(&c.out, &to_json_line(&doc), stdout)?;
    if passed {
        Ok(())
    } else {
        Err(CliError {
            code: EXIT_VERIFY,
            message: "verification failed".into(),
        })
    }
}

pub fn cmd_embeddings(c: &Common, stdout: &mut dyn Write) -> Result<(), CliError> {
    let spec = load(&c.input)?;
    let emb = embeddings(spec.field(), c.digits)?;
    emit(&c.out, &to_json_line(&embeddings_to_json(&emb)), stdout)
}

pub fn cmd_rhs(c: &Common, stdout: &mut dyn Write) -> Result<(), CliError> {
    let spec = load(&c.input)?;
    let rhs = rhs_constraints(&spec, c.digits)?;
    let doc = RhsDoc {
        digits: c.digits,
        rhs: rhs.iter().map(|r| rhs_to_json(r, c.digits)).collect(),
    };
    emit(&c.out, &to_json_line(&doc), stdout)
}

pub fn run(cli: &Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Closure(c) => cmd_closure(c, stdout),
        Command::Sample {
            common,
            count,
            height,
            seed,
        } => cmd_sample(common, *count, *height, *seed, stdout),
        Command::Verify {
            common,
            count,
            height,
            seed,
            tol,
            probe_eps,
            budget,
        } => cmd_verify(common, *count, *height, *seed, tol, probe_eps.as_deref(), *budget, stdout),
        Command::Embeddings(c) => cmd_embeddings(c, stdout),
        Command::Rhs(c) => cmd_rhs(c, stdout),
    }
}
