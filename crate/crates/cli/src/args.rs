use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gamma_mult::report::OutputFormat;
use gamma_mult::{IdentityId, QuadratureConfig};

#[derive(Debug, Parser)]
#[command(
    name = "gamma-mult",
    version,
    about = "Evaluate Γ, B and Euler's integral symbol; certify the multiplication-formula identities"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a single function value.
    Eval(EvalArgs),
    /// Run one identity check.
    Verify(VerifyArgs),
    /// Run the identity suite over a parameter grid.
    Suite(SuiteArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Function {
    /// Γ(x)
    Gamma,
    /// ln Γ(x)
    Lgamma,
    /// B(x, y)
    Beta,
    /// Euler's symbol (p/q) with exponent n
    Symbol,
    /// ∫_0^1 (-ln x)^s dx
    #[value(name = "loggamma_integral", alias = "loggamma-integral")]
    LoggammaIntegral,
}

impl Function {
    pub fn arity(self) -> usize {
        match self {
            Function::Gamma | Function::Lgamma | Function::LoggammaIntegral => 1,
            Function::Beta => 2,
            Function::Symbol => 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Engine {
    /// Closed form over the Lanczos engine.
    #[default]
    Reference,
    /// Quadrature of the defining integral.
    Integral,
}

#[derive(Debug, Clone, Args)]
pub struct QuadratureFlags {
    #[arg(long, default_value_t = QuadratureConfig::default().abs_tol)]
    pub abs_tol: f64,
    #[arg(long, default_value_t = QuadratureConfig::default().rel_tol)]
    pub rel_tol: f64,
    #[arg(long, default_value_t = QuadratureConfig::default().max_refinements)]
    pub max_refinements: u32,
    #[arg(long, default_value_t = QuadratureConfig::default().truncation_threshold)]
    pub truncation_threshold: f64,
}

impl QuadratureFlags {
    pub fn config(&self) -> QuadratureConfig {
        QuadratureConfig {
            abs_tol: self.abs_tol,
            rel_tol: self.rel_tol,
            max_refinements: self.max_refinements,
            truncation_threshold: self.truncation_threshold,
        }
    }
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    pub function: Function,
    #[arg(allow_negative_numbers = true, num_args = 1..)]
    pub args: Vec<f64>,
    #[arg(long, value_enum, default_value_t)]
    pub engine: Engine,
    #[command(flatten)]
    pub quadrature: QuadratureFlags,
}

/// Scalar parameters accepted by `verify`; each identity reads the ones it
/// needs.
#[derive(Debug, Args)]
pub struct ParamFlags {
    #[arg(long, allow_negative_numbers = true)]
    pub x: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub y: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub n: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub m: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub p: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub q: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub phi: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
}

impl ParamFlags {
    pub fn get(&self, name: &str) -> Option<f64> {
        match name {
            "x" => self.x,
            "y" => self.y,
            "n" => self.n,
            "m" => self.m,
            "p" => self.p,
            "q" => self.q,
            "phi" => self.phi,
            "lambda" => self.lambda,
            _ => None,
        }
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_parser = parse_identity)]
    pub identity: IdentityId,
    #[command(flatten)]
    pub params: ParamFlags,
    #[arg(long, value_parser = parse_format, default_value = "table")]
    pub format: OutputFormat,
    /// Override the identity's default tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    #[command(flatten)]
    pub quadrature: QuadratureFlags,
}

/// A grid axis: comma-separated values and inclusive integer ranges, e.g.
/// `2..12` or `0.1,0.5,1,2.5`.
#[derive(Debug, Clone, PartialEq)]
pub struct AxisValues(pub Vec<f64>);

/// Grid axis overrides accepted by `suite`.
#[derive(Debug, Args)]
pub struct GridFlags {
    #[arg(long, value_parser = parse_axis)]
    pub x: Option<AxisValues>,
    #[arg(long, value_parser = parse_axis)]
    pub y: Option<AxisValues>,
    #[arg(long, value_parser = parse_axis)]
    pub n: Option<AxisValues>,
    #[arg(long, value_parser = parse_axis)]
    pub m: Option<AxisValues>,
    #[arg(long, value_parser = parse_axis)]
    pub p: Option<AxisValues>,
    #[arg(long, value_parser = parse_axis)]
    pub q: Option<AxisValues>,
    #[arg(long, value_parser = parse_axis)]
    pub phi: Option<AxisValues>,
    #[arg(long, value_parser = parse_axis)]
    pub lambda: Option<AxisValues>,
}

impl GridFlags {
    pub fn overrides(&self) -> impl Iterator<Item = (&'static str, &AxisValues)> {
        [
            ("x", &self.x),
            ("y", &self.y),
            ("n", &self.n),
            ("m", &self.m),
            ("p", &self.p),
            ("q", &self.q),
            ("phi", &self.phi),
            ("lambda", &self.lambda),
        ]
        .into_iter()
        .filter_map(|(name, v)| v.as_ref().map(|v| (name, v)))
    }
}

#[derive(Debug, Args)]
pub struct SuiteArgs {
    #[arg(long, value_parser = parse_format, default_value = "table")]
    pub format: OutputFormat,
    /// Per-identity tolerance override, `identity=value`; repeatable.
    #[arg(long, value_parser = parse_tolerance)]
    pub tol: Vec<(IdentityId, f64)>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Run only these identities; repeatable.
    #[arg(long, value_parser = parse_identity)]
    pub only: Vec<IdentityId>,
    /// Leave these identities out; repeatable.
    #[arg(long, value_parser = parse_identity)]
    pub skip: Vec<IdentityId>,
    #[command(flatten)]
    pub grid: GridFlags,
    /// Include per-check wall times (makes output differ between runs).
    #[arg(long)]
    pub timings: bool,
    #[command(flatten)]
    pub quadrature: QuadratureFlags,
}

fn parse_identity(s: &str) -> Result<IdentityId, String> {
    s.parse().map_err(|e: gamma_mult::Error| e.to_string())
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    s.parse().map_err(|e: gamma_mult::Error| e.to_string())
}

fn parse_tolerance(s: &str) -> Result<(IdentityId, f64), String> {
    let (id, value) = s
        .split_once('=')
        .ok_or_else(|| format!("expected identity=value, got '{s}'"))?;
    let tol: f64 = value.parse().map_err(|_| format!("invalid tolerance '{value}'"))?;
    if tol.is_nan() || tol < 0.0 {
        return Err(format!("tolerance must be non-negative, got {value}"));
    }
    Ok((parse_identity(id)?, tol))
}

pub fn parse_axis(s: &str) -> Result<AxisValues, String> {
    let mut values = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if let Some((lo, hi)) = part.split_once("..") {
            let lo: i64 = lo
                .trim()
                .parse()
                .map_err(|_| format!("invalid range start in '{part}'"))?;
            let hi: i64 = hi
                .trim()
                .parse()
                .map_err(|_| format!("invalid range end in '{part}'"))?;
            if lo > hi {
                return Err(format!("empty range '{part}'"));
            }
            values.extend((lo..=hi).map(|v| v as f64));
        } else {
            let v: f64 = part.parse().map_err(|_| format!("invalid number '{part}'"))?;
            if !v.is_finite() {
                return Err(format!("non-finite value '{part}'"));
            }
            values.push(v);
        }
    }
    Ok(AxisValues(values))
}
