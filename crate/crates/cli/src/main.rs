mod args;

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use gamma_mult::format::significant;
use gamma_mult::identities::run_check;
use gamma_mult::report::{render_identity, render_suite};
use gamma_mult::{
    beta_closed, beta_integral, euler_symbol, euler_symbol_closed, gamma_integral, gamma_log_integral, gamma_reference,
    identities::run_suite, log_gamma, BetaArgs, Error, EulerSymbolParams, IntegralEstimate, QuadratureConfig,
    SuiteGrid, Tolerances,
};

use args::{Cli, Command, Engine, EvalArgs, Function, SuiteArgs, VerifyArgs};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;

/// A command outcome that is not plain success.
struct Exit {
    code: u8,
    message: Option<String>,
}

impl Exit {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: Some(message.into()),
        }
    }

    fn failure(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_FAIL,
            message: Some(message.into()),
        }
    }

    fn silent_failure() -> Self {
        Self {
            code: EXIT_FAIL,
            message: None,
        }
    }
}

/// Domain and configuration errors are the caller's fault; anything else
/// is a numerical failure.
impl From<Error> for Exit {
    fn from(err: Error) -> Self {
        match err {
            Error::Domain(_) | Error::InvalidConfig(_) | Error::EmptyGrid => Exit::usage(err.to_string()),
            _ => Exit::failure(err.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Eval(args) => eval(&args),
        Command::Verify(args) => verify(&args),
        Command::Suite(args) => suite(&args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(exit) => {
            if let Some(message) = exit.message {
                eprintln!("gamma-mult: {message}");
            }
            ExitCode::from(exit.code)
        }
    }
}

fn config(flags: &args::QuadratureFlags) -> Result<QuadratureConfig, Exit> {
    let cfg = flags.config();
    cfg.validate()?;
    Ok(cfg)
}

fn converged(est: IntegralEstimate, cfg: &QuadratureConfig) -> Result<f64, Exit> {
    if est.converged {
        Ok(est.value)
    } else {
        Err(Exit::failure(format!(
            "quadrature did not converge after {} refinements: value {} with error estimate {:e}",
            cfg.max_refinements,
            significant(est.value, 15),
            est.error_estimate
        )))
    }
}

fn positive_integer(v: f64, name: &str) -> Result<u32, Exit> {
    if v >= 1.0 && v.fract() == 0.0 && v <= u32::MAX as f64 {
        Ok(v as u32)
    } else {
        Err(Exit::usage(format!("{name} must be a positive integer, got {v}")))
    }
}

fn eval(args: &EvalArgs) -> Result<(), Exit> {
    let arity = args.function.arity();
    if args.args.len() != arity {
        return Err(Exit::usage(format!(
            "{:?} takes {arity} argument(s), got {}",
            args.function,
            args.args.len()
        )));
    }
    if let Some(bad) = args.args.iter().find(|v| !(**v > 0.0 && v.is_finite())) {
        if args.function != Function::LoggammaIntegral || *bad != 0.0 {
            return Err(Exit::usage(format!("arguments must be positive, got {bad}")));
        }
    }
    let cfg = config(&args.quadrature)?;
    let a = &args.args;
    let value = match (args.function, args.engine) {
        (Function::Gamma, Engine::Reference) => gamma_reference(a[0])?,
        (Function::Gamma, Engine::Integral) => converged(gamma_integral(a[0], &cfg)?, &cfg)?,
        (Function::Lgamma, Engine::Reference) => log_gamma(a[0])?,
        (Function::Lgamma, Engine::Integral) => converged(gamma_integral(a[0], &cfg)?, &cfg)?.ln(),
        (Function::Beta, Engine::Reference) => beta_closed(BetaArgs::new(a[0], a[1])?),
        (Function::Beta, Engine::Integral) => converged(beta_integral(BetaArgs::new(a[0], a[1])?, &cfg)?, &cfg)?,
        (Function::Symbol, engine) => {
            let params = EulerSymbolParams::new(a[0], a[1], positive_integer(a[2], "n")?)?;
            match engine {
                Engine::Reference => euler_symbol_closed(params),
                Engine::Integral => converged(euler_symbol(params, &cfg)?, &cfg)?,
            }
        }
        (Function::LoggammaIntegral, Engine::Reference) => gamma_reference(a[0] + 1.0)?,
        (Function::LoggammaIntegral, Engine::Integral) => converged(gamma_log_integral(a[0], &cfg)?, &cfg)?,
    };
    println!("{}", significant(value, 15));
    Ok(())
}

fn verify(args: &VerifyArgs) -> Result<(), Exit> {
    let cfg = config(&args.quadrature)?;
    let id = args.identity;
    let mut params = BTreeMap::new();
    for &axis in id.axes() {
        let value = args
            .params
            .get(axis)
            .ok_or_else(|| Exit::usage(format!("{id} needs --{axis}")))?;
        params.insert(axis.to_string(), value);
    }
    let mut report = run_check(id, &params, &cfg)?;
    if let Some(tol) = args.tol {
        report = report.with_tolerance(tol);
    }
    print!("{}", render_identity(&report, args.format));
    if report.passed {
        Ok(())
    } else {
        Err(Exit::silent_failure())
    }
}

fn suite(args: &SuiteArgs) -> Result<(), Exit> {
    let cfg = config(&args.quadrature)?;
    let mut grid = SuiteGrid::default();
    if !args.only.is_empty() {
        grid.retain(&args.only);
    }
    for &id in &args.skip {
        grid.remove(id);
    }
    for (axis, values) in args.grid.overrides() {
        grid.set_axis(axis, &values.0);
    }
    let mut tolerances = Tolerances::default();
    for &(id, tol) in &args.tol {
        tolerances.set(id, tol);
    }

    let mut report = run_suite(&grid, &cfg, &tolerances)?;
    if !args.timings {
        report = report.without_timings();
    }
    let rendered = render_suite(&report, args.format);
    match &args.out {
        Some(path) => fs::write(path, rendered).map_err(|e| Exit {
            code: EXIT_IO,
            message: Some(format!("cannot write {}: {e}", path.display())),
        })?,
        None => {
            let _ = std::io::stdout().write_all(rendered.as_bytes());
        }
    }
    eprintln!(
        "{} checks: {} passed, {} failed",
        report.reports.len(),
        report.n_pass(),
        report.n_fail()
    );
    if report.all_passed() {
        Ok(())
    } else {
        for r in report.failures() {
            eprintln!(
                "FAIL {} {}: rel_residual {:e} > {:e}{}",
                r.identity_id,
                gamma_mult::report::params_cell(&r.params),
                r.rel_residual,
                r.tolerance,
                r.error.as_deref().map(|e| format!(" ({e})")).unwrap_or_default()
            );
        }
        Err(Exit::silent_failure())
    }
}
