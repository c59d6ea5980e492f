use std::f64::consts::{LN_2, PI};

use serde::{Deserialize, Serialize};

use super::{params, IdentityId, IdentityReport, LogProduct};
use crate::beta::{
    beta_closed, beta_integral, euler_symbol, euler_symbol_closed, log_euler_symbol_closed, BetaArgs, EulerSymbolParams,
};
use crate::error::{Error, Result};
use crate::gamma::{factorial_interp, gamma_integral, gamma_log_integral, gamma_reference, log_gamma};
use crate::quadrature::{integrate_finite_nodes, QuadratureConfig};

const LN_2PI: f64 = 1.837_877_066_409_345_5;

/// How Euler's symbols are evaluated inside [`check_euler_multiplication`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SymbolEngine {
    /// Via B(p/n, q/n)/n over log Γ.
    Closed,
    /// Direct quadrature of the defining integral.
    Quadrature,
}

fn open_unit(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v < 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} must lie in (0,1)")))
    }
}

fn at_least(name: &str, v: u32, min: u32) -> Result<()> {
    if v >= min {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} must be at least {min}")))
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} must be positive")))
    }
}

fn lg(x: f64) -> f64 {
    log_gamma(x).expect("positive argument")
}

/// Σ ln sin(iπ/n) for i = 1..n-1.
fn log_sine_product(n: u32) -> LogProduct {
    let nf = n as f64;
    (1..n).map(|i| (PI * i as f64 / nf).sin().ln()).collect()
}

/// ln √((2π)^{n-1}/n), the closed value of Γ(1/n)Γ(2/n)⋯Γ((n-1)/n).
fn fraction_product_log_closed(n: u32) -> f64 {
    let nf = n as f64;
    0.5 * ((nf - 1.0) * LN_2PI - nf.ln())
}

/// Γ(x)Γ(1-x) = π / sin(πx) for 0 < x < 1.
pub fn check_reflection(x: f64) -> Result<IdentityReport> {
    open_unit("x", x)?;
    let lhs = gamma_reference(x)? * gamma_reference(1.0 - x)?;
    let rhs = PI / (PI * x).sin();
    Ok(IdentityReport::linear(
        IdentityId::Reflection,
        params(&[("x", x)]),
        lhs,
        rhs,
    ))
}

/// Bracket form of reflection: `[λ]·[-λ] = πλ / sin(πλ)` with `[λ] = Γ(1+λ)`.
pub fn check_reflection_bracket(lambda: f64) -> Result<IdentityReport> {
    open_unit("lambda", lambda)?;
    let lhs = factorial_interp(lambda)? * factorial_interp(-lambda)?;
    let rhs = PI * lambda / (PI * lambda).sin();
    Ok(IdentityReport::linear(
        IdentityId::ReflectionBracket,
        params(&[("lambda", lambda)]),
        lhs,
        rhs,
    ))
}

/// ∏_{i=1}^{n-1} sin(iπ/n) = n / 2^{n-1}.
pub fn check_sine_product(n: u32) -> Result<IdentityReport> {
    at_least("n", n, 2)?;
    let nf = n as f64;
    let log_rhs = nf.ln() - (nf - 1.0) * LN_2;
    Ok(IdentityReport::from_logs(
        IdentityId::SineProduct,
        params(&[("n", nf)]),
        log_sine_product(n).ln(),
        log_rhs,
    ))
}

/// sin(nφ) = 2^{n-1} ∏_{k=0}^{n-1} sin(φ + kπ/n).
///
/// The uniform product lists the same factors as the classical pairing
/// `sin φ · sin(π/n - φ) sin(π/n + φ) · sin(2π/n - φ) sin(2π/n + φ) ⋯`,
/// because `sin((n-k)π/n + φ) = sin(kπ/n - φ)`. It also covers even `n`,
/// where the pairing leaves a lone middle factor `sin(π/2 + φ)`.
pub fn check_sine_multiple_angle(n: u32, phi: f64) -> Result<IdentityReport> {
    at_least("n", n, 1)?;
    if !phi.is_finite() {
        return Err(Error::domain("phi must be finite"));
    }
    let nf = n as f64;
    let lhs = (nf * phi).sin();
    let product: f64 = (0..n).map(|k| (phi + k as f64 * PI / nf).sin()).product();
    let rhs = 2f64.powi(n as i32 - 1) * product;
    Ok(IdentityReport::linear(
        IdentityId::SineMultipleAngle,
        params(&[("n", nf), ("phi", phi)]),
        lhs,
        rhs,
    ))
}

/// ∏_{i=1}^{n-1} Γ(i/n)² = π^{n-1} / ∏_{i=1}^{n-1} sin(iπ/n).
pub fn check_gamma_square_product(n: u32) -> Result<IdentityReport> {
    at_least("n", n, 2)?;
    let nf = n as f64;
    let lhs: LogProduct = (1..n).map(|i| 2.0 * lg(i as f64 / nf)).collect();
    let log_rhs = (nf - 1.0) * PI.ln() - log_sine_product(n).ln();
    Ok(IdentityReport::from_logs(
        IdentityId::GammaSquareProduct,
        params(&[("n", nf)]),
        lhs.ln(),
        log_rhs,
    ))
}

/// Γ(1/n)Γ(2/n)⋯Γ((n-1)/n) = √((2π)^{n-1}/n).
pub fn check_gamma_fraction_product(n: u32) -> Result<IdentityReport> {
    at_least("n", n, 2)?;
    let nf = n as f64;
    let lhs: LogProduct = (1..n).map(|i| lg(i as f64 / nf)).collect();
    Ok(IdentityReport::from_logs(
        IdentityId::GammaFractionProduct,
        params(&[("n", nf)]),
        lhs.ln(),
        fraction_product_log_closed(n),
    ))
}

/// ∏_{k=1}^{n-1} ∫_0^1 (ln 1/x)^{k/n} dx = ((n-1)!/n^{n-1}) √(2^{n-1}π^{n-1}/n),
/// with every integral evaluated by quadrature.
pub fn check_log_integral_product(n: u32, cfg: &QuadratureConfig) -> Result<IdentityReport> {
    at_least("n", n, 2)?;
    let nf = n as f64;
    let mut lhs = LogProduct::new();
    let mut converged = true;
    for k in 1..n {
        let est = gamma_log_integral(k as f64 / nf, cfg)?;
        converged &= est.converged;
        lhs.push(est.value);
    }
    let mut rhs: LogProduct = (1..n).map(|k| (k as f64).ln()).collect();
    rhs.push_log(-(nf - 1.0) * nf.ln());
    rhs.push_log(fraction_product_log_closed(n));
    Ok(
        IdentityReport::from_logs(IdentityId::LogIntegralProduct, params(&[("n", nf)]), lhs.ln(), rhs.ln())
            .with_converged(converged),
    )
}

/// ln of `(m/n)·(n^{n-m}·Γ(m)·∏_{i=1}^{n-1} (i/m))^{1/n}`, where `(i/m)` is
/// Euler's symbol with exponent `n`. Also reports whether every quadrature
/// converged.
fn euler_form_log(m: f64, n: u32, engine: SymbolEngine, cfg: &QuadratureConfig) -> Result<(f64, bool)> {
    let nf = n as f64;
    let mut radicand = LogProduct::new();
    radicand.push_pow(nf, nf - m);
    radicand.push_log(lg(m));
    let mut converged = true;
    for i in 1..n {
        let symbol = EulerSymbolParams::new(i as f64, m, n)?;
        match engine {
            SymbolEngine::Closed => radicand.push_log(log_euler_symbol_closed(symbol)),
            SymbolEngine::Quadrature => {
                let est = euler_symbol(symbol, cfg)?;
                converged &= est.converged;
                radicand.push(est.value);
            }
        }
    }
    Ok(((m / nf).ln() + radicand.ln() / nf, converged))
}

/// Euler's symbol form of the multiplication formula:
/// `[m/n] = (m/n)·(n^{n-m}·Γ(m)·(1/m)(2/m)⋯((n-1)/m))^{1/n}`, with
/// `1·2⋯(m-1)` interpolated by Γ(m) so that `m` may be any positive real.
pub fn check_euler_multiplication(
    m: f64,
    n: u32,
    engine: SymbolEngine,
    cfg: &QuadratureConfig,
) -> Result<IdentityReport> {
    positive("m", m)?;
    at_least("n", n, 1)?;
    let id = match engine {
        SymbolEngine::Closed => IdentityId::EulerMultiplication,
        SymbolEngine::Quadrature => IdentityId::EulerMultiplicationIntegral,
    };
    let p = params(&[("m", m), ("n", n as f64)]);
    let (log_rhs, converged) = euler_form_log(m, n, engine, cfg)?;
    let lambda = m / n as f64;
    let report = match factorial_interp(lambda) {
        Ok(lhs) if log_rhs.exp().is_normal() => IdentityReport::linear(id, p, lhs, log_rhs.exp()),
        Ok(_) | Err(Error::Overflow { .. }) => IdentityReport::from_logs(id, p, lg(1.0 + lambda), log_rhs),
        Err(e) => return Err(e),
    };
    Ok(report.with_converged(converged))
}

/// ln of both sides of Γ(x/n)Γ((x+1)/n)⋯Γ((x+n-1)/n) = (2π)^{(n-1)/2} n^{1/2-x} Γ(x).
///
/// The right side is assembled as `n^{1-x}·Γ(x)·√((2π)^{n-1}/n)`, the last
/// factor being the closed value of Γ(1/n)⋯Γ((n-1)/n).
fn gauss_logs(x: f64, n: u32) -> (f64, f64) {
    let nf = n as f64;
    let lhs: LogProduct = (0..n).map(|k| lg((x + k as f64) / nf)).collect();
    let mut rhs = LogProduct::new();
    rhs.push_pow(nf, 1.0 - x);
    rhs.push_log(lg(x));
    rhs.push_log(fraction_product_log_closed(n));
    (lhs.ln(), rhs.ln())
}

/// Gauss's multiplication formula, compared in log space.
pub fn check_gauss_multiplication(x: f64, n: u32) -> Result<IdentityReport> {
    positive("x", x)?;
    at_least("n", n, 1)?;
    let (lhs, rhs) = gauss_logs(x, n);
    Ok(IdentityReport::from_logs(
        IdentityId::GaussMultiplication,
        params(&[("n", n as f64), ("x", x)]),
        lhs,
        rhs,
    ))
}

/// The `n = 2` case of [`check_gauss_multiplication`].
pub fn check_duplication(x: f64) -> Result<IdentityReport> {
    let mut report = check_gauss_multiplication(x, 2)?;
    report.identity_id = IdentityId::Duplication;
    report.params = params(&[("x", x)]);
    Ok(report.with_tolerance(IdentityId::Duplication.default_tolerance()))
}

/// `∫_0^1 (-ln x)^{p/q} dx = (p!·∏_{j=2}^{q} (jp/q + 1))^{1/q} · (∏_{k=1}^{q-1} ∫_0^1 (x^k - x^{k+1})^{p/q} dx)^{1/q}`
/// for natural `p` and `q`. Both sides are evaluated by quadrature.
pub fn check_algebraic_integral_gamma(p: u32, q: u32, cfg: &QuadratureConfig) -> Result<IdentityReport> {
    at_least("p", p, 1)?;
    at_least("q", q, 1)?;
    let (pf, qf) = (p as f64, q as f64);
    let s = pf / qf;

    let lhs = gamma_log_integral(s, cfg)?;
    let mut converged = lhs.converged;

    let mut radicand: LogProduct = (1..=p).map(|i| (i as f64).ln()).collect();
    for j in 2..=q {
        radicand.push(j as f64 * s + 1.0);
    }
    for k in 1..q {
        let kf = k as f64;
        // (x^k - x^{k+1})^s = exp(s·(k ln x + ln(1 - x)))
        let est = integrate_finite_nodes(
            |node| {
                let ln_x = if node.from_upper < 0.5 {
                    (-node.from_upper).ln_1p()
                } else {
                    node.from_lower.ln()
                };
                (s * (kf * ln_x + node.from_upper.ln())).exp()
            },
            0.0,
            1.0,
            cfg,
        )?;
        converged &= est.converged;
        radicand.push(est.value);
    }
    let rhs = (radicand.ln() / qf).exp();
    Ok(IdentityReport::linear(
        IdentityId::AlgebraicIntegralGamma,
        params(&[("p", pf), ("q", qf)]),
        lhs.value,
        rhs,
    )
    .with_converged(converged))
}

/// `(p/q) = (q/p)`, both symbols by quadrature.
pub fn check_symbol_symmetry(p: f64, q: f64, n: u32, cfg: &QuadratureConfig) -> Result<IdentityReport> {
    let symbol = EulerSymbolParams::new(p, q, n)?;
    let lhs = euler_symbol(symbol, cfg)?;
    let rhs = euler_symbol(symbol.swapped(), cfg)?;
    Ok(IdentityReport::linear(
        IdentityId::SymbolSymmetry,
        params(&[("n", n as f64), ("p", p), ("q", q)]),
        lhs.value,
        rhs.value,
    )
    .with_converged(lhs.converged && rhs.converged))
}

/// Quadrature of the symbol against `B(p/n, q/n)/n`.
pub fn check_symbol_beta_bridge(p: f64, q: f64, n: u32, cfg: &QuadratureConfig) -> Result<IdentityReport> {
    let symbol = EulerSymbolParams::new(p, q, n)?;
    let lhs = euler_symbol(symbol, cfg)?;
    Ok(IdentityReport::linear(
        IdentityId::SymbolBetaBridge,
        params(&[("n", n as f64), ("p", p), ("q", q)]),
        lhs.value,
        euler_symbol_closed(symbol),
    )
    .with_converged(lhs.converged))
}

/// Quadrature of Γ's defining integral against the Lanczos engine.
pub fn check_gamma_engines(x: f64, cfg: &QuadratureConfig) -> Result<IdentityReport> {
    let lhs = gamma_integral(x, cfg)?;
    let rhs = gamma_reference(x)?;
    Ok(
        IdentityReport::linear(IdentityId::GammaEngines, params(&[("x", x)]), lhs.value, rhs)
            .with_converged(lhs.converged),
    )
}

/// Quadrature of the Beta integral against the log-Γ closed form.
pub fn check_beta_engines(x: f64, y: f64, cfg: &QuadratureConfig) -> Result<IdentityReport> {
    let args = BetaArgs::new(x, y)?;
    let lhs = beta_integral(args, cfg)?;
    Ok(IdentityReport::linear(
        IdentityId::BetaEngines,
        params(&[("x", x), ("y", y)]),
        lhs.value,
        beta_closed(args),
    )
    .with_converged(lhs.converged))
}

/// Three routes to `[m/n] = Γ(m/n + 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivationChain {
    /// Right side of Euler's symbol formula, symbols in closed form.
    pub euler_form: f64,
    /// Γ(m/n + 1) from the reference engine.
    pub factorial: f64,
    /// `(m/n)·Γ(m/n)` with Γ(m/n) isolated from the multiplication formula
    /// at `x = m`, whose constant is the closed value of Γ(1/n)⋯Γ((n-1)/n).
    pub gauss_form: f64,
}

impl DerivationChain {
    /// Largest relative disagreement among the three routes.
    pub fn max_pairwise_rel(&self) -> f64 {
        let rel = |a: f64, b: f64| (a - b).abs() / a.abs().max(b.abs());
        rel(self.euler_form, self.factorial)
            .max(rel(self.euler_form, self.gauss_form))
            .max(rel(self.factorial, self.gauss_form))
    }
}

pub fn derivation_chain(m: f64, n: u32) -> Result<DerivationChain> {
    positive("m", m)?;
    at_least("n", n, 1)?;
    let nf = n as f64;
    let (euler_log, _) = euler_form_log(m, n, SymbolEngine::Closed, &QuadratureConfig::default())?;
    let (_, gauss_rhs) = gauss_logs(m, n);
    let mut gauss = LogProduct::new();
    gauss.push(m / nf);
    gauss.push_log(gauss_rhs);
    for i in 1..n {
        gauss.push_log(-lg((m + i as f64) / nf));
    }
    Ok(DerivationChain {
        euler_form: euler_log.exp(),
        factorial: factorial_interp(m / nf)?,
        gauss_form: gauss.value(),
    })
}

/// Euler's symbol form against the multiplication-formula reconstruction of
/// `[m/n]`; see [`DerivationChain`].
pub fn check_derivation_chain(m: f64, n: u32) -> Result<IdentityReport> {
    let chain = derivation_chain(m, n)?;
    Ok(IdentityReport::linear(
        IdentityId::DerivationChain,
        params(&[("m", m), ("n", n as f64)]),
        chain.euler_form,
        chain.gauss_form,
    ))
}
