//! The Beta function and Euler's integral symbol
//!
//! ```text
//! (p/q) = ∫_0^1 x^{p-1} (1 - x^n)^{(q-n)/n} dx = B(p/n, q/n) / n
//! ```
//!
//! with the exponent `n` carried explicitly. Both are available as a closed
//! form over [`log_gamma`] and as direct quadrature of the defining integral.
//! `p` and `q` may be any positive reals. When `q > n` the integrand vanishes
//! at `x = 1` instead of blowing up; that case needs no special handling.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gamma::{gamma_reference, log_gamma};
use crate::quadrature::{integrate_finite_nodes, IntegralEstimate, Node, QuadratureConfig};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BetaArgs {
    x: f64,
    y: f64,
}

impl BetaArgs {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if x > 0.0 && y > 0.0 && x.is_finite() && y.is_finite() {
            Ok(Self { x, y })
        } else {
            Err(Error::domain(format!(
                "beta arguments must be positive, got ({x}, {y})"
            )))
        }
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }
}

/// Parameters `(p, q, n)` of Euler's symbol `(p/q)` with implicit exponent `n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EulerSymbolParams {
    p: f64,
    q: f64,
    n: u32,
}

impl EulerSymbolParams {
    pub fn new(p: f64, q: f64, n: u32) -> Result<Self> {
        if !(p > 0.0 && q > 0.0 && p.is_finite() && q.is_finite()) {
            return Err(Error::domain(format!(
                "symbol parameters must be positive, got p = {p}, q = {q}"
            )));
        }
        if n == 0 {
            return Err(Error::domain("symbol exponent n must be at least 1"));
        }
        Ok(Self { p, q, n })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// The symbol with `p` and `q` exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            p: self.q,
            q: self.p,
            n: self.n,
        }
    }

    /// The Beta arguments `(p/n, q/n)` of the equivalent Beta integral.
    pub fn beta_args(&self) -> BetaArgs {
        let n = self.n as f64;
        BetaArgs {
            x: self.p / n,
            y: self.q / n,
        }
    }
}

/// ln B(x, y) = ln Γ(x) + ln Γ(y) - ln Γ(x + y).
pub fn log_beta(args: BetaArgs) -> f64 {
    let lg = |v: f64| log_gamma(v).expect("validated positive argument");
    lg(args.x) + lg(args.y) - lg(args.x + args.y)
}

/// B(x, y) = Γ(x)Γ(y)/Γ(x + y). Direct Γ ratios while Γ(x + y) is finite,
/// log space beyond.
pub fn beta_closed(args: BetaArgs) -> f64 {
    let (lo, hi) = if args.x <= args.y {
        (args.x, args.y)
    } else {
        (args.y, args.x)
    };
    match (gamma_reference(lo), gamma_reference(hi), gamma_reference(lo + hi)) {
        (Ok(a), Ok(b), Ok(c)) if c.is_normal() => a / c * b,
        _ => log_beta(args).exp(),
    }
}

/// `ln x` at a node of (0, 1), accurate near both ends.
fn ln_node(node: &Node) -> f64 {
    if node.from_upper < 0.5 {
        (-node.from_upper).ln_1p()
    } else {
        node.from_lower.ln()
    }
}

/// `t^{a} (1 - t)^{b}` at a node of (0, 1), computed from the exact endpoint
/// distances.
fn beta_kernel(node: &Node, a: f64, b: f64) -> f64 {
    let left = if a == 0.0 { 1.0 } else { node.from_lower.powf(a) };
    let right = if b == 0.0 { 1.0 } else { node.from_upper.powf(b) };
    left * right
}

/// B(x, y) by quadrature of `∫_0^1 t^{x-1}(1-t)^{y-1} dt`.
pub fn beta_integral(args: BetaArgs, cfg: &QuadratureConfig) -> Result<IntegralEstimate> {
    let (a, b) = (args.x - 1.0, args.y - 1.0);
    integrate_finite_nodes(|node| beta_kernel(&node, a, b), 0.0, 1.0, cfg)
}

/// Euler's symbol by direct quadrature of `∫_0^1 x^{p-1} (1-x^n)^{(q-n)/n} dx`.
pub fn euler_symbol(params: EulerSymbolParams, cfg: &QuadratureConfig) -> Result<IntegralEstimate> {
    let n = params.n as f64;
    let lower_power = params.p - 1.0;
    let upper_power = (params.q - n) / n;
    if params.n == 1 {
        return integrate_finite_nodes(|node| beta_kernel(&node, lower_power, upper_power), 0.0, 1.0, cfg);
    }
    integrate_finite_nodes(
        |node| {
            let ln_x = ln_node(&node);
            // 1 - x^n without cancellation near x = 1.
            let complement = -(n * ln_x).exp_m1();
            (lower_power * ln_x).exp() * complement.powf(upper_power)
        },
        0.0,
        1.0,
        cfg,
    )
}

/// `(p/q) = B(p/n, q/n) / n`.
pub fn euler_symbol_closed(params: EulerSymbolParams) -> f64 {
    beta_closed(params.beta_args()) / params.n as f64
}

/// ln of [`euler_symbol_closed`].
pub fn log_euler_symbol_closed(params: EulerSymbolParams) -> f64 {
    log_beta(params.beta_args()) - (params.n as f64).ln()
}
