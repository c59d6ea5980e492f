//! Double-exponential (tanh-sinh) quadrature.
//!
//! The substitution `x = mid + half_width * tanh(π/2 · sinh t)` maps the
//! finite interval onto the whole real line and makes the transformed
//! integrand decay double-exponentially in `t`. The trapezoidal rule on the
//! transformed integrand then converges at a spectral rate, including for
//! integrands with algebraic singularities at either endpoint. Endpoints are
//! never sampled: they sit at `t = ±∞`.
//!
//! Refinement halves the step `h` on each level and only evaluates the new
//! (odd-indexed) nodes, so every level reuses all earlier evaluations. The
//! error estimate is the difference between the last two levels.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Nodes whose distance to the nearer endpoint falls below this are dropped.
/// The neglected mass is far below binary64 resolution for every integrable
/// power singularity `x^s` with `s ≥ -0.99`.
const NODE_FLOOR: f64 = 1e-300;

/// Hard cap on the transformed variable; the floor above is reached first
/// for unit-scale intervals.
const T_MAX: f64 = 7.0;

/// Levels below this are never declared converged (unless the configured
/// refinement budget is smaller), so that an accidental agreement between
/// two very coarse levels cannot stop the iteration.
const MIN_CONVERGED_LEVEL: u32 = 3;

/// First truncation point probed by [`integrate_semi_infinite`].
const TAIL_START: f64 = 16.0;
/// Largest truncation point [`integrate_semi_infinite`] may settle on.
const TAIL_CAP: f64 = 1_048_576.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Number of step-halving levels after the initial `h = 1` level.
    pub max_refinements: u32,
    /// Integrand magnitude below which a semi-infinite tail is cut off.
    pub truncation_threshold: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-11,
            max_refinements: 12,
            truncation_threshold: 1e-15,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.abs_tol.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "abs_tol must be positive, got {}",
                self.abs_tol
            )));
        }
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "rel_tol must be positive, got {}",
                self.rel_tol
            )));
        }
        if self.max_refinements < 1 {
            return Err(Error::InvalidConfig("max_refinements must be at least 1".into()));
        }
        if !(self.truncation_threshold > 0.0 && self.truncation_threshold.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "truncation_threshold must be positive, got {}",
                self.truncation_threshold
            )));
        }
        Ok(())
    }

    /// The error budget `max(abs_tol, rel_tol·|value|)`.
    pub fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegralEstimate {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: u64,
    pub converged: bool,
}

impl IntegralEstimate {
    /// Multiplies value and error estimate by a constant.
    pub fn scaled(self, factor: f64) -> Self {
        Self {
            value: self.value * factor,
            error_estimate: self.error_estimate * factor.abs(),
            ..self
        }
    }
}

/// A quadrature node together with its exact distances to both endpoints.
///
/// Computing `b - x` from a rounded `x` loses every significant digit once
/// `x` is within a few ulps of `b`. Integrands that are singular at the
/// upper endpoint should read `from_upper` instead.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Node {
    pub x: f64,
    pub from_lower: f64,
    pub from_upper: f64,
}

/// Integrates `f` over `(a, b)`. `f` may be singular but integrable at either
/// endpoint; it is only ever evaluated strictly inside the interval.
///
/// Non-convergence within `cfg.max_refinements` levels is reported through
/// `converged = false`, not as an error.
pub fn integrate_finite<F>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<IntegralEstimate>
where
    F: Fn(f64) -> f64,
{
    tanh_sinh(|node: Node| f(node.x), a, b, cfg, true)
}

/// Like [`integrate_finite`], but hands the integrand the exact distance of
/// each node to both endpoints.
pub fn integrate_finite_nodes<F>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<IntegralEstimate>
where
    F: Fn(Node) -> f64,
{
    tanh_sinh(f, a, b, cfg, false)
}

/// Integrates `f` over `(a, ∞)` by truncating at `a + T` and integrating the
/// finite part. `T` starts at 16 and doubles until `|f(a + T)|` is below the
/// truncation threshold and not growing; the tail beyond `T` is bounded by
/// `|f(a + T)|·T` and added to the error estimate.
pub fn integrate_semi_infinite<F>(f: F, a: f64, cfg: &QuadratureConfig) -> Result<IntegralEstimate>
where
    F: Fn(f64) -> f64,
{
    cfg.validate()?;
    if !a.is_finite() {
        return Err(Error::domain(format!("lower limit must be finite, got {a}")));
    }
    let mut probes = 0u64;
    let mut span = TAIL_START;
    let tail = loop {
        if span > TAIL_CAP {
            return Err(Error::TailNotIntegrable {
                threshold: cfg.truncation_threshold,
            });
        }
        let here = probe(&f, a + span)?;
        let beyond = probe(&f, a + 2.0 * span)?;
        probes += 2;
        if here < cfg.truncation_threshold && beyond <= here {
            break here * span;
        }
        span *= 2.0;
    };

    let body = integrate_finite(&f, a, a + span, cfg)?;
    let error_estimate = body.error_estimate + tail;
    Ok(IntegralEstimate {
        value: body.value,
        error_estimate,
        evaluations: body.evaluations + probes,
        converged: body.converged && error_estimate <= cfg.target(body.value),
    })
}

fn probe<F: Fn(f64) -> f64>(f: &F, x: f64) -> Result<f64> {
    let y = f(x);
    if y.is_finite() {
        Ok(y.abs())
    } else {
        Err(Error::NonFiniteIntegrand { x })
    }
}

fn tanh_sinh<F>(f: F, a: f64, b: f64, cfg: &QuadratureConfig, strict: bool) -> Result<IntegralEstimate>
where
    F: Fn(Node) -> f64,
{
    cfg.validate()?;
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::domain(format!(
            "integration limits must satisfy a < b, got a = {a}, b = {b}"
        )));
    }
    let half_width = 0.5 * (b - a);
    let mut evaluations = 0u64;

    let mut eval = |node: Node| -> Result<f64> {
        if strict && !(node.x > a && node.x < b) {
            return Ok(0.0);
        }
        let y = f(node);
        evaluations += 1;
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::NonFiniteIntegrand { x: node.x })
        }
    };

    // Running trapezoid sum over every node visited so far, without the
    // factor h.
    let mut sum = FRAC_PI_2
        * half_width
        * eval(Node {
            x: a + half_width,
            from_lower: half_width,
            from_upper: half_width,
        })?;
    let mut previous = f64::NAN;
    let mut estimate = f64::NAN;
    let mut error = f64::INFINITY;

    for level in 0..=cfg.max_refinements {
        let h = (-(level as f64)).exp2();
        let (first, stride) = if level == 0 { (1u64, 1u64) } else { (1, 2) };
        let mut k = first;
        loop {
            let t = k as f64 * h;
            if t > T_MAX {
                break;
            }
            let u = FRAC_PI_2 * t.sinh();
            let e = (-2.0 * u).exp();
            let near = half_width * 2.0 * e / (1.0 + e);
            if near < NODE_FLOOR {
                break;
            }
            let far = half_width * 2.0 / (1.0 + e);
            let weight = half_width * FRAC_PI_2 * t.cosh() * 4.0 * e / ((1.0 + e) * (1.0 + e));

            let upper = eval(Node {
                x: b - near,
                from_lower: far,
                from_upper: near,
            })?;
            let lower = eval(Node {
                x: a + near,
                from_lower: near,
                from_upper: far,
            })?;
            sum += weight * (upper + lower);
            k += stride;
        }

        estimate = h * sum;
        if level > 0 {
            error = (estimate - previous).abs();
            let checkable = level >= MIN_CONVERGED_LEVEL.min(cfg.max_refinements);
            if checkable && error <= cfg.target(estimate) {
                return Ok(IntegralEstimate {
                    value: estimate,
                    error_estimate: error,
                    evaluations,
                    converged: true,
                });
            }
        }
        previous = estimate;
    }

    Ok(IntegralEstimate {
        value: estimate,
        error_estimate: error,
        evaluations,
        converged: false,
    })
}
