//! Identity checks: each classical product formula for Γ is encoded as a
//! left-hand side and right-hand side computed along independent routes,
//! compared by residual against a per-identity tolerance.

mod checks;
mod logspace;
mod suite;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::Error;

pub use checks::*;
pub use logspace::LogProduct;
pub use suite::{run_check, run_suite, ConfigEcho, SuiteGrid, SuiteReport, Summary, Tolerances};

/// Sides within this distance of zero are compared by absolute residual.
pub const NEAR_ZERO: f64 = 1e-6;

macro_rules! identity_ids {
    ($($variant:ident => $name:literal, [$($axis:literal),*], $tol:expr;)*) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        pub enum IdentityId {
            $(#[serde(rename = $name)] $variant,)*
        }

        impl IdentityId {
            pub const ALL: &'static [IdentityId] = &[$(IdentityId::$variant,)*];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(IdentityId::$variant => $name,)*
                }
            }

            /// Names of the parameters the check takes, sorted.
            pub fn axes(self) -> &'static [&'static str] {
                match self {
                    $(IdentityId::$variant => &[$($axis),*],)*
                }
            }

            pub fn default_tolerance(self) -> f64 {
                match self {
                    $(IdentityId::$variant => $tol,)*
                }
            }
        }
    };
}

const CLOSED: f64 = 1e-10;
const ONE_QUADRATURE: f64 = 1e-7;

identity_ids! {
    AlgebraicIntegralGamma => "algebraic-integral-gamma", ["p", "q"], 1e-6;
    BetaEngines => "beta-engines", ["x", "y"], 1e-8;
    DerivationChain => "derivation-chain", ["m", "n"], 1e-9;
    Duplication => "duplication", ["x"], CLOSED;
    EulerMultiplication => "euler-multiplication", ["m", "n"], CLOSED;
    EulerMultiplicationIntegral => "euler-multiplication-integral", ["m", "n"], ONE_QUADRATURE;
    GammaEngines => "gamma-engines", ["x"], 1e-8;
    GammaFractionProduct => "gamma-fraction-product", ["n"], CLOSED;
    GammaSquareProduct => "gamma-square-product", ["n"], CLOSED;
    GaussMultiplication => "gauss-multiplication", ["n", "x"], CLOSED;
    LogIntegralProduct => "log-integral-product", ["n"], ONE_QUADRATURE;
    Reflection => "reflection", ["x"], CLOSED;
    ReflectionBracket => "reflection-bracket", ["lambda"], CLOSED;
    SineMultipleAngle => "sine-multiple-angle", ["n", "phi"], CLOSED;
    SineProduct => "sine-product", ["n"], CLOSED;
    SymbolBetaBridge => "symbol-beta-bridge", ["n", "p", "q"], ONE_QUADRATURE;
    SymbolSymmetry => "symbol-symmetry", ["n", "p", "q"], ONE_QUADRATURE;
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        IdentityId::ALL
            .iter()
            .copied()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::domain(format!("unknown identity '{s}'")))
    }
}

/// Whether `lhs`/`rhs` hold the compared quantities or their natural logs.
/// Log scale is only used when a side does not fit in binary64.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    Linear,
    Log,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity_id: IdentityId,
    pub params: BTreeMap<String, f64>,
    #[serde(with = "nullable_f64")]
    pub lhs: f64,
    #[serde(with = "nullable_f64")]
    pub rhs: f64,
    #[serde(with = "nullable_f64")]
    pub abs_residual: f64,
    #[serde(with = "nullable_f64")]
    pub rel_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub scale: Scale,
    /// False when any quadrature feeding either side stopped short of its
    /// error target.
    pub converged: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time: Option<Duration>,
}

pub type Params = BTreeMap<String, f64>;

pub(crate) fn params(pairs: &[(&str, f64)]) -> Params {
    pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}

impl IdentityReport {
    pub(crate) fn linear(identity_id: IdentityId, params: Params, lhs: f64, rhs: f64) -> Self {
        let mut report = Self {
            identity_id,
            params,
            lhs,
            rhs,
            abs_residual: (lhs - rhs).abs(),
            rel_residual: (lhs - rhs).abs() / lhs.abs().max(rhs.abs()).max(f64::MIN_POSITIVE),
            tolerance: identity_id.default_tolerance(),
            passed: false,
            scale: Scale::Linear,
            converged: true,
            error: None,
            wall_time: None,
        };
        report.passed = report.evaluate();
        report
    }

    /// Compares two positive quantities given by their logs. Both sides are
    /// exponentiated unless one of them leaves the normal binary64 range.
    pub(crate) fn from_logs(identity_id: IdentityId, params: Params, log_lhs: f64, log_rhs: f64) -> Self {
        let (lhs, rhs) = (log_lhs.exp(), log_rhs.exp());
        if lhs.is_normal() && rhs.is_normal() {
            Self::linear(identity_id, params, lhs, rhs)
        } else {
            Self {
                scale: Scale::Log,
                ..Self::linear(identity_id, params, log_lhs, log_rhs)
            }
        }
    }

    /// A report for a check that could not be evaluated.
    pub(crate) fn errored(identity_id: IdentityId, params: Params, err: &Error) -> Self {
        Self {
            identity_id,
            params,
            lhs: f64::NAN,
            rhs: f64::NAN,
            abs_residual: f64::NAN,
            rel_residual: f64::NAN,
            tolerance: identity_id.default_tolerance(),
            passed: false,
            scale: Scale::Linear,
            converged: false,
            error: Some(err.to_string()),
            wall_time: None,
        }
    }

    pub(crate) fn with_converged(mut self, converged: bool) -> Self {
        self.converged = converged;
        self
    }

    /// Re-judges the report against a different tolerance.
    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self.passed = self.evaluate();
        self
    }

    fn evaluate(&self) -> bool {
        if self.error.is_some() || !(self.lhs.is_finite() && self.rhs.is_finite()) {
            return false;
        }
        if self.lhs.abs() < NEAR_ZERO && self.rhs.abs() < NEAR_ZERO {
            self.abs_residual <= self.tolerance
        } else {
            self.rel_residual <= self.tolerance
        }
    }
}

/// Non-finite values travel through JSON as `null`.
mod nullable_f64 {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else {
            s.serialize_none()
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
    }
}
