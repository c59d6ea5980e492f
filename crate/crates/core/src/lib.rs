//! Gamma, Beta and Euler's integral symbol on the positive reals, each with a
//! closed-form engine and an independent quadrature engine, plus a suite of
//! identity checks that certify the classical product formulas for Γ
//! (reflection, the sine products, Gauss multiplication and Euler's
//! symbol-based form of it) over parameter grids.

pub mod beta;
pub mod error;
pub mod format;
pub mod gamma;
pub mod identities;
pub mod quadrature;
pub mod report;

pub use beta::{beta_closed, beta_integral, euler_symbol, euler_symbol_closed, BetaArgs, EulerSymbolParams};
pub use error::{Error, Result};
pub use gamma::{factorial_interp, gamma_integral, gamma_log_integral, gamma_reference, log_gamma, GammaArg};
pub use identities::{IdentityId, IdentityReport, SuiteGrid, SuiteReport, Tolerances};
pub use quadrature::{
    integrate_finite, integrate_finite_nodes, integrate_semi_infinite, IntegralEstimate, Node, QuadratureConfig,
};
