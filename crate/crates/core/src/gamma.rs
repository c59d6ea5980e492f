//! The Gamma function on the positive real axis.
//!
//! Two independent engines are provided:
//!
//! * [`gamma_reference`] / [`log_gamma`]: a Lanczos approximation with
//!   `g = 6.024680040776729583740234375` and a 13-term rational sum
//!   (the coefficient set used by CPython's `math.gamma`), plus an exact
//!   table for integer arguments up to 22.
//! * [`gamma_integral`] / [`gamma_log_integral`]: direct quadrature of the
//!   integrals `∫_0^∞ e^{-t} t^{x-1} dt` and `∫_0^1 (-ln x)^s dx`.
//!
//! Neither engine uses the reflection or multiplication formulas, so the
//! identity checks built on top of them are not circular.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{integrate_finite_nodes, integrate_semi_infinite, IntegralEstimate, QuadratureConfig};

const LANCZOS_N: usize = 13;
#[allow(clippy::excessive_precision)]
const LANCZOS_G: f64 = 6.024680040776729583740234375;
#[allow(clippy::excessive_precision)]
const LANCZOS_G_MINUS_HALF: f64 = 5.524680040776729583740234375;
#[allow(clippy::excessive_precision)]
const LANCZOS_NUM: [f64; LANCZOS_N] = [
    23531376880.410759688572007674451636754734846804940,
    42919803642.649098768957899047001988850926355848959,
    35711959237.355668049440185451547166705960488635843,
    17921034426.037209699919755754458931112671403265390,
    6039542586.3520280050642916443072979210699388420708,
    1439720407.3117216736632230727949123939715485786772,
    248874557.86205415651146038641322942321632125127801,
    31426415.585400194380614231628318205362874684987640,
    2876370.6289353724412254090516208496135991145378768,
    186056.26539522349504029498971604569928220784236328,
    8071.6720023658162106380029022722506138218516325024,
    210.82427775157934587250973392071336271166969580291,
    2.5066282746310002701649081771338373386264310793408,
];
// Coefficients of x(x+1)...(x+11), lowest degree first.
const LANCZOS_DEN: [f64; LANCZOS_N] = [
    0.0,
    39916800.0,
    120543840.0,
    150917976.0,
    105258076.0,
    45995730.0,
    13339535.0,
    2637558.0,
    357423.0,
    32670.0,
    1925.0,
    66.0,
    1.0,
];

/// `(k-1)!` for `k = 1..=22`, all exactly representable.
const FACTORIALS: [f64; 23] = [
    1.0,
    1.0,
    2.0,
    6.0,
    24.0,
    120.0,
    720.0,
    5040.0,
    40320.0,
    362880.0,
    3628800.0,
    39916800.0,
    479001600.0,
    6227020800.0,
    87178291200.0,
    1307674368000.0,
    20922789888000.0,
    355687428096000.0,
    6402373705728000.0,
    121645100408832000.0,
    2432902008176640000.0,
    51090942171709440000.0,
    1124000727777607680000.0,
];

/// Below this the integral engine shifts the argument up by one and divides.
const INTEGRAL_RECURRENCE_BELOW: f64 = 0.1;

/// A validated positive argument of Γ, optionally remembering that it arose
/// as the ratio `num/den`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaArg {
    x: f64,
    ratio: Option<(u64, u64)>,
}

impl GammaArg {
    pub fn new(x: f64) -> Result<Self> {
        if x > 0.0 && x.is_finite() {
            Ok(Self { x, ratio: None })
        } else {
            Err(Error::domain(format!(
                "gamma argument must be positive and finite, got {x}"
            )))
        }
    }

    /// `num/den` reduced to lowest terms.
    pub fn ratio(num: u64, den: u64) -> Result<Self> {
        if num == 0 || den == 0 {
            return Err(Error::domain(format!("ratio {num}/{den} must have positive terms")));
        }
        let g = num.gcd(&den);
        let (num, den) = (num / g, den / g);
        Ok(Self {
            x: num as f64 / den as f64,
            ratio: Some((num, den)),
        })
    }

    pub fn value(&self) -> f64 {
        self.x
    }

    pub fn as_ratio(&self) -> Option<(u64, u64)> {
        self.ratio
    }
}

impl TryFrom<f64> for GammaArg {
    type Error = Error;

    fn try_from(x: f64) -> Result<Self> {
        Self::new(x)
    }
}

fn lanczos_sum(x: f64) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    // For large x, evaluate as a rational function of 1/x to avoid overflow.
    if x < 5.0 {
        for i in (0..LANCZOS_N).rev() {
            num = num * x + LANCZOS_NUM[i];
            den = den * x + LANCZOS_DEN[i];
        }
    } else {
        for i in 0..LANCZOS_N {
            num = num / x + LANCZOS_NUM[i];
            den = den / x + LANCZOS_DEN[i];
        }
    }
    num / den
}

fn integer_value(x: f64) -> Option<usize> {
    (x == x.floor() && x >= 1.0 && x < FACTORIALS.len() as f64).then_some(x as usize)
}

/// Γ(x) for `x > 0` via the Lanczos engine.
///
/// Returns [`Error::Overflow`] above x ≈ 171.62; use [`log_gamma`] there.
pub fn gamma_reference(x: f64) -> Result<f64> {
    let x = GammaArg::new(x)?.value();
    if let Some(k) = integer_value(x) {
        return Ok(FACTORIALS[k - 1]);
    }
    if x < 1e-20 {
        return Ok(1.0 / x);
    }
    if x > 200.0 {
        return Err(Error::Overflow { x });
    }

    let y = x + LANCZOS_G_MINUS_HALF;
    // Recover the rounding error committed when forming y.
    let z = if x > LANCZOS_G_MINUS_HALF {
        (y - x) - LANCZOS_G_MINUS_HALF
    } else {
        (y - LANCZOS_G_MINUS_HALF) - x
    };
    let z = z * LANCZOS_G / y;

    let mut r = lanczos_sum(x) / y.exp();
    r += z * r;
    if x < 140.0 {
        r *= y.powf(x - 0.5);
    } else {
        let root = y.powf(x / 2.0 - 0.25);
        r *= root;
        r *= root;
    }
    if r.is_finite() {
        Ok(r)
    } else {
        Err(Error::Overflow { x })
    }
}

/// ln Γ(x) for `x > 0`. Finite for every finite positive argument.
pub fn log_gamma(x: f64) -> Result<f64> {
    let x = GammaArg::new(x)?.value();
    if x == 1.0 || x == 2.0 {
        return Ok(0.0);
    }
    if x < 1e-20 {
        return Ok(-x.ln());
    }
    let r = lanczos_sum(x).ln() - LANCZOS_G;
    Ok(r + (x - 0.5) * ((x + LANCZOS_G_MINUS_HALF).ln() - 1.0))
}

/// Γ(x) by quadrature of `∫_0^∞ e^{-t} t^{x-1} dt`.
///
/// For `x < 0.1` the `t^{x-1}` singularity is avoided by integrating
/// Γ(x + 1) and dividing by `x`.
pub fn gamma_integral(x: f64, cfg: &QuadratureConfig) -> Result<IntegralEstimate> {
    let x = GammaArg::new(x)?.value();
    if x < INTEGRAL_RECURRENCE_BELOW {
        return Ok(gamma_integral(x + 1.0, cfg)?.scaled(1.0 / x));
    }
    let power = x - 1.0;
    integrate_semi_infinite(
        |t| {
            if power == 0.0 {
                (-t).exp()
            } else {
                (power * t.ln() - t).exp()
            }
        },
        0.0,
        cfg,
    )
}

/// `∫_0^1 (-ln x)^s dx`, which equals Γ(s + 1).
pub fn gamma_log_integral(s: f64, cfg: &QuadratureConfig) -> Result<IntegralEstimate> {
    if !(s >= 0.0 && s.is_finite()) {
        return Err(Error::domain(format!(
            "log-integral exponent must be non-negative, got {s}"
        )));
    }
    integrate_finite_nodes(
        |node| {
            // -ln x, accurate at both ends of (0, 1).
            let minus_log = if node.from_upper < 0.5 {
                -(-node.from_upper).ln_1p()
            } else {
                -node.from_lower.ln()
            };
            minus_log.powf(s)
        },
        0.0,
        1.0,
        cfg,
    )
}

/// Euler's bracket `[λ] = λ! = Γ(1 + λ)` for `λ > -1`.
pub fn factorial_interp(lambda: f64) -> Result<f64> {
    if !(lambda > -1.0 && lambda.is_finite()) {
        return Err(Error::domain(format!(
            "factorial argument must exceed -1, got {lambda}"
        )));
    }
    gamma_reference(1.0 + lambda)
}
