use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the function or identity.
    #[error("{0}")]
    Domain(String),

    #[error("invalid quadrature configuration: {0}")]
    InvalidConfig(String),

    #[error("integrand not finite at x = {x}")]
    NonFiniteIntegrand { x: f64 },

    #[error("tail not integrable at configured threshold {threshold:e}")]
    TailNotIntegrable { threshold: f64 },

    /// The result is positive but exceeds the binary64 range.
    #[error("gamma({x}) overflows binary64")]
    Overflow { x: f64 },

    #[error("suite grid is empty")]
    EmptyGrid,
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
