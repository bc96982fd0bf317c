use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain where the quantity is defined.
    #[error("{what}: argument {value} outside domain {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: String,
    },

    /// A theorem-backed bound was requested outside the parameter regime it holds in.
    #[error("{what}: regime violated ({condition})")]
    Regime { what: &'static str, condition: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// An integrand produced a non-finite value.
    #[error("{what}: non-finite value at x = {x}")]
    Evaluation { what: &'static str, x: f64 },

    #[error("{0}: intermediate overflow")]
    Range(&'static str),

    #[error("Newton iteration for Gauss-Legendre node {index} of order {order} did not converge")]
    Convergence { order: usize, index: usize },

    /// Eigenvalues did not agree between order K and the refined order.
    #[error("spectrum not certified: lambda_{index} differs by {gap:e} between K={order} and K={refined}")]
    NotCertified {
        order: usize,
        refined: usize,
        index: usize,
        gap: f64,
    },

    #[error("signal {name}: {reason}")]
    Signal { name: String, reason: String },

    #[error("signal {0} is not square integrable against the Chebyshev weight")]
    ChebyshevIntegrability(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(what: &'static str, value: f64, domain: impl Into<String>) -> Error {
    Error::Domain {
        what,
        value,
        domain: domain.into(),
    }
}

pub(crate) fn regime(what: &'static str, condition: impl Into<String>) -> Error {
    Error::Regime {
        what,
        condition: condition.into(),
    }
}
