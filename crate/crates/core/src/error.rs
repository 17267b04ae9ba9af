use thiserror::Error;

/// Errors raised by map evaluation, closed forms and the verification helpers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A point lies outside the interval on which a map or coordinate change is defined.
    #[error("{x} is outside the domain {domain}")]
    Domain { x: f64, domain: String },

    /// Iteration left the domain; `step` is the index of the first offending iterate.
    #[error("iterate {step} left the domain (value {x})")]
    Escaped { step: usize, x: f64 },

    /// Evaluation produced a non-finite value.
    #[error("evaluation at {x} overflowed")]
    Overflow { x: f64 },

    /// A descriptor or argument violates its invariants.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// An iteration count, depth or sample count exceeds a documented cap.
    #[error("out of range: {0}")]
    Range(String),

    #[error("imaginary residue {im} too large for real part {re}")]
    ImaginaryResidue { re: f64, im: f64 },

    #[error("sample is empty")]
    EmptySample,
}

impl Error {
    pub(crate) fn domain(x: f64, domain: impl ToString) -> Self {
        Error::Domain {
            x,
            domain: domain.to_string(),
        }
    }

    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    /// True for every flavour of domain violation, overflow included.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::Domain { .. } | Error::Escaped { .. } | Error::Overflow { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
