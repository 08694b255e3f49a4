use thiserror::Error;

/// Errors raised by the significand, distribution, conformance and range
/// operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum BenfordError {
    #[error("non-finite input: {0}")]
    NonFinite(f64),

    #[error("{name} = {value} is outside the domain {domain}")]
    Domain {
        name: &'static str,
        value: String,
        domain: &'static str,
    },

    #[error("invalid range [{a}, {b}]: requires 0 < a < b, both finite")]
    InvalidRange { a: f64, b: f64 },

    #[error("invalid distribution parameters: {0}")]
    InvalidSpec(String),

    #[error("empty sample: no nonzero values to analyse")]
    EmptySample,

    #[error("{name} = {value} is outside the open interval ({lo}, {hi})")]
    ParameterOutOfRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("range [{a}, {b}] is not in the {expected} case")]
    WrongCase {
        a: f64,
        b: f64,
        expected: &'static str,
    },
}

impl BenfordError {
    pub(crate) fn domain(name: &'static str, value: impl ToString, domain: &'static str) -> Self {
        BenfordError::Domain {
            name,
            value: value.to_string(),
            domain,
        }
    }
}

pub type Result<T> = std::result::Result<T, BenfordError>;
