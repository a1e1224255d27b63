use thiserror::Error;

/// Errors raised by the library.
///
/// The variants fall into three families which the CLI maps onto distinct
/// exit codes: domain errors (a precondition of an operation is violated),
/// resource bounds, and internal invariant failures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus e must be at least 2, got {0}")]
    InvalidModulus(i64),

    #[error("mixed moduli: e = {left} and e = {right}")]
    ContextMismatch { left: u32, right: u32 },

    #[error("segment length must be positive")]
    ZeroLengthSegment,

    #[error("multisegment {0} is not aperiodic")]
    NotAperiodic(String),

    #[error("component index {index} out of range for {len} components")]
    ComponentOutOfRange { index: usize, len: usize },

    #[error("charge {0} is not in V_l (need v_0 <= v_1 <= ... <= v_(l-1) < v_0 + e)")]
    ChargeNotNormalized(String),

    #[error("{0} is not a FLOTW multipartition for its charge")]
    NotFlotw(String),

    #[error("{0} is not a Kleshchev multipartition for its charge")]
    NotKleshchev(String),

    #[error("component count {parts} does not match charge length {charge}")]
    ChargeLength { parts: usize, charge: usize },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{what} = {got} exceeds configured bound {limit}")]
    BoundExceeded {
        what: &'static str,
        got: usize,
        limit: usize,
    },

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

/// Coarse classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Domain,
    Resource,
    Internal,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::BoundExceeded { .. } => ErrorClass::Resource,
            Error::Invariant(_) => ErrorClass::Internal,
            _ => ErrorClass::Domain,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
