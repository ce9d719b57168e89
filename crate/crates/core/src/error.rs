use thiserror::Error;

/// Errors raised by the arithmetic layer and the group algorithms.
///
/// `Resource` is deliberately separate from every mathematical failure: it
/// means a budget ran out, never that a verdict was reached.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    DescriptorMismatch,
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("polynomial is reducible; factor {witness}")]
    Reducible { witness: String },
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("inadmissible congruence map: {0}")]
    Inadmissible(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("enumeration incomplete: at least {0} elements")]
    EnumerationIncomplete(usize),
    #[error("group is not finite")]
    NotFinite,
    #[error("finiteness undecided: {0}")]
    Undecided(String),
    #[error("no isomorphic copy found after {0} attempts")]
    AttemptsExhausted(usize),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }

    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource(_))
    }
}
