use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::model::Violation;

/// Errors raised by the algebraic engine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Operands were built over different generator sets.
    ModelMismatch { expected: usize, found: usize },
    /// A generator declaration is unusable (degree below 2, duplicate name).
    InvalidGenerator(String),
    /// The model failed validation; every violation is listed.
    InvalidModel(Vec<Violation>),
    /// The operation does not accept this input shape.
    Unsupported(String),
    /// Top cohomology is not one-dimensional.
    NotPoincare { degree: i64, dimension: usize },
    /// A truncated computation could not be certified.
    Undetermined(String),
    /// A value was requested beyond the truncation degree.
    Truncation { required_cap: u32 },
    /// The computation needs an explicit degree cap (non-elliptic input).
    CapRequired,
    /// Input violates the operation's precondition.
    ContractViolation(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ModelMismatch { expected, found } => write!(
                f,
                "model mismatch: expected {expected} generators, found {found}"
            ),
            Error::InvalidGenerator(msg) => write!(f, "invalid generator: {msg}"),
            Error::InvalidModel(violations) => {
                write!(f, "invalid model:")?;
                for v in violations {
                    write!(f, " [{v}]")?;
                }
                Ok(())
            }
            Error::Unsupported(msg) => write!(f, "unsupported input: {msg}"),
            Error::NotPoincare { degree, dimension } => write!(
                f,
                "not a Poincaré duality algebra: dim H^{degree} = {dimension}"
            ),
            Error::Undetermined(msg) => write!(f, "undetermined: {msg}"),
            Error::Truncation { required_cap } => {
                write!(f, "truncation exceeded: rebuild with cap >= {required_cap}")
            }
            Error::CapRequired => write!(f, "an explicit degree cap is required for non-elliptic input"),
            Error::ContractViolation(msg) => write!(f, "contract violation: {msg}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
