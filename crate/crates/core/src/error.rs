use alloc::string::String;
use core::fmt;

/// Errors raised by constructors and operations in this crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Input data violates a structural invariant (group axioms, coset
    /// conditions, functor laws, ...).
    Validation(String),
    /// Two values that must line up (shapes, sources/targets, arities) do not.
    Shape(String),
    /// A closure or enumeration grew past its configured cap.
    Size { what: &'static str, limit: usize },
    /// A precondition on the arguments was not met.
    Precondition(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Validation(msg) => write!(f, "validation error: {msg}"),
            Error::Shape(msg) => write!(f, "shape mismatch: {msg}"),
            Error::Size { what, limit } => write!(f, "{what} exceeds cap of {limit}"),
            Error::Precondition(msg) => write!(f, "precondition failed: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

macro_rules! validation {
    ($($arg:tt)*) => { $crate::error::Error::Validation(alloc::format!($($arg)*)) };
}
macro_rules! shape {
    ($($arg:tt)*) => { $crate::error::Error::Shape(alloc::format!($($arg)*)) };
}
pub(crate) use shape;
pub(crate) use validation;
