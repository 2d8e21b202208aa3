use alloc::string::String;
use core::fmt;

/// Errors surfaced by the evaluation routines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A precondition on the arguments was violated.
    Domain(String),
    /// A closed form would instantiate a divergent constant (`Li_1(1)`).
    DivergentTerm(String),
    /// A series truncation cannot reach the requested accuracy.
    Truncation(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::DivergentTerm(msg) => write!(f, "divergent term: {msg}"),
            Error::Truncation(msg) => write!(f, "truncation failure: {msg}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
