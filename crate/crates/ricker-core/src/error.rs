use alloc::string::String;
use core::fmt;

/// Failure modes shared by every operation in the crate.
///
/// `Domain` covers precondition violations (negative parameters, empty
/// sequences, seeds outside the admissible set). `Overflow` is raised when an
/// exponent exceeds the configured cap instead of letting `exp` return `inf`.
/// `Numerics` flags internal breakdowns: improper characteristic quadratics,
/// eigensequence zeros, root brackets that fail to close, cross-checks that
/// disagree.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Input outside the admissible set; the message names the offending value.
    Domain(String),
    /// An exponent exceeded the cap at the given orbit index.
    Overflow { index: usize, exponent: f64 },
    /// A numerical procedure broke down (degenerate quadratic, zero in an
    /// eigensequence, bracket failure, failed cross-check).
    Numerics(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Overflow { index, exponent } => write!(
                f,
                "overflow at step {index}: exponent {exponent:.3} exceeds cap"
            ),
            Error::Numerics(msg) => write!(f, "numerical breakdown: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn numerics(msg: impl Into<String>) -> Self {
        Error::Numerics(msg.into())
    }
}
