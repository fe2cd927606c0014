use thiserror::Error;

/// Errors raised by evaluation and verification routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input lies outside the domain on which the routine is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// The coefficient table ran out before the truncation bound reached the
    /// requested tolerance.
    #[error(
        "coefficient table exhausted at index {max_index}: tail bound {achieved:e} exceeds tolerance {tol:e}"
    )]
    TableExhausted {
        max_index: usize,
        achieved: f64,
        tol: f64,
    },

    /// cn vanished (or went negative) where a quotient by it was required.
    #[error("pole: cn({u}, {m1}) = {cn:e} is not positive")]
    Pole { u: f64, m1: f64, cn: f64 },

    /// Two independent routes to the same quantity disagreed.
    #[error("consistency check failed for {what}: analytic {analytic:e}, finite difference {numeric:e}")]
    Consistency {
        what: String,
        analytic: f64,
        numeric: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
