//! Error types shared by all evaluation paths.

use alloc::string::String;
use core::fmt;

/// Everything that can go wrong during an evaluation.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Gamma/digamma pole at a non-positive integer.
    Pole { at: crate::Complex },
    /// A magnitude left the representable range.
    Overflow,
    /// A series or quadrature did not reach the requested tolerance.
    NonConvergence { terms_used: usize, est_abs_error: f64 },
    /// Input outside the operation's domain (e.g. on a branch cut
    /// without a side tag, or |z| >= 1 for the T series).
    Domain(String),
    /// A validity inequality of the integral family is violated; the
    /// message names the violated condition.
    Validity(String),
    /// The doubly-degenerate integer case `ρ ∈ ℤ` and
    /// `(1-ρ±μ+ν)/2 ∈ ℤ`, which this evaluator does not cover.
    DegenerateUnsupported(String),
    /// A coefficient cannot supply derivatives of the order a pairing
    /// requires.
    InsufficientDerivOrder { required: usize, available: usize },
    /// Adaptive quadrature gave up.
    QuadratureFailure { panels: usize, est_abs_error: f64 },
    /// Successive Richardson extrapolants diverged.
    ExtrapolationUnstable,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Pole { at } => write!(f, "pole at z = {at}"),
            Error::Overflow => write!(f, "magnitude overflow"),
            Error::NonConvergence {
                terms_used,
                est_abs_error,
            } => write!(
                f,
                "no convergence after {terms_used} terms (est. error {est_abs_error:e})"
            ),
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Validity(msg) => write!(f, "validity condition violated: {msg}"),
            Error::DegenerateUnsupported(msg) => {
                write!(f, "unsupported degenerate case: {msg}")
            }
            Error::InsufficientDerivOrder {
                required,
                available,
            } => write!(
                f,
                "coefficient supplies derivatives to order {available}, pairing needs {required}"
            ),
            Error::QuadratureFailure {
                panels,
                est_abs_error,
            } => write!(
                f,
                "quadrature failed after {panels} panels (est. error {est_abs_error:e})"
            ),
            Error::ExtrapolationUnstable => write!(f, "extrapolation unstable"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
