//! One error type for the whole crate.

use crate::psi::{SolveMethod, SolveStatus};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Both blocks of the ambient space must be nonempty.
    #[error("block sizes must be positive, got p={p}, q={q}")]
    InvalidDims { p: usize, q: usize },

    #[error("{what}: expected length {expected}, got {got}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("{what} contains a non-finite entry")]
    NonFinite { what: &'static str },

    #[error("lambda must be nonnegative and finite, got {0}")]
    NegativeLambda(f64),

    #[error("norm-block magnitude must be positive and finite, got {0}")]
    InvalidWNorm(f64),

    /// The scalar problem does not satisfy the general-case conditions
    /// (some `z_i^+ < ||w||` and `sum z_i^- < ||w||`).
    #[error("not a general-case problem: {reason}")]
    InvalidProblem { reason: String },

    /// A scalar solver stopped without a certified root.
    #[error("{method} solver failed ({status}): {detail}")]
    SolveFailed {
        method: SolveMethod,
        status: SolveStatus,
        detail: String,
    },

    #[error("sign-pattern enumeration allows p <= {max_p}, got p={p}")]
    PatternSpaceTooLarge { p: usize, max_p: usize },

    /// Exhaustive enumeration rejected every sign pattern; the nearest miss
    /// is reported as a `+`/`-` string over the order block.
    #[error("no consistent sign pattern; nearest miss {pattern} violates by {violation:.3e}")]
    NoConsistentPattern { pattern: String, violation: f64 },

    #[error("the closed-form second order cone path needs p = 1, got p = {0}")]
    ClosedFormNeedsScalarBlock(usize),

    /// The decomposition certificate of a freshly computed projection did not
    /// pass even after the rescue pass. Not expected on well-formed input.
    #[error("projection certificate failed: max residual {residual:.3e} exceeds relative tolerance {tol:.3e}")]
    CertificateFailure { residual: f64, tol: f64 },

    #[error("could not generate a case-{target} instance within {attempts} attempts")]
    GenerationBudget { target: u8, attempts: usize },

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("serialization: {0}")]
    Json(#[from] serde_json::Error),
}
