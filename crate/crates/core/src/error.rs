//! Error types shared by the library: parse errors, contract breaches,
//! certified invariant violations, and budget exhaustion.

use thiserror::Error;

/// A certified invariant violation.
///
/// Violations are raised when a structural guarantee that the solvers rely on
/// fails to hold at run time (for example a quota that should have decreased
/// did not, or a guaranteed pivot vertex does not exist). The certificate
/// carries the vertices involved so the failure can be reproduced and
/// inspected; solvers abort on violations rather than falling back to
/// brute force.
#[derive(Debug, Clone, Error)]
#[error("{context}: {detail} (vertices {vertices:?})")]
pub struct Violation {
    /// Which invariant broke, e.g. `"success-quota"`.
    pub context: String,
    /// Human-readable description of the failure.
    pub detail: String,
    /// The vertices witnessing the failure, in the ambient graph's indexing.
    pub vertices: Vec<usize>,
}

impl Violation {
    pub fn new(context: impl Into<String>, detail: impl Into<String>, vertices: Vec<usize>) -> Self {
        Violation { context: context.into(), detail: detail.into(), vertices }
    }
}

/// Unified error type for the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// A caller broke a documented precondition.
    #[error("contract violation in {op}: {msg}")]
    Contract { op: &'static str, msg: String },

    /// A run-time invariant failed; carries a certificate.
    #[error(transparent)]
    Violation(#[from] Violation),

    #[error("node budget of {budget} exhausted after expanding {used} nodes")]
    NodeBudget { budget: u64, used: u64 },

    #[error("time budget of {budget_secs} s exhausted")]
    TimeBudget { budget_secs: u64 },

    #[error("witness budget of {budget} exhausted during {op}")]
    WitnessBudget { op: &'static str, budget: u64 },

    #[error("rejection budget of {budget} exhausted without producing a matching instance")]
    RejectionBudget { budget: u64 },

    #[error("weight arithmetic overflow during {0}")]
    Overflow(&'static str),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn contract(op: &'static str, msg: impl Into<String>) -> Self {
        Error::Contract { op, msg: msg.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
