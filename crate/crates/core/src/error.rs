use thiserror::Error;

use crate::formula::Variable;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A clause contained some variable with both polarities.
    #[error("tautological clause: variable occurs with both polarities")]
    Tautological,

    /// Input text could not be parsed.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// The formula admits no weakly simplicial elimination ordering.
    #[error("formula is not beta-acyclic")]
    NotBetaAcyclic,

    /// An elimination step was attempted on a variable that fails (*).
    #[error("variable at step {step} is not DP-simplicial in the current formula")]
    NotDpSimplicialAt { step: usize, var: Variable },

    /// A certificate was requested from a trace that cannot supply it.
    #[error("invalid elimination trace: {0}")]
    InvalidTrace(String),

    /// A brute-force guard was tripped.
    #[error("instance too large: {0}")]
    TooLarge(String),

    /// Some member of a set family is empty, so no hitting set exists.
    #[error("no hitting set: the family contains an empty set")]
    NoHittingSet,

    /// A generator received an input outside its domain.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A generator parameter was out of its documented range.
    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    /// A k-partite graph instance has partition classes of unequal size.
    #[error("k-partite graph is not balanced")]
    NotBalanced,

    /// The number of partition classes is below the required minimum.
    #[error("k must be at least 2")]
    BadK,

    /// The claimed backdoor leaves some reduct outside the class.
    #[error("not a strong backdoor: some reduct is not beta-acyclic")]
    NotABackdoor,

    /// CLI usage error.
    #[error("usage error: {0}")]
    Usage(String),
}
