use crate::key_sequence::{KeySequenceError, ReconstructionError};
use crate::symbolic::SymbolicError;

/// Precondition and consistency failures shared by the analysis modules.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    KeySequence(#[from] KeySequenceError),
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
    #[error(transparent)]
    Reconstruction(#[from] ReconstructionError),
    #[error("key sequence is not primitive")]
    NonPrimitive,
    #[error("key sequence is not algebraic")]
    NotAlgebraic,
    #[error("key sequence is not in normal form")]
    NotNormalForm,
    #[error("θ vectors must have length {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("θ entries must be nonzero")]
    ZeroTheta,
    #[error("the surface carries no G_a^2-structure")]
    NoG2aStructure,
    #[error("the projective plane is handled separately")]
    IsP2,
    #[error("moduli are a line only when n ≥ 1 and m > 0")]
    NotALine,
    #[error("invalid locator: {0}")]
    InvalidLocator(String),
    #[error("{0} and {1} are not coprime")]
    NotCoprime(i64, i64),
    #[error("need p > q ≥ 1, got {0}/{1}")]
    NotOrdered(i64, i64),
    /// A computed quantity broke an identity that holds for every valid input.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
