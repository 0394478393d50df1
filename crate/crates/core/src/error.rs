//! Error type shared by every module of the crate.

use thiserror::Error;

/// Everything that can go wrong when building contexts, abaci, equations or
/// running verifications.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two vectors (or a vector and a context) disagree on dimension.
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    /// The requested rank is below the minimum supported for the family.
    #[error("invalid rank {rank} for family {family}: minimum is {minimum}")]
    InvalidRank {
        family: String,
        rank: usize,
        minimum: usize,
    },

    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An abacus has the wrong shape (whole versus half, base, charge).
    #[error("shape error: {0}")]
    Shape(String),

    /// A weight difference does not lie in the root lattice.
    #[error("lattice error: {0}")]
    Lattice(String),

    /// An abacus is not in the Weyl group orbit of its weight abacus.
    #[error("abacus is not in the orbit of its weight abacus: {0}")]
    NotInOrbit(String),

    /// An operation that requires a core abacus received a non-core.
    #[error("abacus is not a core: {0}")]
    NotACore(String),

    /// Two independent computations that must agree did not.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    /// The request is outside the scope of the implemented results.
    #[error("scope error: {0}")]
    Scope(String),

    /// A textual argument could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
