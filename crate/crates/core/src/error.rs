use thiserror::Error;

use crate::eta::LigozatReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input lies outside the range where the construction is defined
    /// (for example `p < 5` for the prime-power generators).
    #[error("out of scope: {0}")]
    Scope(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("eta quotient is not a modular function on X0(N): {0}")]
    NotModular(LigozatReport),

    #[error("vector is not an integer combination of the ambient basis")]
    NotInLattice,

    #[error("sublattice rank {sub} differs from ambient rank {ambient}; quotient is infinite")]
    RankMismatch { ambient: usize, sub: usize },

    /// An identity that must hold by construction failed.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
