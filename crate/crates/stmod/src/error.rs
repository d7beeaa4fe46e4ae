//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("incompatible modules: {0}")]
    IncompatibleModules(String),

    #[error("not a valid module: {0}")]
    InvalidModule(String),

    #[error("not a module homomorphism: {0}")]
    NotEquivariant(String),

    #[error("pi-point has zero linear part")]
    ZeroLinearPart,

    #[error("truncation too short: need {needed}, have {have}")]
    TruncationTooShort { needed: usize, have: usize },

    #[error("stable range exceeded: {0}")]
    StableRangeExceeded(String),

    #[error("generator extraction unstabilized at truncation {0}")]
    Unstabilized(usize),

    #[error("stabilization guard failed: {0}")]
    GuardFailed(String),

    #[error("internal solve failed: {0}")]
    SolveFailed(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("schema error: {0}")]
    Schema(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
