//! R(L) for frames with finitely many relevant values: step elements, their
//! closed-form arithmetic, the box-join lifting used as an independent
//! oracle, ray families, and the cozero/ray identity suite.

mod cor1;
mod family;
mod lift;
mod step;

pub use cor1::{cor1_check, Cor1Case, Cor1Report, COR1_IDENTITIES};
pub use family::{ExplicitFamily, PrefixIndicators, RayFamily, Shifted, TruncateFamily};
pub use lift::{lift, PlTerm, DEFAULT_MAX_GRID};
pub use step::{cell_reps, Interval, Rl, Step};

use crate::frame::FrameError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RlError {
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error("Malformed: {0}")]
    Malformed(String),
    #[error("BoundaryNotTopBottom: {0}")]
    BoundaryNotTopBottom(String),
    /// Index of the first value `v_i` with `v_i ≺ v_i` or `v_i ≺ v_{i-1}` failing.
    #[error("NotRatherBelow({0})")]
    NotRatherBelow(usize),
    #[error("NotComplemented: {0}")]
    NotComplemented(String),
    #[error("NotNonNegative: element takes negative values")]
    NotNonNegative,
    #[error("GridOverflow: {needed} grid points exceed the cap of {cap}")]
    GridOverflow { needed: usize, cap: usize },
    #[error("StabilizationNotReached({0})")]
    StabilizationNotReached(usize),
    #[error("FamilyOracleInvalid: {0}")]
    FamilyOracleInvalid(String),
}

impl RlError {
    pub fn kind(&self) -> &'static str {
        match self {
            RlError::Frame(e) => e.kind(),
            RlError::Malformed(_) => "Malformed",
            RlError::BoundaryNotTopBottom(_) => "BoundaryNotTopBottom",
            RlError::NotRatherBelow(_) => "NotRatherBelow",
            RlError::NotComplemented(_) => "NotComplemented",
            RlError::NotNonNegative => "NotNonNegative",
            RlError::GridOverflow { .. } => "GridOverflow",
            RlError::StabilizationNotReached(_) => "StabilizationNotReached",
            RlError::FamilyOracleInvalid(_) => "FamilyOracleInvalid",
        }
    }
}
