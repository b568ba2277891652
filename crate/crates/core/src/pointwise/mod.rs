//! Pointwise suprema and infima of families in R(L), and the constructions
//! that witness their failure: separating morphisms, `χ` witnesses,
//! truncate sequences and mobility of downsets.

mod chi;
mod mobility;
mod separate;
mod truncate;
mod verdict;

pub use chi::{auto_s, witness_chi, ChiWitness};
pub use mobility::{is_mobile, mobility_by_simulation, DownsetSpec, Mobility};
pub use separate::{
    push, separating_morphism, separating_morphism_const, SeparationCertificate, SeparationKind, Separator,
};
pub use truncate::{reconstruct, validate_truncate_seq, Reconstruction, Tail, TruncReport, TruncSeq};
pub use verdict::{
    check_pointwise_inf, check_pointwise_sup, translate_family, verdict_grid, FailingRay, PointwiseVerdict,
};

use crate::rl::RlError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PwError {
    #[error(transparent)]
    Rl(#[from] RlError),
    #[error("IsPointwise: nothing to separate")]
    IsPointwise,
    #[error("HypothesisFailed: {0}")]
    HypothesisFailed(String),
    #[error("NotATruncateSequence: condition ({condition}) fails at n={witness}")]
    NotATruncateSequence { condition: u8, witness: usize },
    #[error("EmptyDownset: a downset needs at least one generator")]
    EmptyDownset,
    #[error("DimensionMismatch: {0}")]
    DimensionMismatch(String),
}

impl From<crate::frame::FrameError> for PwError {
    fn from(e: crate::frame::FrameError) -> PwError {
        PwError::Rl(RlError::Frame(e))
    }
}

impl PwError {
    pub fn kind(&self) -> &'static str {
        match self {
            PwError::Rl(e) => e.kind(),
            PwError::IsPointwise => "IsPointwise",
            PwError::HypothesisFailed(_) => "HypothesisFailed",
            PwError::NotATruncateSequence { .. } => "NotATruncateSequence",
            PwError::EmptyDownset => "EmptyDownset",
            PwError::DimensionMismatch(_) => "DimensionMismatch",
        }
    }
}
