//! Spatial ground truth: rational functions on a finite discrete space and
//! eventually constant sequences on ω+1, their representation in R(L), and
//! the kernel lattice of `ℚ^X`.

mod kernel;
mod oracle;
mod sequence;
mod vector;

pub use kernel::{
    cor4_check, cor4_member, is_pointwise_closed, is_w_kernel, kernel_generated, madden_frame, pos_levels, prop1_holds,
    ClosureReport, KernelReport, MaddenFrame, SubgroupSpec, SupportSubgroup,
};
pub use oracle::{
    describe_family, oracle_sup_check, oracle_sup_check_omega, prefix_indicators_match, OmegaFamily, OracleReport,
};
pub use sequence::EventuallyConstant;
pub use vector::{
    render_vec, support, vec_abs, vec_add, vec_add_const, vec_join, vec_leq, vec_meet, vec_pos, vec_scale, vec_sub,
    DiscreteSpace, QVec,
};

use crate::pointwise::PwError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiscreteError {
    #[error("NotConvex: {0}")]
    NotConvex(String),
    #[error("DimensionMismatch: {0}")]
    DimensionMismatch(String),
    #[error(transparent)]
    Pointwise(#[from] PwError),
}

impl DiscreteError {
    pub fn kind(&self) -> &'static str {
        match self {
            DiscreteError::NotConvex(_) => "NotConvex",
            DiscreteError::DimensionMismatch(_) => "DimensionMismatch",
            DiscreteError::Pointwise(e) => e.kind(),
        }
    }
}
