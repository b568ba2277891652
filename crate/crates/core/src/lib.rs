//! Exact computation in finite frames and in R(L), the lattice-ordered group
//! of frame maps from the reals into a frame, with checkers for pointwise
//! suprema and spatial oracles that validate them.

pub mod discrete;
pub mod format;
pub mod frame;
pub mod pointwise;
pub mod random;
pub mod rational;
pub mod rl;
pub mod suites;

pub use rational::{q, Q};
