//! Floating-point experiments built on the exact layer: spin sums, cube
//! proportions, the Poisson window check and short character sums.

pub mod characters;
pub mod poisson;
pub mod sums;
