//! Cubic residue symbols on the Eisenstein integers and the cubic spin of
//! prime ideals of Z[ζ12].
//!
//! The exact types are generic over an integer scalar (see [`scalar::Int`]);
//! the aliases below fix the scalars used throughout the enumeration code.

pub mod analysis;
pub mod arith;
pub mod cubic;
pub mod eisenstein;
pub mod error;
pub mod ideals;
pub mod parse;
pub mod quad;
pub mod scalar;
pub mod spin;
pub mod verify;
pub mod zeta12;

use num_bigint::BigInt;

pub use cubic::{chi_prime, cubic_symbol, cubic_symbol_factored, CubicValue};
pub use eisenstein::Eisenstein;
pub use error::{Error, Result};
pub use quad::QuadSqrt3;
pub use zeta12::Cyclo12;

pub type Eis = Eisenstein<i128>;
pub type EisBig = Eisenstein<BigInt>;
pub type Z12 = Cyclo12<i128>;
pub type Z12Big = Cyclo12<BigInt>;
pub type Sqrt3 = QuadSqrt3<i128>;
