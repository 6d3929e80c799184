//! The integer scalar abstraction shared by every exact type in the crate.
//!
//! All ring arithmetic is written once against [`Int`] and instantiated for
//! `i64`, `i128` and [`num_bigint::BigInt`]. The concrete aliases used by the
//! enumeration code live at the crate root.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// A signed integer type usable as a coefficient ring.
pub trait Int:
    Integer + Signed + Clone + Debug + Display + Hash + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    fn from_i64_exact(v: i64) -> Self {
        Self::from_i64(v).expect("i64 fits every scalar")
    }
}

impl<T> Int for T where
    T: Integer + Signed + Clone + Debug + Display + Hash + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
}

#[inline]
pub(crate) fn int<T: Int>(v: i64) -> T {
    T::from_i64_exact(v)
}

/// Round `num / den` to the nearest integer, ties toward negative infinity.
/// `den` must be positive.
#[inline]
pub(crate) fn round_half_down<T: Int>(num: &T, den: &T) -> T {
    // ceil((2 num - den) / (2 den))
    let two = int::<T>(2);
    let top = two.clone() * num.clone() - den.clone();
    let bottom = two * den.clone();
    -((-top).div_floor(&bottom))
}

/// Value of `v` reduced into `[0, m)`.
#[inline]
pub(crate) fn rem_pos<T: Int>(v: &T, m: i64) -> i64 {
    v.mod_floor(&int::<T>(m)).to_i64().expect("residue fits i64")
}
