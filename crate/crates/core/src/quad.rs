//! Exact arithmetic in Z[√3], used to compare absolute values of elements of
//! Z[ζ12] without rounding.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::scalar::{int, Int};

/// `c0 + c1·√3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadSqrt3<T> {
    pub c0: T,
    pub c1: T,
}

impl<T: Int> QuadSqrt3<T> {
    pub fn new(c0: T, c1: T) -> Self {
        QuadSqrt3 { c0, c1 }
    }

    pub fn from_ints(c0: i64, c1: i64) -> Self {
        QuadSqrt3::new(int(c0), int(c1))
    }

    pub fn one() -> Self {
        QuadSqrt3::from_ints(1, 0)
    }

    /// `2 + √3`, the value of `|ε0|²`.
    pub fn fundamental() -> Self {
        QuadSqrt3::from_ints(2, 1)
    }

    /// Image under `√3 ↦ −√3`.
    pub fn conj(&self) -> Self {
        QuadSqrt3::new(self.c0.clone(), -self.c1.clone())
    }

    /// `c0² − 3c1²`.
    pub fn norm(&self) -> T {
        self.c0.clone() * self.c0.clone() - int::<T>(3) * self.c1.clone() * self.c1.clone()
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Exact sign of the real number `c0 + c1·√3`.
    pub fn signum(&self) -> Ordering {
        let s0 = self.c0.cmp(&T::zero());
        let s1 = self.c1.cmp(&T::zero());
        match (s0, s1) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (a, b) if a == b => a,
            // Opposite signs: compare c0² with 3c1².
            (a, _) => {
                let n = self.norm();
                match n.cmp(&T::zero()) {
                    Ordering::Equal => Ordering::Equal,
                    Ordering::Greater => a,
                    Ordering::Less => a.reverse(),
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        self.c0.to_f64().unwrap_or(f64::NAN) + self.c1.to_f64().unwrap_or(f64::NAN) * 3f64.sqrt()
    }
}

impl<T: Int> PartialOrd for QuadSqrt3<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Int> Ord for QuadSqrt3<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }
}

impl<'a, T: Int> Add<&'a QuadSqrt3<T>> for &'a QuadSqrt3<T> {
    type Output = QuadSqrt3<T>;
    fn add(self, o: &QuadSqrt3<T>) -> QuadSqrt3<T> {
        QuadSqrt3::new(self.c0.clone() + o.c0.clone(), self.c1.clone() + o.c1.clone())
    }
}

impl<'a, T: Int> Sub<&'a QuadSqrt3<T>> for &'a QuadSqrt3<T> {
    type Output = QuadSqrt3<T>;
    fn sub(self, o: &QuadSqrt3<T>) -> QuadSqrt3<T> {
        QuadSqrt3::new(self.c0.clone() - o.c0.clone(), self.c1.clone() - o.c1.clone())
    }
}

impl<'a, T: Int> Mul<&'a QuadSqrt3<T>> for &'a QuadSqrt3<T> {
    type Output = QuadSqrt3<T>;
    fn mul(self, o: &QuadSqrt3<T>) -> QuadSqrt3<T> {
        QuadSqrt3::new(
            self.c0.clone() * o.c0.clone() + int::<T>(3) * self.c1.clone() * o.c1.clone(),
            self.c0.clone() * o.c1.clone() + self.c1.clone() * o.c0.clone(),
        )
    }
}

impl<T: Int> Neg for &QuadSqrt3<T> {
    type Output = QuadSqrt3<T>;
    fn neg(self) -> QuadSqrt3<T> {
        QuadSqrt3::new(-self.c0.clone(), -self.c1.clone())
    }
}

impl<T: Int> fmt::Display for QuadSqrt3<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}√3", self.c0, self.c1)
    }
}
