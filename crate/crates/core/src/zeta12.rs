//! Arithmetic in Z[ζ12] = Z[ζ3][i].
//!
//! An element is stored as `r + i·s` with `r, s ∈ Z[ζ3]`; the identity
//! `ζ12 = −i·ζ3` links this form to the power basis. The fixed complex
//! embedding sends `ζ3 ↦ e^{2πi/3}` and `i ↦ i`, hence `ζ12 ↦ e^{2πi/12}`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::eisenstein::{self, Eisenstein};
use crate::error::{Error, Result};
use crate::quad::QuadSqrt3;
use crate::scalar::{int, rem_pos, round_half_down, Int};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cyclo12<T> {
    pub r: Eisenstein<T>,
    pub s: Eisenstein<T>,
}

/// The automorphisms of Q(ζ12)/Q.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Galois {
    Id,
    /// `i ↦ −i`, fixing ζ3.
    Sigma,
    /// `ζ3 ↦ ζ3²`, fixing i.
    Tau,
    /// Complex conjugation.
    SigmaTau,
}

impl Galois {
    pub const ALL: [Galois; 4] = [Galois::Id, Galois::Sigma, Galois::Tau, Galois::SigmaTau];
}

impl<T: Int> Cyclo12<T> {
    pub fn new(r: Eisenstein<T>, s: Eisenstein<T>) -> Self {
        Cyclo12 { r, s }
    }

    pub fn from_ints(r1: i64, r2: i64, s1: i64, s2: i64) -> Self {
        Cyclo12::new(Eisenstein::from_ints(r1, r2), Eisenstein::from_ints(s1, s2))
    }

    pub fn from_eis(r: Eisenstein<T>) -> Self {
        Cyclo12::new(r, Eisenstein::zero())
    }

    pub fn zero() -> Self {
        Cyclo12::from_ints(0, 0, 0, 0)
    }

    pub fn one() -> Self {
        Cyclo12::from_ints(1, 0, 0, 0)
    }

    pub fn i() -> Self {
        Cyclo12::from_ints(0, 0, 1, 0)
    }

    /// `ζ12 = −i·ζ3`.
    pub fn zeta12() -> Self {
        Cyclo12::from_ints(0, 0, 0, -1)
    }

    /// The fundamental unit `ε0 = 1 + ζ3 − i·ζ3`.
    pub fn eps0() -> Self {
        Cyclo12::from_ints(1, 1, 0, -1)
    }

    /// `−i·ε0⁶ = −26 + i(15 + 30ζ3)`, the generator of the units `≡ 1 (mod 3)`.
    pub fn fixing_unit() -> Self {
        Cyclo12::from_ints(-26, 0, 15, 30)
    }

    /// `√3 = −i(1 + 2ζ3)`.
    pub fn sqrt3() -> Self {
        Cyclo12::from_ints(0, 0, -1, -2)
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero() && self.s.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.r.is_one() && self.s.is_zero()
    }

    pub fn galois(&self, g: Galois) -> Self {
        match g {
            Galois::Id => self.clone(),
            Galois::Sigma => Cyclo12::new(self.r.clone(), -&self.s),
            Galois::Tau => Cyclo12::new(self.r.conj(), self.s.conj()),
            Galois::SigmaTau => Cyclo12::new(self.r.conj(), -&self.s.conj()),
        }
    }

    pub fn sigma(&self) -> Self {
        self.galois(Galois::Sigma)
    }

    /// Relative norm `r² + s²` down to Z[ζ3].
    pub fn rel_norm(&self) -> Eisenstein<T> {
        &self.r.square() + &self.s.square()
    }

    /// Absolute norm `N3(r² + s²)`.
    pub fn norm(&self) -> T {
        self.rel_norm().norm()
    }

    pub fn norm_u64(&self) -> Result<u64> {
        self.norm().to_u64().ok_or_else(|| Error::TooLarge(self.to_string()))
    }

    pub fn is_unit(&self) -> bool {
        self.norm() == T::one()
    }

    /// Coordinates `(r1, r2, s1, s2)` reduced into `0..3`.
    pub fn mod3(&self) -> [u8; 4] {
        [
            rem_pos(&self.r.a1, 3) as u8,
            rem_pos(&self.r.a2, 3) as u8,
            rem_pos(&self.s.a1, 3) as u8,
            rem_pos(&self.s.a2, 3) as u8,
        ]
    }

    /// `≡ ±1 (mod 3)`.
    pub fn is_primary(&self) -> bool {
        matches!(self.mod3(), [1, 0, 0, 0] | [2, 0, 0, 0])
    }

    pub fn is_one_mod3(&self) -> bool {
        self.mod3() == [1, 0, 0, 0]
    }

    /// No prime above 3 divides `self`, equivalently `3 ∤ N12`.
    pub fn is_coprime_to_three(&self) -> bool {
        !(self.norm() % int::<T>(3)).is_zero()
    }

    /// `gcd(r, s)` is a unit of Z[ζ3].
    pub fn is_primitive(&self) -> bool {
        eisenstein::are_coprime(&self.r, &self.s)
    }

    pub fn scale(&self, k: &Eisenstein<T>) -> Self {
        Cyclo12::new(&self.r * k, &self.s * k)
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = base.square();
            e >>= 1;
        }
        acc
    }

    /// Product of the three nontrivial Galois conjugates; `self` times this
    /// is the absolute norm.
    pub fn norm_cofactor(&self) -> Self {
        &(&self.galois(Galois::Sigma) * &self.galois(Galois::Tau)) * &self.galois(Galois::SigmaTau)
    }

    pub fn unit_inverse(&self) -> Option<Self> {
        self.is_unit().then(|| self.norm_cofactor())
    }

    /// Integer power, negative exponents allowed for units.
    pub fn unit_pow(&self, k: i64) -> Self {
        if k >= 0 {
            self.pow(k as u64)
        } else {
            self.unit_inverse().expect("unit").pow(k.unsigned_abs())
        }
    }

    fn coords(&self) -> [T; 4] {
        [
            self.r.a1.clone(),
            self.r.a2.clone(),
            self.s.a1.clone(),
            self.s.a2.clone(),
        ]
    }

    fn from_coords(c: [T; 4]) -> Self {
        let [a, b, c, d] = c;
        Cyclo12::new(Eisenstein::new(a, b), Eisenstein::new(c, d))
    }

    /// Exact quotient, if `b` divides `self`.
    pub fn exact_div(&self, b: &Self) -> Option<Self> {
        if b.is_zero() {
            return None;
        }
        let n = b.norm();
        let num = self * &b.norm_cofactor();
        let c = num.coords();
        if c.iter().all(|x| (x.clone() % n.clone()).is_zero()) {
            Some(Self::from_coords(c.map(|x| x / n.clone())))
        } else {
            None
        }
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.exact_div(self).is_some()
    }

    /// Division with remainder, `N12(rem) < N12(b)`.
    ///
    /// Rounds the four coordinates of `self·b̃/N12(b)` (with `b̃` the
    /// [`norm_cofactor`](Self::norm_cofactor)); if that misses the bound the
    /// 81 neighbours in `{−1,0,1}⁴` are searched for the smallest remainder.
    pub fn divmod(&self, b: &Self) -> Result<(Self, Self)> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = b.norm();
        let num = self * &b.norm_cofactor();
        let q0 = num.coords().map(|x| round_half_down(&x, &n));
        let q = Self::from_coords(q0.clone());
        let rem = self - &(&q * b);
        if rem.norm() < n {
            return Ok((q, rem));
        }
        let mut best: Option<(T, Self, Self)> = None;
        for off in 0..81 {
            let mut c = q0.clone();
            let mut o = off;
            for x in c.iter_mut() {
                *x = x.clone() + int::<T>(o % 3 - 1);
                o /= 3;
            }
            let q = Self::from_coords(c);
            let rem = self - &(&q * b);
            let rn = rem.norm();
            if best.as_ref().is_none_or(|(bn, _, _)| rn < *bn) {
                best = Some((rn, q, rem));
            }
        }
        let (rn, q, rem) = best.expect("81 candidates");
        assert!(rn < n, "Euclidean bound violated dividing {self} by {b}");
        Ok((q, rem))
    }

    pub fn rem(&self, b: &Self) -> Result<Self> {
        Ok(self.divmod(b)?.1)
    }

    /// `|z|² = z·στ(z)` as an exact element of Z[√3].
    pub fn abs2_exact(&self) -> QuadSqrt3<T> {
        let x = &self.s * &self.r.conj();
        QuadSqrt3::new(self.r.norm() + self.s.norm(), -x.a2)
    }

    /// Coordinates over 2 in the real basis `(1, i, √3, i√3)`.
    pub fn real_basis_doubled(&self) -> [T; 4] {
        let two = int::<T>(2);
        [
            two.clone() * self.r.a1.clone() - self.r.a2.clone(),
            two * self.s.a1.clone() - self.s.a2.clone(),
            -self.s.a2.clone(),
            self.r.a2.clone(),
        ]
    }

    /// Position in the complex plane under the fixed embedding.
    pub fn to_complex(&self) -> (f64, f64) {
        let h = 3f64.sqrt() / 2.0;
        let f = |x: &T| x.to_f64().unwrap_or(f64::NAN);
        let (r1, r2, s1, s2) = (f(&self.r.a1), f(&self.r.a2), f(&self.s.a1), f(&self.s.a2));
        // r = (r1 − r2/2) + i·h·r2, and i·s = −h·s2 + i(s1 − s2/2).
        (r1 - r2 / 2.0 - h * s2, h * r2 + s1 - s2 / 2.0)
    }

    pub fn cast<U: Int>(&self) -> Option<Cyclo12<U>> {
        Some(Cyclo12::new(self.r.cast()?, self.s.cast()?))
    }

    /// Lexicographic key on `(r1, r2, s1, s2)`.
    pub fn sort_key(&self) -> [T; 4] {
        self.coords()
    }
}

impl<T: Int> fmt::Display for Cyclo12<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.r, self.s)
    }
}

impl<T: Int> std::str::FromStr for Cyclo12<T> {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        crate::parse::parse_z12(s)
    }
}

impl<'a, T: Int> Add<&'a Cyclo12<T>> for &'a Cyclo12<T> {
    type Output = Cyclo12<T>;
    fn add(self, o: &Cyclo12<T>) -> Cyclo12<T> {
        Cyclo12::new(&self.r + &o.r, &self.s + &o.s)
    }
}

impl<'a, T: Int> Sub<&'a Cyclo12<T>> for &'a Cyclo12<T> {
    type Output = Cyclo12<T>;
    fn sub(self, o: &Cyclo12<T>) -> Cyclo12<T> {
        Cyclo12::new(&self.r - &o.r, &self.s - &o.s)
    }
}

impl<'a, T: Int> Mul<&'a Cyclo12<T>> for &'a Cyclo12<T> {
    type Output = Cyclo12<T>;
    fn mul(self, o: &Cyclo12<T>) -> Cyclo12<T> {
        Cyclo12::new(
            &(&self.r * &o.r) - &(&self.s * &o.s),
            &(&self.r * &o.s) + &(&self.s * &o.r),
        )
    }
}

impl<T: Int> Neg for &Cyclo12<T> {
    type Output = Cyclo12<T>;
    fn neg(self) -> Cyclo12<T> {
        Cyclo12::new(-&self.r, -&self.s)
    }
}

impl<T: Int> Neg for Cyclo12<T> {
    type Output = Cyclo12<T>;
    fn neg(self) -> Cyclo12<T> {
        -&self
    }
}

impl<T: Int> Mul<Cyclo12<T>> for Cyclo12<T> {
    type Output = Cyclo12<T>;
    fn mul(self, o: Cyclo12<T>) -> Cyclo12<T> {
        &self * &o
    }
}

/// Euclidean gcd; the result is determined only up to a unit.
pub fn gcd<T: Int>(a: &Cyclo12<T>, b: &Cyclo12<T>) -> Result<Cyclo12<T>> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::ZeroGcd);
    }
    let (mut r0, mut r1) = (a.clone(), b.clone());
    while !r1.is_zero() {
        let r = r0.rem(&r1)?;
        r0 = std::mem::replace(&mut r1, r);
    }
    Ok(r0)
}

/// A unit `ζ12^ℓ·ε0^k` with its exponents.
#[derive(Clone, Debug)]
pub struct UnitRep {
    pub ell: u8,
    pub k: u8,
    pub unit: Cyclo12<i64>,
    pub residue: [u8; 4],
}

/// The 72 units `ζ12^ℓ·ε0^k`, `ℓ < 12`, `k < 6`, one per class of
/// `(Z[ζ12]/3)^×`.
pub fn unit_classes() -> &'static [UnitRep] {
    static TABLE: OnceLock<Vec<UnitRep>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut v = Vec::with_capacity(72);
        for ell in 0..12u8 {
            for k in 0..6u8 {
                let unit = &Cyclo12::<i64>::zeta12().pow(ell as u64) * &Cyclo12::eps0().pow(k as u64);
                let residue = unit.mod3();
                v.push(UnitRep { ell, k, unit, residue });
            }
        }
        v
    })
}

fn mul_mod3(a: [u8; 4], b: [u8; 4]) -> [u8; 4] {
    let z = Cyclo12::<i64>::from_ints(a[0] as i64, a[1] as i64, a[2] as i64, a[3] as i64);
    let w = Cyclo12::<i64>::from_ints(b[0] as i64, b[1] as i64, b[2] as i64, b[3] as i64);
    (&z * &w).mod3()
}

/// The unit `u` from [`unit_classes`] and the associate `u·z ≡ 1 (mod 3)`.
pub fn one_mod3_associate<T: Int>(z: &Cyclo12<T>) -> Result<(Cyclo12<T>, Cyclo12<T>)> {
    if z.is_zero() || !z.is_coprime_to_three() {
        return Err(Error::NotCoprimeToThree(z.to_string()));
    }
    let res = z.mod3();
    let rep = unit_classes()
        .iter()
        .find(|u| mul_mod3(u.residue, res) == [1, 0, 0, 0])
        .expect("unit classes cover (Z[ζ12]/3)^×");
    let u: Cyclo12<T> = rep.unit.cast().expect("small unit");
    let w = &u * z;
    Ok((u, w))
}

fn box_upper<T: Int>() -> QuadSqrt3<T> {
    QuadSqrt3::fundamental().pow(12)
}

/// `N12(z)^{1/4} ≤ |z| < N12(z)^{1/4}·|ε0|⁶`, decided exactly.
///
/// With `A = |z|²` and `B = |σz|²` we have `N12 = A·B`, so the box reads
/// `B ≤ A < B·(2+√3)^12`.
pub fn in_box<T: Int>(z: &Cyclo12<T>) -> bool {
    let a = z.abs2_exact();
    let b = a.conj();
    a >= b && a < &b * &box_upper()
}

/// The unique associate of `z0` that is `≡ 1 (mod 3)` and lies in the box
/// of [`in_box`].
pub fn canonical_generator<T: Int>(z0: &Cyclo12<T>) -> Result<Cyclo12<T>> {
    let (_, mut z) = one_mod3_associate(z0)?;
    let u = Cyclo12::<T>::fixing_unit();
    let uinv = u.unit_inverse().expect("unit");

    let a = z.abs2_exact();
    let n = z.norm().to_f64().unwrap_or(f64::INFINITY);
    let log_a = if a.c1 >= T::zero() {
        a.to_f64().ln()
    } else {
        n.ln() - a.conj().to_f64().ln()
    };
    let log_ratio = 2.0 * log_a - n.ln();
    let step = 12.0 * (2.0 + 3f64.sqrt()).ln();
    if log_ratio.is_finite() {
        let k = -(log_ratio / step).floor() as i64;
        if k != 0 {
            let m = if k > 0 { &u } else { &uinv };
            z = &z * &m.pow(k.unsigned_abs());
        }
    }
    let upper = box_upper::<T>();
    loop {
        let a = z.abs2_exact();
        let b = a.conj();
        if a < b {
            z = &z * &u;
        } else if a >= &b * &upper {
            z = &z * &uinv;
        } else {
            return Ok(z);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    type Z = Cyclo12<i64>;
    type Z128 = Cyclo12<i128>;

    fn z(r1: i64, r2: i64, s1: i64, s2: i64) -> Z {
        Z::from_ints(r1, r2, s1, s2)
    }

    #[test]
    fn named_units() {
        assert_eq!(Z::eps0().square(), z(1, 2, 2, 0));
        // i·ε0⁶ = 26 + 15√3 is real and positive under the fixed embedding.
        assert_eq!(&Z::i() * &Z::eps0().pow(6), z(26, 0, -15, -30));
        assert_eq!(Z::from_ints(26, 0, -15, -30).to_complex().1, 0.0);
        assert_eq!(Z::fixing_unit(), -(&Z::i() * &Z::eps0().pow(6)));
        assert!(Z::fixing_unit().is_one_mod3());
        assert_eq!(Z::zeta12().pow(12), Z::one());
        for k in 1..12 {
            assert_ne!(Z::zeta12().pow(k), Z::one());
        }
        assert_eq!(Z::zeta12().pow(3), Z::i());
        assert_eq!(Z::sqrt3().square(), z(3, 0, 0, 0));
    }

    #[test]
    fn norms() {
        assert_eq!(Z::eps0().rel_norm(), Eisenstein::from_ints(-1, 0));
        assert_eq!(Z::eps0().norm(), 1);
        assert_eq!(Z::zeta12().norm(), 1);
        let w = z(3, 1, -2, 5);
        assert_eq!(&w * &w.sigma(), Z::from_eis(w.rel_norm()));
        assert_eq!(&w * &w.norm_cofactor(), z(w.norm(), 0, 0, 0));
    }

    #[test]
    fn galois_maps_are_automorphisms() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..500 {
            let a = z(
                rng.gen_range(-40..40),
                rng.gen_range(-40..40),
                rng.gen_range(-40..40),
                rng.gen_range(-40..40),
            );
            let b = z(
                rng.gen_range(-40..40),
                rng.gen_range(-40..40),
                rng.gen_range(-40..40),
                rng.gen_range(-40..40),
            );
            for g in Galois::ALL {
                assert_eq!((&a * &b).galois(g), &a.galois(g) * &b.galois(g));
                assert_eq!((&a + &b).galois(g), &a.galois(g) + &b.galois(g));
                assert_eq!(a.galois(g).norm(), a.norm());
                assert_eq!(a.galois(g).galois(g), a);
            }
            assert_eq!(a.galois(Galois::Sigma).galois(Galois::Tau), a.galois(Galois::SigmaTau));
        }
    }

    #[test]
    fn complex_embedding() {
        let (x, y) = Z::zeta12().to_complex();
        let t = std::f64::consts::PI / 6.0;
        assert!((x - t.cos()).abs() < 1e-12 && (y - t.sin()).abs() < 1e-12);
        let (x, y) = Z::sqrt3().to_complex();
        assert!((x - 3f64.sqrt()).abs() < 1e-12 && y.abs() < 1e-12);
        let w = z(4, -3, 7, 2);
        let (x, y) = w.to_complex();
        assert!((x * x + y * y - w.abs2_exact().to_f64()).abs() < 1e-9);
        let (x, y) = w.sigma().to_complex();
        assert!((x * x + y * y - w.abs2_exact().conj().to_f64()).abs() < 1e-9);
    }

    #[test]
    fn abs2_examples() {
        assert_eq!(Z::eps0().abs2_exact(), QuadSqrt3::from_ints(2, 1));
        assert_eq!(Z::i().abs2_exact(), QuadSqrt3::one());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(6);
        for _ in 0..1000 {
            let a = z(
                rng.gen_range(-30..30),
                rng.gen_range(-30..30),
                rng.gen_range(-30..30),
                rng.gen_range(-30..30),
            );
            let b = z(
                rng.gen_range(-30..30),
                rng.gen_range(-30..30),
                rng.gen_range(-30..30),
                rng.gen_range(-30..30),
            );
            assert_eq!((&a * &b).abs2_exact(), &a.abs2_exact() * &b.abs2_exact());
            assert_eq!(a.abs2_exact().norm(), a.norm());
        }
    }

    #[test]
    fn divmod_contract_exhaustive_small() {
        let range: Vec<i64> = (-3..=3).collect();
        let mut elems = Vec::new();
        for &a in &range {
            for &b in &range {
                for &c in &range {
                    for &d in &range {
                        elems.push(z(a, b, c, d));
                    }
                }
            }
        }
        let dividends: Vec<Z> = elems.iter().step_by(7).cloned().collect();
        for b in elems.iter().filter(|b| !b.is_zero()) {
            for a in &dividends {
                let (q, r) = a.divmod(b).unwrap();
                assert!(r.norm() < b.norm(), "{a} / {b}");
                assert_eq!(&(&q * b) + &r, *a);
            }
        }
    }

    #[test]
    fn divmod_edges() {
        let b = z(2, -1, 3, 1);
        assert_eq!(b.divmod(&b).unwrap(), (Z::one(), Z::zero()));
        assert_eq!(b.divmod(&Z::zero()), Err(Error::DivisionByZero));
        let g = gcd(&b, &Z::zero()).unwrap();
        assert!(g.divides(&b) && b.divides(&g));
    }

    #[test]
    fn gcd_splits_rational_primes() {
        // 13 = π·π̄ in Z[ζ3] and π = z·σ(z) in Z[ζ12].
        let pi = eisenstein::prime_above::<i64>(13).unwrap();
        let w = crate::arith::sqrt_minus_one(13) as i64;
        let g = gcd(&Z::from_eis(pi.clone()), &z(w, 0, 1, 0)).unwrap();
        assert_eq!(g.norm(), 13);
        assert!(g.divides(&Z::from_eis(pi)));
    }

    #[test]
    fn unit_classes_are_distinct() {
        let mut seen = std::collections::HashSet::new();
        for u in unit_classes() {
            assert!(seen.insert(u.residue), "duplicate residue at ℓ={} k={}", u.ell, u.k);
        }
        assert_eq!(seen.len(), 72);
    }

    #[test]
    fn table_of_small_units_mod3() {
        let forbidden: Vec<[u8; 4]> = [Z::one(), -Z::one(), Z::i(), -Z::i()]
            .iter()
            .map(|u| u.mod3())
            .collect();
        for k in 1..=5 {
            for ell in 0..=2 {
                let u = &Z::eps0().pow(k) * &Z::zeta12().pow(ell);
                assert!(!forbidden.contains(&u.mod3()), "k={k} ℓ={ell}");
            }
        }
        assert_eq!(Z::eps0().real_basis_doubled(), [1, 1, 1, 1]);
    }

    fn random_coprime(rng: &mut impl Rng, b: i64) -> Z128 {
        loop {
            let w = Z128::from_ints(
                rng.gen_range(-b..=b),
                rng.gen_range(-b..=b),
                rng.gen_range(-b..=b),
                rng.gen_range(-b..=b),
            );
            if !w.is_zero() && w.is_coprime_to_three() {
                return w;
            }
        }
    }

    #[test]
    fn canonical_generator_properties() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
        let u = Z128::fixing_unit();
        for _ in 0..1000 {
            let w = random_coprime(&mut rng, 20);
            let c = canonical_generator(&w).unwrap();
            assert!(c.is_one_mod3() && in_box(&c));
            assert!(c.divides(&w) && w.divides(&c));
            assert_eq!(canonical_generator(&c).unwrap(), c);
            for k in -3..=3i64 {
                assert_eq!(canonical_generator(&(&u.unit_pow(k) * &w)).unwrap(), c);
            }
            let hits = (-5..=5i64).filter(|&k| in_box(&(&u.unit_pow(k) * &c))).count();
            assert_eq!(hits, 1);
            let a = c.abs2_exact();
            let four = QuadSqrt3::from_ints(4, 0);
            assert!(QuadSqrt3::from_ints(c.r.norm() as i64, 0) <= &four * &a);
            assert!(QuadSqrt3::from_ints(c.s.norm() as i64, 0) <= &four * &a);
        }
    }

    #[test]
    fn box_matches_literal_fourth_power_form() {
        // |z|⁴ against N and N·|ε0|^24, evaluated exactly.
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let upper = QuadSqrt3::<i128>::fundamental().pow(12);
        for _ in 0..2000 {
            let w = random_coprime(&mut rng, 15);
            let a = w.abs2_exact();
            let a2 = &a * &a;
            let n = QuadSqrt3::new(w.norm(), 0);
            let lit = a2 >= n && a2 < &n * &upper;
            assert_eq!(lit, in_box(&w));
        }
    }

    #[test]
    fn canonical_generator_rejects_multiples_of_three_primes() {
        assert!(canonical_generator(&Z::from_ints(1, -1, 0, 0)).is_err());
        assert!(canonical_generator(&Z::zero()).is_err());
    }

    proptest! {
        #[test]
        fn norm_multiplicative(a in prop::array::uniform4(-200i64..200), b in prop::array::uniform4(-200i64..200)) {
            let x = Z128::from_ints(a[0], a[1], a[2], a[3]);
            let y = Z128::from_ints(b[0], b[1], b[2], b[3]);
            prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        }
    }
}
