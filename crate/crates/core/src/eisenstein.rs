//! Exact arithmetic in the Eisenstein integers Z[ζ3].
//!
//! An element is stored as `a1 + a2·ζ3` with `ζ3² = −1 − ζ3`. The ring is
//! norm-Euclidean, so division with remainder, extended gcds and modular
//! inverses all reduce to [`Eisenstein::divmod`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::scalar::{int, rem_pos, round_half_down, Int};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Eisenstein<T> {
    /// Coefficient of 1.
    pub a1: T,
    /// Coefficient of ζ3.
    pub a2: T,
}

impl<T: Int> Eisenstein<T> {
    pub fn new(a1: T, a2: T) -> Self {
        Eisenstein { a1, a2 }
    }

    pub fn from_ints(a1: i64, a2: i64) -> Self {
        Eisenstein::new(int(a1), int(a2))
    }

    pub fn from_int(n: T) -> Self {
        Eisenstein::new(n, T::zero())
    }

    pub fn zero() -> Self {
        Eisenstein::new(T::zero(), T::zero())
    }

    pub fn one() -> Self {
        Eisenstein::new(T::one(), T::zero())
    }

    pub fn zeta3() -> Self {
        Eisenstein::new(T::zero(), T::one())
    }

    /// The ramified prime `1 − ζ3`.
    pub fn lambda() -> Self {
        Eisenstein::from_ints(1, -1)
    }

    /// The six units `±1, ±ζ3, ±ζ3²`, in the order `(−ζ3)^k` for `k = 0..6`.
    pub fn units() -> [Self; 6] {
        [
            Eisenstein::from_ints(1, 0),
            Eisenstein::from_ints(0, -1),
            Eisenstein::from_ints(-1, -1),
            Eisenstein::from_ints(-1, 0),
            Eisenstein::from_ints(0, 1),
            Eisenstein::from_ints(1, 1),
        ]
    }

    pub fn is_zero(&self) -> bool {
        self.a1.is_zero() && self.a2.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a1.is_one() && self.a2.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    /// Image under `ζ3 ↦ ζ3²`, i.e. complex conjugation.
    pub fn conj(&self) -> Self {
        Eisenstein::new(self.a1.clone() - self.a2.clone(), -self.a2.clone())
    }

    /// `a1² − a1·a2 + a2²`.
    pub fn norm(&self) -> T {
        self.a1.clone() * self.a1.clone() - self.a1.clone() * self.a2.clone() + self.a2.clone() * self.a2.clone()
    }

    pub fn scale(&self, k: &T) -> Self {
        Eisenstein::new(self.a1.clone() * k.clone(), self.a2.clone() * k.clone())
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

    /// `self^e mod m`, reducing after every multiplication.
    pub fn pow_mod(&self, mut e: u64, m: &Self) -> Result<Self> {
        let mut base = self.rem(m)?;
        let mut acc = Self::one().rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(m)?;
            }
            base = base.square().rem(m)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Division with remainder: `self = q·b + r` with `N(r) < N(b)`.
    ///
    /// The quotient rounds both coordinates of `self·conj(b)/N(b)` to the
    /// nearest integer, ties toward negative infinity, so `N(r) ≤ ¾·N(b)`.
    pub fn divmod(&self, b: &Self) -> Result<(Self, Self)> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = b.norm();
        let num = self * &b.conj();
        let q = Eisenstein::new(round_half_down(&num.a1, &n), round_half_down(&num.a2, &n));
        let r = self - &(&q * b);
        Ok((q, r))
    }

    pub fn rem(&self, b: &Self) -> Result<Self> {
        Ok(self.divmod(b)?.1)
    }

    /// Exact quotient `self / b`, if `b` divides `self`.
    pub fn exact_div(&self, b: &Self) -> Option<Self> {
        if b.is_zero() {
            return None;
        }
        let n = b.norm();
        let num = self * &b.conj();
        if (num.a1.clone() % n.clone()).is_zero() && (num.a2.clone() % n.clone()).is_zero() {
            Some(Eisenstein::new(num.a1 / n.clone(), num.a2 / n))
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

    /// Coefficients reduced mod 3.
    pub fn mod3(&self) -> (i64, i64) {
        (rem_pos(&self.a1, 3), rem_pos(&self.a2, 3))
    }

    /// `3 | a2` and `a1 ≡ ±1 (mod 3)`.
    pub fn is_primary(&self) -> bool {
        let (r1, r2) = self.mod3();
        r2 == 0 && r1 != 0
    }

    /// Sign of a primary element: `+1` if `≡ 1 (mod 3)`, `−1` if `≡ −1`.
    pub fn primary_sign(&self) -> Option<i8> {
        match self.mod3() {
            (1, 0) => Some(1),
            (2, 0) => Some(-1),
            _ => None,
        }
    }

    /// Not divisible by `1 − ζ3`, equivalently `3 ∤ N(a)`.
    pub fn is_coprime_to_three(&self) -> bool {
        let (r1, r2) = self.mod3();
        (r1 + r2) % 3 != 0
    }

    /// Total order used to pick a representative among associates that are
    /// not coprime to 3: lexicographically greatest `(a1, a2)`.
    fn associate_key(&self) -> (T, T) {
        (self.a1.clone(), self.a2.clone())
    }

    /// Representative of the associate class: the `≡ 1 (mod 3)` associate
    /// when coprime to 3, otherwise the lexicographically greatest `(a1, a2)`.
    pub fn normalized(&self) -> (Self, Self) {
        if self.is_zero() {
            return (Self::one(), Self::zero());
        }
        if let Ok(pair) = primary_associate(self) {
            return pair;
        }
        Self::units()
            .into_iter()
            .map(|u| {
                let b = &u * self;
                (u, b)
            })
            .max_by(|x, y| x.1.associate_key().cmp(&y.1.associate_key()))
            .expect("six units")
    }

    /// Multiplicative inverse of a unit.
    pub fn unit_inverse(&self) -> Option<Self> {
        if self.is_unit() {
            Some(self.conj())
        } else {
            None
        }
    }

    /// Inverse of `self` modulo `m`, if it exists.
    pub fn inverse_mod(&self, m: &Self) -> Option<Self> {
        let (g, x, _) = gcd_ext(self, m).ok()?;
        let ginv = g.unit_inverse()?;
        (&x * &ginv).rem(m).ok()
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (
            self.a1.to_f64().unwrap_or(f64::NAN),
            self.a2.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// Position in the complex plane under `ζ3 ↦ e^{2πi/3}`.
    pub fn to_complex(&self) -> (f64, f64) {
        let (a1, a2) = self.to_f64_pair();
        (a1 - 0.5 * a2, a2 * 3f64.sqrt() / 2.0)
    }

    /// Convert the coefficient type.
    pub fn cast<U: Int>(&self) -> Option<Eisenstein<U>> {
        Some(Eisenstein::new(
            U::from_i128(self.a1.to_i128()?)?,
            U::from_i128(self.a2.to_i128()?)?,
        ))
    }
}

impl<T: Int> fmt::Display for Eisenstein<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a1, self.a2)
    }
}

impl<T: Int> std::str::FromStr for Eisenstein<T> {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        crate::parse::parse_eis(s)
    }
}

impl<'a, T: Int> Add<&'a Eisenstein<T>> for &'a Eisenstein<T> {
    type Output = Eisenstein<T>;
    fn add(self, o: &Eisenstein<T>) -> Eisenstein<T> {
        Eisenstein::new(self.a1.clone() + o.a1.clone(), self.a2.clone() + o.a2.clone())
    }
}

impl<'a, T: Int> Sub<&'a Eisenstein<T>> for &'a Eisenstein<T> {
    type Output = Eisenstein<T>;
    fn sub(self, o: &Eisenstein<T>) -> Eisenstein<T> {
        Eisenstein::new(self.a1.clone() - o.a1.clone(), self.a2.clone() - o.a2.clone())
    }
}

impl<'a, T: Int> Mul<&'a Eisenstein<T>> for &'a Eisenstein<T> {
    type Output = Eisenstein<T>;
    fn mul(self, o: &Eisenstein<T>) -> Eisenstein<T> {
        let p22 = self.a2.clone() * o.a2.clone();
        Eisenstein::new(
            self.a1.clone() * o.a1.clone() - p22.clone(),
            self.a1.clone() * o.a2.clone() + self.a2.clone() * o.a1.clone() - p22,
        )
    }
}

impl<T: Int> Neg for &Eisenstein<T> {
    type Output = Eisenstein<T>;
    fn neg(self) -> Eisenstein<T> {
        Eisenstein::new(-self.a1.clone(), -self.a2.clone())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Int> $tr<Eisenstein<T>> for Eisenstein<T> {
            type Output = Eisenstein<T>;
            fn $m(self, o: Eisenstein<T>) -> Eisenstein<T> {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: Int> Neg for Eisenstein<T> {
    type Output = Eisenstein<T>;
    fn neg(self) -> Eisenstein<T> {
        -&self
    }
}

/// Extended Euclid: `g = a·x + b·y` with `g` normalized as in
/// [`Eisenstein::normalized`].
pub fn gcd_ext<T: Int>(a: &Eisenstein<T>, b: &Eisenstein<T>) -> Result<(Eisenstein<T>, Eisenstein<T>, Eisenstein<T>)> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::ZeroGcd);
    }
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut x0, mut x1) = (Eisenstein::one(), Eisenstein::zero());
    let (mut y0, mut y1) = (Eisenstein::zero(), Eisenstein::one());
    while !r1.is_zero() {
        let (q, r) = r0.divmod(&r1)?;
        r0 = std::mem::replace(&mut r1, r);
        let x2 = &x0 - &(&q * &x1);
        x0 = std::mem::replace(&mut x1, x2);
        let y2 = &y0 - &(&q * &y1);
        y0 = std::mem::replace(&mut y1, y2);
    }
    let (mu, g) = r0.normalized();
    Ok((g, &mu * &x0, &mu * &y0))
}

pub fn gcd<T: Int>(a: &Eisenstein<T>, b: &Eisenstein<T>) -> Result<Eisenstein<T>> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::ZeroGcd);
    }
    let (mut r0, mut r1) = (a.clone(), b.clone());
    while !r1.is_zero() {
        let r = r0.rem(&r1)?;
        r0 = std::mem::replace(&mut r1, r);
    }
    Ok(r0.normalized().1)
}

pub fn are_coprime<T: Int>(a: &Eisenstein<T>, b: &Eisenstein<T>) -> bool {
    gcd(a, b).map(|g| g.is_unit()).unwrap_or(false)
}

/// The unit `μ` and the associate `μ·a ≡ 1 (mod 3)`.
pub fn primary_associate<T: Int>(a: &Eisenstein<T>) -> Result<(Eisenstein<T>, Eisenstein<T>)> {
    if !a.is_coprime_to_three() {
        return Err(Error::NotCoprimeToThree(a.to_string()));
    }
    for mu in Eisenstein::<T>::units() {
        let b = &mu * a;
        if b.mod3() == (1, 0) {
            return Ok((mu, b));
        }
    }
    unreachable!("the six units cover (Z[ζ3]/3)^×")
}

/// `a = unit · (1 − ζ3)^lambda_exp · Π πᵢ^eᵢ`, with every `πᵢ` primary:
/// split primes are taken `≡ 1 (mod 3)`, inert primes are the positive
/// rational primes `q ≡ 2 (mod 3)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EisFactorization<T> {
    pub unit: Eisenstein<T>,
    pub lambda_exp: u32,
    pub primes: Vec<(Eisenstein<T>, u32)>,
}

impl<T: Int> EisFactorization<T> {
    pub fn product(&self) -> Eisenstein<T> {
        let mut acc = &self.unit * &Eisenstein::lambda().pow(self.lambda_exp as u64);
        for (p, e) in &self.primes {
            acc = &acc * &p.pow(*e as u64);
        }
        acc
    }

    /// True when every exponent, including that of `1 − ζ3`, is divisible by 3.
    pub fn is_unit_times_cube(&self) -> bool {
        self.lambda_exp.is_multiple_of(3) && self.primes.iter().all(|(_, e)| e % 3 == 0)
    }
}

fn strip<T: Int>(a: &mut Eisenstein<T>, p: &Eisenstein<T>) -> u32 {
    let mut e = 0;
    while let Some(q) = a.exact_div(p) {
        *a = q;
        e += 1;
    }
    e
}

fn norm_u64<T: Int>(a: &Eisenstein<T>) -> Result<u64> {
    a.norm().to_u64().ok_or_else(|| Error::TooLarge(a.to_string()))
}

/// Factor `a` by factoring its rational norm and splitting each prime.
pub fn factor<T: Int>(a: &Eisenstein<T>) -> Result<EisFactorization<T>> {
    if a.is_zero() {
        return Err(Error::Zero);
    }
    let n = norm_u64(a)?;
    let mut rest = a.clone();
    let mut lambda_exp = 0;
    let mut primes = Vec::new();
    for (p, _) in arith::factor(n) {
        match p % 3 {
            0 => lambda_exp = strip(&mut rest, &Eisenstein::lambda()),
            2 => {
                let q = Eisenstein::from_int(T::from_u64(p).expect("p fits"));
                let e = strip(&mut rest, &q);
                primes.push((q, e));
            }
            _ => {
                let pi = prime_above::<T>(p)?;
                let pibar = pi.conj();
                for cand in [pi, pibar] {
                    let e = strip(&mut rest, &cand);
                    if e > 0 {
                        primes.push((cand, e));
                    }
                }
            }
        }
    }
    debug_assert!(rest.is_unit(), "leftover {rest} is not a unit");
    primes.sort_by_key(|(x, _)| (x.norm(), x.a1.clone(), x.a2.clone()));
    Ok(EisFactorization {
        unit: rest,
        lambda_exp,
        primes,
    })
}

/// A prime `π ≡ 1 (mod 3)` of norm `p` for a rational prime `p ≡ 1 (mod 3)`,
/// obtained as `gcd(p, c − ζ3)` where `c` is a cube root of unity mod `p`.
pub fn prime_above<T: Int>(p: u64) -> Result<Eisenstein<T>> {
    if p % 3 != 1 || !arith::is_prime(p) {
        return Err(Error::WrongResidue {
            p,
            residue: 1,
            modulus: 3,
        });
    }
    let c = arith::cube_root_of_unity(p);
    let pt = T::from_u64(p).expect("p fits");
    let ct = T::from_u64(c).expect("c fits");
    let g = gcd(&Eisenstein::from_int(pt.clone()), &Eisenstein::new(ct, -T::one()))?;
    debug_assert_eq!(g.norm(), pt);
    debug_assert_eq!(g.mod3(), (1, 0));
    Ok(g)
}

/// Classification of a prime modulus used by the residue symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimeKind {
    Unit,
    Ramified,
    /// A split prime of the given rational norm `p ≡ 1 (mod 3)`.
    Split(u64),
    /// An associate of the inert rational prime `q ≡ 2 (mod 3)`.
    Inert(u64),
}

/// Classify `pi` as a unit or a prime; `None` if it is neither.
pub fn classify_prime<T: Int>(pi: &Eisenstein<T>) -> Option<PrimeKind> {
    if pi.is_zero() {
        return None;
    }
    let n = pi.norm().to_u64()?;
    if n == 1 {
        return Some(PrimeKind::Unit);
    }
    if n == 3 {
        return Some(PrimeKind::Ramified);
    }
    if arith::is_prime(n) {
        return (n % 3 == 1).then_some(PrimeKind::Split(n));
    }
    let q = arith::isqrt(n);
    if q * q == n && q % 3 == 2 && arith::is_prime(q) {
        let qt = Eisenstein::from_int(T::from_u64(q)?);
        if qt.divides(pi) {
            return Some(PrimeKind::Inert(q));
        }
    }
    None
}
