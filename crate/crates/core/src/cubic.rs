//! The cubic residue character `[a/b]` on Z[ζ3].
//!
//! Three evaluators are provided and must agree everywhere:
//! [`chi_prime`] exponentiates in the residue field of a prime,
//! [`cubic_symbol_factored`] multiplies prime values over a factorization of
//! the modulus, and [`cubic_symbol`] runs a Euclid-style loop driven by cubic
//! reciprocity and never factors anything.
//!
//! The modulus `1 − ζ3` always contributes 1, even when it divides the upper
//! entry. An inert prime `q ≡ 2 (mod 3)` contributes `a^{(q²−1)/3} mod q`,
//! which equals 1 on every rational integer coprime to `q`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::eisenstein::{self, classify_prime, primary_associate, Eisenstein, PrimeKind};
use crate::error::{Error, Result};
use crate::scalar::{int, Int};

/// A value of the cubic character: `0` or `ζ3^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CubicValue {
    Zero,
    /// `ζ3^k` with `k ∈ {0, 1, 2}`.
    Root(u8),
}

impl CubicValue {
    pub const ONE: CubicValue = CubicValue::Root(0);

    pub fn root(k: i64) -> Self {
        CubicValue::Root(k.rem_euclid(3) as u8)
    }

    pub fn is_zero(self) -> bool {
        self == CubicValue::Zero
    }

    pub fn exponent(self) -> Option<u8> {
        match self {
            CubicValue::Zero => None,
            CubicValue::Root(k) => Some(k),
        }
    }

    pub fn inv(self) -> Self {
        match self {
            CubicValue::Zero => CubicValue::Zero,
            CubicValue::Root(k) => CubicValue::root(-(k as i64)),
        }
    }

    /// Complex conjugate; coincides with the inverse on roots of unity.
    pub fn conj(self) -> Self {
        self.inv()
    }

    pub fn pow(self, e: u64) -> Self {
        match self {
            CubicValue::Zero if e == 0 => CubicValue::ONE,
            CubicValue::Zero => CubicValue::Zero,
            CubicValue::Root(k) => CubicValue::root(((k as u64 * (e % 3)) % 3) as i64),
        }
    }

    /// `ζ3^k` as the Eisenstein integer `1`, `ζ3` or `−1 − ζ3`; `0` for Zero.
    pub fn to_eisenstein<T: Int>(self) -> Eisenstein<T> {
        match self {
            CubicValue::Zero => Eisenstein::zero(),
            CubicValue::Root(k) => Eisenstein::zeta3().pow(k as u64),
        }
    }
}

impl std::ops::Mul for CubicValue {
    type Output = CubicValue;
    fn mul(self, o: CubicValue) -> CubicValue {
        match (self, o) {
            (CubicValue::Root(j), CubicValue::Root(k)) => CubicValue::root((j + k) as i64),
            _ => CubicValue::Zero,
        }
    }
}

impl std::ops::MulAssign for CubicValue {
    fn mul_assign(&mut self, o: CubicValue) {
        *self = *self * o;
    }
}

impl fmt::Display for CubicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CubicValue::Zero => "0",
            CubicValue::Root(0) => "1",
            CubicValue::Root(1) => "w",
            CubicValue::Root(_) => "w^2",
        })
    }
}

impl std::str::FromStr for CubicValue {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "0" => Ok(CubicValue::Zero),
            "1" => Ok(CubicValue::Root(0)),
            "w" => Ok(CubicValue::Root(1)),
            "w^2" => Ok(CubicValue::Root(2)),
            _ => Err(Error::Parse {
                pos: 1,
                msg: format!("not a cubic value: {s:?}"),
            }),
        }
    }
}

/// Which `k` has `x ≡ ζ3^k (mod m)`, if any.
fn match_root<T: Int>(x: &Eisenstein<T>, m: &Eisenstein<T>) -> Option<u8> {
    (0..3u8).find(|&k| m.divides(&(x - &Eisenstein::zeta3().pow(k as u64))))
}

/// `[a/π]` for a prime (or unit) `π`.
pub fn chi_prime<T: Int>(a: &Eisenstein<T>, pi: &Eisenstein<T>) -> Result<CubicValue> {
    let kind = classify_prime(pi).ok_or_else(|| Error::NotPrime(pi.to_string()))?;
    let e = match kind {
        PrimeKind::Unit | PrimeKind::Ramified => return Ok(CubicValue::ONE),
        PrimeKind::Split(p) => (p - 1) / 3,
        PrimeKind::Inert(q) => (q * q - 1) / 3,
    };
    if pi.divides(a) {
        return Ok(CubicValue::Zero);
    }
    let x = a.pow_mod(e, pi)?;
    let k = match_root(&x, pi).expect("Euler criterion lands on a cube root of unity");
    Ok(CubicValue::Root(k))
}

/// `[a/b]` as the product of [`chi_prime`] over the prime factors of `b`.
pub fn cubic_symbol_factored<T: Int>(a: &Eisenstein<T>, b: &Eisenstein<T>) -> Result<CubicValue> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let f = eisenstein::factor(b)?;
    let mut acc = CubicValue::ONE;
    for (pi, e) in &f.primes {
        acc *= chi_prime(a, pi)?.pow(*e as u64);
        if acc.is_zero() {
            break;
        }
    }
    Ok(acc)
}

/// The three supplementary arguments of cubic reciprocity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Supplement {
    Zeta3,
    Lambda,
    Three,
}

/// `[ζ3/a]`, `[(1−ζ3)/a]` or `[3/a]` for primary `a`, from the closed
/// formulas in the coefficients of `a`.
pub fn supplementary_epsilon<T: Int>(kind: Supplement, a: &Eisenstein<T>) -> Result<CubicValue> {
    let sign = a.primary_sign().ok_or_else(|| Error::NotPrimary(a.to_string()))?;
    let a = if sign == 1 { a.clone() } else { -a };
    let three = int::<T>(3);
    let exact = |v: T| -> i64 {
        debug_assert!((v.clone() % three.clone()).is_zero());
        (v / three.clone()).mod_floor(&three).to_i64().expect("small")
    };
    let k = match kind {
        Supplement::Zeta3 => exact(T::one() - a.a1.clone() - a.a2.clone()),
        Supplement::Lambda => exact(a.a1.clone() - T::one()),
        Supplement::Three => exact(a.a2.clone()),
    };
    Ok(CubicValue::root(k))
}

fn strip_lambda<T: Int>(x: &mut Eisenstein<T>) -> u32 {
    let lambda = Eisenstein::lambda();
    let mut l = 0;
    while !x.is_coprime_to_three() {
        *x = x.exact_div(&lambda).expect("λ divides");
        l += 1;
    }
    l
}

/// Exponent `j` with `u = ±ζ3^j` for a unit `u`.
fn unit_zeta_exponent<T: Int>(u: &Eisenstein<T>) -> u64 {
    let z = Eisenstein::<T>::zeta3();
    (0..3u64)
        .find(|&j| {
            let r = z.pow(j);
            *u == r || *u == -&r
        })
        .expect("argument is a unit")
}

/// `[a/b]` computed by repeated reduction and reciprocity, without factoring.
pub fn cubic_symbol<T: Int>(a: &Eisenstein<T>, b: &Eisenstein<T>) -> Result<CubicValue> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let mut a = a.clone();
    let mut b = b.clone();
    strip_lambda(&mut b);
    let mut acc = CubicValue::ONE;
    loop {
        if b.is_unit() {
            return Ok(acc);
        }
        if b.mod3() != (1, 0) {
            b = primary_associate(&b)?.1;
        }
        a = a.rem(&b)?;
        if a.is_zero() {
            return Ok(CubicValue::Zero);
        }
        let l = strip_lambda(&mut a);
        let (mu, a_prime) = primary_associate(&a)?;
        // a = mu^{-1}·a′ and [−1/b] = 1.
        let j = unit_zeta_exponent(&mu.conj());
        if j > 0 {
            acc *= supplementary_epsilon(Supplement::Zeta3, &b)?.pow(j);
        }
        if l > 0 {
            acc *= supplementary_epsilon(Supplement::Lambda, &b)?.pow(l as u64);
        }
        if a_prime.is_unit() {
            return Ok(acc);
        }
        a = std::mem::replace(&mut b, a_prime);
    }
}

/// `ε(a, b) = [a/b]·[b/a]^{-1}` for coprime nonzero `a`, `b`.
pub fn epsilon_factor<T: Int>(a: &Eisenstein<T>, b: &Eisenstein<T>) -> Result<CubicValue> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::Zero);
    }
    if !eisenstein::gcd(a, b)?.is_unit() {
        return Err(Error::NotCoprime(a.to_string(), b.to_string()));
    }
    Ok(cubic_symbol(a, b)? * cubic_symbol(b, a)?.inv())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith;
    use rand::{Rng, SeedableRng};

    type E = Eisenstein<i64>;

    fn e(a1: i64, a2: i64) -> E {
        E::from_ints(a1, a2)
    }

    fn elements_up_to(bound: i64) -> Vec<E> {
        let r = 2 * arith::isqrt(bound as u64) as i64 + 2;
        let mut v = Vec::new();
        for a1 in -r..=r {
            for a2 in -r..=r {
                let x = e(a1, a2);
                if !x.is_zero() && x.norm() <= bound {
                    v.push(x);
                }
            }
        }
        v
    }

    fn primary_up_to(bound: i64) -> Vec<E> {
        elements_up_to(bound).into_iter().filter(|x| x.is_primary()).collect()
    }

    #[test]
    fn value_algebra() {
        use CubicValue::*;
        assert_eq!(Root(1) * Root(2), Root(0));
        assert_eq!(Root(2) * Root(2), Root(1));
        assert_eq!(Zero * Root(1), Zero);
        assert_eq!(Root(1).inv(), Root(2));
        assert_eq!(Root(0).conj(), Root(0));
        assert_eq!(Root(2).pow(2), Root(1));
        for s in ["0", "1", "w", "w^2"] {
            assert_eq!(s.parse::<CubicValue>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn chi_prime_examples() {
        let pi = e(2, 3);
        assert_eq!(chi_prime(&e(1, 0), &pi).unwrap(), CubicValue::ONE);
        assert_eq!(chi_prime(&e(2, 0), &pi).unwrap(), CubicValue::Root(1));
        assert_eq!(chi_prime(&(&pi * &e(4, -1)), &pi).unwrap(), CubicValue::Zero);
        assert_eq!(chi_prime(&e(5, 7), &e(1, -1)).unwrap(), CubicValue::ONE);
        assert_eq!(chi_prime(&e(3, 0), &e(1, -1)).unwrap(), CubicValue::ONE);
        assert_eq!(chi_prime(&e(7, 0), &e(5, 0)).unwrap(), CubicValue::ONE);
        assert_eq!(chi_prime(&e(10, 0), &e(5, 0)).unwrap(), CubicValue::Zero);
        assert!(matches!(chi_prime(&e(1, 0), &e(7, 0)), Err(Error::NotPrime(_))));
    }

    #[test]
    fn chi_prime_matches_residue_field_oracle() {
        // Z[ζ3]/π ≅ Z/p with ζ3 ↦ −a1·a2^{-1}; Euler's criterion in Z/p.
        for p in arith::primes_up_to(400).into_iter().filter(|p| p % 3 == 1) {
            let pi: E = eisenstein::prime_above(p).unwrap();
            let (a1, a2) = (pi.a1.rem_euclid(p as i64) as u64, pi.a2.rem_euclid(p as i64) as u64);
            let w = arith::mul_mod(p - a1, arith::pow_mod(a2, p - 2, p), p);
            for x1 in -6i64..6 {
                for x2 in -6i64..6 {
                    let x = e(x1, x2);
                    let img =
                        ((x1.rem_euclid(p as i64) as u64) + arith::mul_mod(x2.rem_euclid(p as i64) as u64, w, p)) % p;
                    let want = if img == 0 {
                        CubicValue::Zero
                    } else {
                        let t = arith::pow_mod(img, (p - 1) / 3, p);
                        let k = (0..3).find(|&k| arith::pow_mod(w, k, p) == t).unwrap();
                        CubicValue::Root(k as u8)
                    };
                    assert_eq!(chi_prime(&x, &pi).unwrap(), want, "[{x}/{pi}]");
                }
            }
        }
    }

    #[test]
    fn factored_examples() {
        let pi = e(2, 3);
        assert_eq!(
            cubic_symbol_factored(&e(2, 0), &pi.square()).unwrap(),
            CubicValue::Root(2)
        );
        for a in [e(1, 0), e(3, 0), e(7, 0), e(-5, 0)] {
            assert_eq!(cubic_symbol_factored(&a, &e(2, 0)).unwrap(), CubicValue::ONE);
        }
        assert_eq!(cubic_symbol_factored(&e(4, 9), &e(0, 1)).unwrap(), CubicValue::ONE);
        assert_eq!(cubic_symbol_factored(&e(4, 9), &E::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn fast_symbol_examples() {
        assert_eq!(cubic_symbol(&e(2, 0), &e(2, 3)).unwrap(), CubicValue::Root(1));
        assert_eq!(cubic_symbol(&e(1, 0), &e(-11, 6)).unwrap(), CubicValue::ONE);
        assert_eq!(cubic_symbol(&e(6, 0), &e(3, 0)).unwrap(), CubicValue::ONE);
        assert_eq!(cubic_symbol(&e(14, 0), &e(7, 0)).unwrap(), CubicValue::Zero);
        assert_eq!(cubic_symbol(&e(1, 0), &E::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn fast_matches_factored_small_norms() {
        let xs = elements_up_to(150);
        for a in &xs {
            for b in &xs {
                assert_eq!(
                    cubic_symbol(a, b).unwrap(),
                    cubic_symbol_factored(a, b).unwrap(),
                    "[{a}/{b}]"
                );
            }
        }
    }

    #[test]
    fn fast_matches_factored_large_random() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..500 {
            let a = e(rng.gen_range(-5000..5000), rng.gen_range(-5000..5000));
            let b = e(rng.gen_range(-5000..5000), rng.gen_range(-5000..5000));
            if b.is_zero() {
                continue;
            }
            assert_eq!(cubic_symbol(&a, &b).unwrap(), cubic_symbol_factored(&a, &b).unwrap());
        }
    }

    #[test]
    fn supplementary_examples() {
        assert_eq!(
            supplementary_epsilon(Supplement::Zeta3, &e(1, 0)).unwrap(),
            CubicValue::ONE
        );
        assert_eq!(
            supplementary_epsilon(Supplement::Three, &e(2, 3)).unwrap(),
            CubicValue::Root(2)
        );
        assert!(matches!(
            supplementary_epsilon(Supplement::Lambda, &e(2, 1)),
            Err(Error::NotPrimary(_))
        ));
    }

    #[test]
    fn supplementary_matches_factored_symbol() {
        for a in primary_up_to(800) {
            if a.is_unit() {
                continue;
            }
            for (kind, x) in [
                (Supplement::Zeta3, e(0, 1)),
                (Supplement::Lambda, e(1, -1)),
                (Supplement::Three, e(3, 0)),
            ] {
                assert_eq!(
                    supplementary_epsilon(kind, &a).unwrap(),
                    cubic_symbol_factored(&x, &a).unwrap(),
                    "{kind:?} {a}"
                );
            }
        }
    }

    #[test]
    fn reciprocity_small() {
        let ps = primary_up_to(300);
        for a in &ps {
            for b in &ps {
                if eisenstein::are_coprime(a, b) {
                    assert_eq!(cubic_symbol(a, b).unwrap(), cubic_symbol(b, a).unwrap(), "{a} {b}");
                    assert_eq!(epsilon_factor(a, b).unwrap(), CubicValue::ONE);
                }
            }
        }
    }

    #[test]
    fn epsilon_identities() {
        let xs = elements_up_to(60);
        for a in &xs {
            for b in &xs {
                if !eisenstein::are_coprime(a, b) {
                    assert!(epsilon_factor(a, b).is_err() || a.is_unit() || b.is_unit());
                    continue;
                }
                let ab = epsilon_factor(a, b).unwrap();
                assert_eq!(ab * epsilon_factor(b, a).unwrap(), CubicValue::ONE);
                assert_eq!(ab, epsilon_factor(b, a).unwrap().pow(2));
            }
        }
    }

    #[test]
    fn cube_criterion_brute_force() {
        for p in arith::primes_up_to(200).into_iter().filter(|p| p % 3 == 1) {
            let pi: E = eisenstein::prime_above(p).unwrap();
            // Residues mod π are represented by the integers 0..p.
            let cubes: std::collections::HashSet<i64> =
                (1..p as i64).map(|t| t * t % p as i64 * t % p as i64).collect();
            for a in 1..p as i64 {
                let want = cubes.contains(&a);
                assert_eq!(
                    chi_prime(&e(a, 0), &pi).unwrap() == CubicValue::ONE,
                    want,
                    "{a} mod {pi}"
                );
                assert_eq!(cubic_symbol(&e(a, 0), &pi).unwrap() == CubicValue::ONE, want);
            }
        }
    }

    #[test]
    fn conjugation_law() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..2000 {
            let a = e(rng.gen_range(-300..300), rng.gen_range(-300..300));
            let b = e(rng.gen_range(-300..300), rng.gen_range(-300..300));
            if b.is_zero() {
                continue;
            }
            assert_eq!(
                cubic_symbol(&a.conj(), &b.conj()).unwrap(),
                cubic_symbol(&a, &b).unwrap().conj()
            );
        }
    }
}
