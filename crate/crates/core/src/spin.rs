//! The cubic spin `[z] = [s/r]` of primary `z = r + is`, its ideal version,
//! the Dirichlet-style symbol `(z/w)` and executable checks of the symbol
//! identities relating them.

use serde::Serialize;

use crate::cubic::{cubic_symbol, CubicValue};
use crate::eisenstein::{self, Eisenstein};
use crate::error::{Error, Result};
use crate::scalar::Int;
use crate::zeta12::{self, canonical_generator, Cyclo12};

/// `[s/r]` for primary `z = r + is`.
pub fn spin_raw<T: Int>(z: &Cyclo12<T>) -> Result<CubicValue> {
    if !z.is_primary() {
        return Err(Error::NotPrimary(z.to_string()));
    }
    cubic_symbol(&z.s, &z.r)
}

/// Spin of a generator already in canonical form; zero when not primitive.
pub fn spin_of_canonical<T: Int>(z: &Cyclo12<T>) -> Result<CubicValue> {
    if !z.is_primitive() {
        return Ok(CubicValue::Zero);
    }
    spin_raw(z)
}

/// Spin of the ideal generated by `z0`: zero unless the ideal is coprime to 3
/// and its canonical generator is primitive.
pub fn spin_ideal<T: Int>(z0: &Cyclo12<T>) -> Result<CubicValue> {
    if z0.is_zero() {
        return Err(Error::Zero);
    }
    if !z0.is_coprime_to_three() {
        return Ok(CubicValue::Zero);
    }
    spin_of_canonical(&canonical_generator(z0)?)
}

fn require_primary_primitive<T: Int>(w: &Cyclo12<T>) -> Result<()> {
    if !w.is_primary() {
        return Err(Error::NotPrimary(w.to_string()));
    }
    if !w.is_primitive() {
        return Err(Error::NotPrimitive(w.to_string()));
    }
    Ok(())
}

/// `−v·u^{-1} mod m` for `w = u + iv`, the residue `ω` with `σ(w) ↦ 0`
/// under `i ↦ ω`.
fn kill_sigma_root<T: Int>(w: &Cyclo12<T>, m: &Eisenstein<T>) -> Result<Eisenstein<T>> {
    let uinv =
        w.r.inverse_mod(m)
            .ok_or_else(|| Error::NotCoprime(w.r.to_string(), m.to_string()))?;
    (&(-&w.s) * &uinv).rem(m)
}

/// Data for `(z/w) = [(r + ωs)/q]` with `q = u² + v²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolContext<T> {
    pub w: Cyclo12<T>,
    pub q: Eisenstein<T>,
    pub omega: Eisenstein<T>,
}

impl<T: Int> SymbolContext<T> {
    pub fn new(w: &Cyclo12<T>) -> Result<Self> {
        require_primary_primitive(w)?;
        let q = w.rel_norm();
        let omega = kill_sigma_root(w, &q)?;
        assert!(q.divides(&(&omega.square() + &Eisenstein::one())), "ω² + 1 ≢ 0 mod {q}");
        Ok(SymbolContext { w: w.clone(), q, omega })
    }

    /// `r + ω·s`.
    pub fn image(&self, z: &Cyclo12<T>) -> Eisenstein<T> {
        &z.r + &(&self.omega * &z.s)
    }
}

/// `(z/w) = [(r + ωs)/q]`.
pub fn dirichlet_symbol<T: Int>(z: &Cyclo12<T>, ctx: &SymbolContext<T>) -> Result<CubicValue> {
    cubic_symbol(&ctx.image(z), &ctx.q)
}

/// Result of an identity check: pass, or the computed values on failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Outcome<W> {
    Pass,
    Fail(W),
}

impl<W> Outcome<W> {
    pub fn passed(&self) -> bool {
        matches!(self, Outcome::Pass)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistWitness {
    pub w: String,
    pub z: String,
    pub spin_wz: CubicValue,
    pub spin_w: CubicValue,
    pub spin_z: CubicValue,
    pub symbol_z_w: CubicValue,
}

/// `[wz] = [w]·[z]·(z/w)` for `w` primary primitive and `z` primary.
pub fn check_twisted_mult<T: Int>(w: &Cyclo12<T>, z: &Cyclo12<T>) -> Result<Outcome<TwistWitness>> {
    let ctx = SymbolContext::new(w)?;
    if !z.is_primary() {
        return Err(Error::NotPrimary(z.to_string()));
    }
    let spin_wz = spin_raw(&(w * z))?;
    let spin_w = spin_raw(w)?;
    let spin_z = spin_raw(z)?;
    let symbol_z_w = dirichlet_symbol(z, &ctx)?;
    if spin_wz == spin_w * spin_z * symbol_z_w {
        Ok(Outcome::Pass)
    } else {
        Ok(Outcome::Fail(TwistWitness {
            w: w.to_string(),
            z: z.to_string(),
            spin_wz,
            spin_w,
            spin_z,
            symbol_z_w,
        }))
    }
}

/// Which square root of −1 was used at a prime shared by `q1` and `q2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RootChoice {
    First,
    Second,
}

/// Data for the pair-symbol identity
/// `(ζ/w1)(ζ/w2)² = [(r − ωs)/d]·[(r + ωs)/(q1q2²/d)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairSymbolContext<T> {
    pub w1: Cyclo12<T>,
    pub w2: Cyclo12<T>,
    pub q1: Eisenstein<T>,
    pub q2: Eisenstein<T>,
    pub e: Cyclo12<T>,
    pub d: Eisenstein<T>,
    pub omega: Eisenstein<T>,
    /// Root choices at primes dividing both `q1` and `q2`.
    pub shared: Vec<RootChoice>,
}

/// Lift a root of `x² + 1` to the modulus `m`, a power of an odd prime.
fn hensel_sqrt_minus_one<T: Int>(x0: &Eisenstein<T>, m: &Eisenstein<T>) -> Result<Eisenstein<T>> {
    let one = Eisenstein::one();
    let mut x = x0.rem(m)?;
    for _ in 0..64 {
        let f = (&x.square() + &one).rem(m)?;
        if f.is_zero() {
            return Ok(x);
        }
        let inv = (&x + &x)
            .inverse_mod(m)
            .ok_or_else(|| Error::Degenerate(format!("2ω not invertible mod {m}")))?;
        x = (&x - &(&f * &inv)).rem(m)?;
    }
    Err(Error::Degenerate(format!("Hensel lift mod {m} did not converge")))
}

/// `x ≡ a (mod m)` and `x ≡ b (mod n)` for coprime `m`, `n`.
fn crt<T: Int>(a: &Eisenstein<T>, m: &Eisenstein<T>, b: &Eisenstein<T>, n: &Eisenstein<T>) -> Result<Eisenstein<T>> {
    let minv = m
        .inverse_mod(n)
        .ok_or_else(|| Error::NotCoprime(m.to_string(), n.to_string()))?;
    let t = (&(b - a) * &minv).rem(n)?;
    (a + &(m * &t)).rem(&(m * n))
}

fn valuation<T: Int>(x: &Eisenstein<T>, p: &Eisenstein<T>) -> u32 {
    let mut x = x.clone();
    let mut k = 0;
    while let Some(y) = x.exact_div(p) {
        x = y;
        k += 1;
    }
    k
}

impl<T: Int> PairSymbolContext<T> {
    /// `ω` is assembled prime by prime: at a prime of `q1` only it lifts the
    /// root of `w1`, at a prime of `q2` only the root of `w2²`, and at a
    /// shared prime the root belonging to the larger of the two exponents in
    /// `q1` and `q2²`. Requires `q1·q2` odd.
    pub fn new(w1: &Cyclo12<T>, w2: &Cyclo12<T>) -> Result<Self> {
        require_primary_primitive(w1)?;
        require_primary_primitive(w2)?;
        let q1 = w1.rel_norm();
        let q2 = w2.rel_norm();
        let two = Eisenstein::from_ints(2, 0);
        if two.divides(&q1) || two.divides(&q2) {
            return Err(Error::Degenerate("q1·q2 must be odd".into()));
        }
        let w2sq = w2.square();
        let q2sq = q2.square();
        let e = zeta12::gcd(w1, &w2sq.sigma())?;
        let d = e.rel_norm();
        let m = &q1 * &q2sq;
        let root1 = kill_sigma_root(w1, &q1)?;
        let root2 = kill_sigma_root(&w2sq, &q2sq)?;

        let mut primes: Vec<Eisenstein<T>> = Vec::new();
        for f in [eisenstein::factor(&q1)?, eisenstein::factor(&q2)?] {
            for (p, _) in f.primes {
                if !primes.contains(&p) {
                    primes.push(p);
                }
            }
        }
        let mut shared = Vec::new();
        let mut acc = (Eisenstein::zero(), Eisenstein::one());
        for p in &primes {
            let a = valuation(&q1, p);
            let c = valuation(&q2sq, p);
            let pk = p.pow((a + c) as u64);
            let seed = if a >= c { &root1 } else { &root2 };
            if a > 0 && c > 0 {
                shared.push(if a >= c { RootChoice::First } else { RootChoice::Second });
            }
            let local = hensel_sqrt_minus_one(seed, &pk)?;
            let x = crt(&acc.0, &acc.1, &local, &pk)?;
            acc = (x, &acc.1 * &pk);
        }
        let omega = acc.0.rem(&m)?;
        if !m.divides(&(&omega.square() + &Eisenstein::one())) {
            return Err(Error::Degenerate(format!("ω² + 1 ≢ 0 mod {m}")));
        }
        Ok(PairSymbolContext {
            w1: w1.clone(),
            w2: w2.clone(),
            q1,
            q2,
            e,
            d,
            omega,
            shared,
        })
    }

    /// `q1·q2²/d`.
    pub fn cofactor(&self) -> Eisenstein<T> {
        (&self.q1 * &self.q2.square())
            .exact_div(&self.d)
            .expect("d divides q1·q2²")
    }

    pub fn has_nontrivial_d(&self) -> bool {
        !self.d.is_unit()
    }
}

/// `[(r − ωs)/d]·[(r + ωs)/(q1q2²/d)]`.
pub fn pair_symbol_eval<T: Int>(ctx: &PairSymbolContext<T>, zeta: &Cyclo12<T>) -> Result<CubicValue> {
    if !zeta.is_primary() {
        return Err(Error::NotPrimary(zeta.to_string()));
    }
    let ws = &ctx.omega * &zeta.s;
    let minus = &zeta.r - &ws;
    let plus = &zeta.r + &ws;
    Ok(cubic_symbol(&minus, &ctx.d)? * cubic_symbol(&plus, &ctx.cofactor())?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairWitness {
    pub w1: String,
    pub w2: String,
    pub zeta: String,
    pub lhs: CubicValue,
    pub rhs: CubicValue,
}

/// `(ζ/w1)(ζ/w2)²` against [`pair_symbol_eval`].
pub fn check_pair_symbol<T: Int>(ctx: &PairSymbolContext<T>, zeta: &Cyclo12<T>) -> Result<Outcome<PairWitness>> {
    let c1 = SymbolContext::new(&ctx.w1)?;
    let c2 = SymbolContext::new(&ctx.w2)?;
    let lhs = dirichlet_symbol(zeta, &c1)? * dirichlet_symbol(zeta, &c2)?.pow(2);
    let rhs = pair_symbol_eval(ctx, zeta)?;
    if lhs == rhs {
        Ok(Outcome::Pass)
    } else {
        Ok(Outcome::Fail(PairWitness {
            w1: ctx.w1.to_string(),
            w2: ctx.w2.to_string(),
            zeta: zeta.to_string(),
            lhs,
            rhs,
        }))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplittingWitness {
    pub z1: String,
    pub z2: String,
    pub delta: String,
    pub lhs: CubicValue,
    pub rhs: CubicValue,
}

/// Splitting identity for `z1 ≡ z2 (mod 9)`: with `Δ = r1s2 − r2s1`,
/// `[x/Δ] = [s1/r1]²·[s2/r2]` where `x = (r1r2 + s1s2)/(r1² + s1²) mod Δ`
/// represents `z2·z1^{-1}`.
pub fn check_splitting<T: Int>(z1: &Cyclo12<T>, z2: &Cyclo12<T>) -> Result<Outcome<SplittingWitness>> {
    for z in [z1, z2] {
        if !z.is_primary() {
            return Err(Error::NotPrimary(z.to_string()));
        }
    }
    let diff = z2 - z1;
    let nine = Eisenstein::from_ints(9, 0);
    if !(nine.divides(&diff.r) && nine.divides(&diff.s)) {
        return Err(Error::Degenerate(format!("{z1} ≢ {z2} (mod 9)")));
    }
    let delta = &(&z1.r * &z2.s) - &(&z2.r * &z1.s);
    if delta.is_zero() {
        return Err(Error::Degenerate("Δ = 0".into()));
    }
    if !zeta12::gcd(z1, z2)?.is_unit() {
        return Err(Error::NotCoprime(z1.to_string(), z2.to_string()));
    }
    if !eisenstein::are_coprime(&z1.r, &z2.r) {
        return Err(Error::NotCoprime(z1.r.to_string(), z2.r.to_string()));
    }
    let n1 = z1.rel_norm();
    let inv = n1
        .inverse_mod(&delta)
        .ok_or_else(|| Error::NotCoprime(n1.to_string(), delta.to_string()))?;
    let x = (&(&(&z1.r * &z2.r) + &(&z1.s * &z2.s)) * &inv).rem(&delta)?;
    let lhs = cubic_symbol(&x, &delta)?;
    let rhs = spin_raw(z1)?.pow(2) * spin_raw(z2)?;
    if lhs == rhs {
        Ok(Outcome::Pass)
    } else {
        Ok(Outcome::Fail(SplittingWitness {
            z1: z1.to_string(),
            z2: z2.to_string(),
            delta: delta.to_string(),
            lhs,
            rhs,
        }))
    }
}
