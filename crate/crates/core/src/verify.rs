//! Seeded randomized checks of the symbol identities, with replayable
//! witnesses.
//!
//! Sample `i` of a suite draws from `ChaCha8Rng::seed_from_u64(seed)` on
//! stream `(suite_id << 48) | i`, so any failure can be replayed alone from
//! the seed and its index, independently of thread scheduling.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cubic::{cubic_symbol, cubic_symbol_factored, epsilon_factor, supplementary_epsilon, Supplement};
use crate::eisenstein::{are_coprime, primary_associate};
use crate::error::{Error, Result};
use crate::spin::{
    check_pair_symbol, check_splitting, check_twisted_mult, spin_ideal, spin_raw, Outcome, PairSymbolContext,
};
use crate::zeta12::{canonical_generator, in_box, one_mod3_associate};
use crate::{CubicValue, Eis, Z12};

pub type Witness = BTreeMap<String, String>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub samples: usize,
    pub failures: usize,
    pub first_witness: Option<Witness>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Reciprocity,
    Twist,
    Units,
    PairSymbol,
    Splitting,
    Fixing,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Reciprocity,
        Suite::Twist,
        Suite::Units,
        Suite::PairSymbol,
        Suite::Splitting,
        Suite::Fixing,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Reciprocity => "reciprocity",
            Suite::Twist => "twist",
            Suite::Units => "units",
            Suite::PairSymbol => "pairsymbol",
            Suite::Splitting => "splitting",
            Suite::Fixing => "fixing",
        }
    }

    /// Suites named by `name`; `"all"` expands to every suite.
    pub fn parse(name: &str) -> Option<Vec<Suite>> {
        if name == "all" {
            return Some(Suite::ALL.to_vec());
        }
        Suite::ALL.iter().find(|s| s.name() == name).map(|&s| vec![s])
    }

    fn id(self) -> u64 {
        Suite::ALL.iter().position(|&s| s == self).unwrap() as u64 + 1
    }
}

/// Parameters shared by all suites.
///
/// `norm_bound` bounds `N(a)` for the Eisenstein pairs of the reciprocity
/// suite. The Z[ζ12] suites draw coefficients from `|c| ≤ √norm_bound`,
/// clamped to `[3, 50]`; pair-symbol moduli use a quarter of that box.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub samples: usize,
    pub norm_bound: u64,
    pub seed: u64,
    pub workers: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            samples: 1000,
            norm_bound: 2000,
            seed: 42,
            workers: 1,
        }
    }
}

impl VerifyConfig {
    fn coeff_box(&self) -> i64 {
        ((self.norm_bound as f64).sqrt() as i64).clamp(3, 50)
    }
}

pub fn sample_rng(seed: u64, suite: Suite, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((suite.id() << 48) | index as u64);
    rng
}

fn witness<const N: usize>(pairs: [(&str, String); N]) -> Witness {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn error_witness(e: &Error) -> Witness {
    witness([("error", e.to_string())])
}

pub fn random_primary_eis(rng: &mut impl Rng, norm_bound: u64) -> Eis {
    let b = ((4.0 * norm_bound as f64 / 3.0).sqrt() as i64).max(1);
    loop {
        let a = Eis::from_ints(rng.gen_range(-b..=b), rng.gen_range(-b..=b));
        if a.is_coprime_to_three() && (a.norm() as u64) <= norm_bound && !a.is_unit() {
            return primary_associate(&a).expect("coprime to 3").1;
        }
    }
}

fn random_z12(rng: &mut impl Rng, b: i64) -> Z12 {
    Z12::from_ints(
        rng.gen_range(-b..=b),
        rng.gen_range(-b..=b),
        rng.gen_range(-b..=b),
        rng.gen_range(-b..=b),
    )
}

/// A primary non-unit of Z[ζ12], `≡ 1 (mod 3)`.
pub fn random_primary_z12(rng: &mut impl Rng, b: i64) -> Z12 {
    loop {
        let w = random_z12(rng, b);
        if w.is_zero() || !w.is_coprime_to_three() {
            continue;
        }
        let w = one_mod3_associate(&w).expect("coprime to 3").1;
        if !w.is_unit() {
            return w;
        }
    }
}

pub fn random_primary_primitive_z12(rng: &mut impl Rng, b: i64) -> Z12 {
    loop {
        let w = random_primary_z12(rng, b);
        if w.is_primitive() {
            return w;
        }
    }
}

fn reciprocity_sample(rng: &mut ChaCha8Rng, cfg: &VerifyConfig) -> Result<Option<Witness>> {
    let (a, b) = loop {
        let a = random_primary_eis(rng, cfg.norm_bound);
        let b = random_primary_eis(rng, cfg.norm_bound);
        if are_coprime(&a, &b) {
            break (a, b);
        }
    };
    let ab = cubic_symbol(&a, &b)?;
    let ba = cubic_symbol(&b, &a)?;
    let ab_f = cubic_symbol_factored(&a, &b)?;
    let ba_f = cubic_symbol_factored(&b, &a)?;
    if ab != ba || ab != ab_f || ba != ba_f {
        return Ok(Some(witness([
            ("a", a.to_string()),
            ("b", b.to_string()),
            ("[a/b]", ab.to_string()),
            ("[b/a]", ba.to_string()),
            ("[a/b] factored", ab_f.to_string()),
            ("[b/a] factored", ba_f.to_string()),
        ])));
    }
    let three = Eis::from_ints(3, 0);
    for (kind, x) in [
        (Supplement::Zeta3, Eis::zeta3()),
        (Supplement::Lambda, Eis::lambda()),
        (Supplement::Three, three.clone()),
    ] {
        let closed = supplementary_epsilon(kind, &a)?;
        let direct = cubic_symbol_factored(&x, &a)?;
        let eps = if kind == Supplement::Zeta3 {
            epsilon_factor(&x, &a)?
        } else {
            direct
        };
        if closed != direct || closed != eps {
            return Ok(Some(witness([
                ("a", a.to_string()),
                ("supplement", format!("{kind:?}")),
                ("closed form", closed.to_string()),
                ("factored", direct.to_string()),
                ("epsilon", eps.to_string()),
            ])));
        }
    }
    let c = Eis::from_ints(rng.gen_range(-20..=20), rng.gen_range(-20..=20));
    let shifted = &a + &c.scale(&9);
    if !shifted.is_zero() && !shifted.is_unit() {
        let e0 = epsilon_factor(&Eis::zeta3(), &a)?;
        let e1 = epsilon_factor(&Eis::zeta3(), &shifted)?;
        if e0 != e1 {
            return Ok(Some(witness([
                ("a", a.to_string()),
                ("a + 9c", shifted.to_string()),
                ("eps(a)", e0.to_string()),
                ("eps(a + 9c)", e1.to_string()),
            ])));
        }
    }
    Ok(None)
}

fn outcome_witness<W: Serialize>(o: Outcome<W>) -> Option<Witness> {
    match o {
        Outcome::Pass => None,
        Outcome::Fail(w) => {
            let v = serde_json::to_value(&w).expect("witness serializes");
            Some(
                v.as_object()
                    .expect("witness is a struct")
                    .iter()
                    .map(|(k, v)| {
                        (
                            k.clone(),
                            v.as_str().map(str::to_string).unwrap_or_else(|| v.to_string()),
                        )
                    })
                    .collect(),
            )
        }
    }
}

fn twist_sample(rng: &mut ChaCha8Rng, cfg: &VerifyConfig) -> Result<Option<Witness>> {
    let b = cfg.coeff_box();
    let w = random_primary_primitive_z12(rng, b);
    let z = random_primary_z12(rng, b);
    Ok(outcome_witness(check_twisted_mult(&w, &z)?))
}

fn pair_sample(rng: &mut ChaCha8Rng, cfg: &VerifyConfig) -> Result<Option<Witness>> {
    let b = cfg.coeff_box();
    let wb = (b / 4).max(3);
    let ctx = loop {
        let (w1, w2) = if rng.gen_bool(0.25) {
            // Moduli sharing a prime with opposite orientation, so d ≠ 1.
            let w = random_primary_primitive_z12(rng, 3);
            let x = random_primary_primitive_z12(rng, 3);
            let y = random_primary_primitive_z12(rng, 3);
            (&w * &x, &w.sigma() * &y)
        } else {
            (
                random_primary_primitive_z12(rng, wb),
                random_primary_primitive_z12(rng, wb),
            )
        };
        if !w1.is_primitive() || !w2.is_primitive() {
            continue;
        }
        match PairSymbolContext::new(&w1, &w2) {
            Ok(ctx) => break ctx,
            Err(Error::Degenerate(_)) => continue,
            Err(e) => return Err(e),
        }
    };
    let zeta = random_primary_z12(rng, b);
    Ok(outcome_witness(check_pair_symbol(&ctx, &zeta)?))
}

fn splitting_sample(rng: &mut ChaCha8Rng, cfg: &VerifyConfig) -> Result<Option<Witness>> {
    let b = cfg.coeff_box();
    loop {
        let z1 = random_primary_primitive_z12(rng, b);
        let t = random_z12(rng, 5);
        let z2 = &z1 + &t.scale(&Eis::from_ints(9, 0));
        match check_splitting(&z1, &z2) {
            Ok(o) => return Ok(outcome_witness(o)),
            Err(Error::Degenerate(_) | Error::NotCoprime(..)) => continue,
            Err(e) => return Err(e),
        }
    }
}

fn fixing_sample(rng: &mut ChaCha8Rng, cfg: &VerifyConfig) -> Result<Option<Witness>> {
    let b = cfg.coeff_box().min(20);
    let z = loop {
        let z = random_z12(rng, b);
        if !z.is_zero() && z.is_coprime_to_three() {
            break z;
        }
    };
    let g = canonical_generator(&z)?;
    let spin = spin_ideal(&z)?;
    let u = Z12::fixing_unit();
    let fail = |what: &str, other: &Z12| {
        Ok(Some(witness([
            ("z", z.to_string()),
            ("generator", g.to_string()),
            ("check", what.to_string()),
            ("associate", other.to_string()),
        ])))
    };
    if !g.is_one_mod3() || !in_box(&g) || !(g.divides(&z) && z.divides(&g)) {
        return fail("canonical generator", &g);
    }
    for k in -3..=3i64 {
        let shifted = &u.unit_pow(k) * &g;
        if in_box(&shifted) != (k == 0) {
            return fail("one associate in the box", &shifted);
        }
        for ell in 0..12 {
            let assoc = &(&Z12::zeta12().pow(ell) * &u.unit_pow(k)) * &z;
            if spin_ideal(&assoc)? != spin || canonical_generator(&assoc)? != g {
                return fail("unit orbit invariance", &assoc);
            }
        }
    }
    Ok(None)
}

/// Exact values of `ε0^k·ζ12^ℓ` for `k = 1..5`, `ℓ = 0, 1, 2`, as
/// numerators over 2 in the basis `(1, i, √3, i√3)`.
pub const UNIT_TABLE: [[[i64; 4]; 3]; 5] = [
    [[1, 1, 1, 1], [1, 2, 0, 1], [-1, 2, 0, 1]],
    [[0, 4, 0, 2], [-2, 3, -1, 2], [-3, 2, -2, 1]],
    [[-5, 5, -3, 3], [-7, 2, -4, 1], [-7, -2, -4, -1]],
    [[-14, 0, -8, 0], [-12, -7, -7, -4], [-7, -12, -4, -7]],
    [[-19, -19, -11, -11], [-7, -26, -4, -15], [7, -26, 4, -15]],
];

/// The deterministic unit checks, one named entry per check.
pub fn unit_checks() -> Vec<(String, bool)> {
    let mut out = Vec::new();
    let u = Z12::fixing_unit();
    let ie6 = &Z12::i() * &Z12::eps0().pow(6);
    out.push(("-i·eps0^6 = fixing unit".to_string(), -&ie6 == u));
    out.push(("-i·eps0^6 ≡ 1 (mod 3)".to_string(), u.is_one_mod3()));
    out.push((
        "[i·eps0^6] = 1".to_string(),
        spin_raw(&ie6).ok() == Some(CubicValue::ONE),
    ));
    out.push((
        "[-i·eps0^6] = 1".to_string(),
        spin_raw(&u).ok() == Some(CubicValue::ONE),
    ));
    let excluded: Vec<[u8; 4]> = [Z12::one(), -&Z12::one(), Z12::i(), -&Z12::i()]
        .iter()
        .map(|x| x.mod3())
        .collect();
    for k in 1..=5u64 {
        for ell in 0..=2u64 {
            let v = &Z12::eps0().pow(k) * &Z12::zeta12().pow(ell);
            let name = format!("eps0^{k}·zeta12^{ell}");
            let [a, b, c, d] = v.real_basis_doubled();
            out.push((
                format!("{name} value"),
                [a, b, c, d].map(|x| x as i64) == UNIT_TABLE[k as usize - 1][ell as usize],
            ));
            out.push((format!("{name} ≢ ±1, ±i (mod 3)"), !excluded.contains(&v.mod3())));
        }
    }
    for k in 1..6 {
        out.push((
            format!("eps0^{k}·zeta12^ℓ never ≡ 1 (mod 3)"),
            (0..12).all(|ell| !(&Z12::eps0().pow(k) * &Z12::zeta12().pow(ell)).is_one_mod3()),
        ));
    }
    out
}

fn units_report() -> SuiteReport {
    let checks = unit_checks();
    let failed: Vec<&String> = checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| n).collect();
    SuiteReport {
        suite: Suite::Units.name().to_string(),
        samples: checks.len(),
        failures: failed.len(),
        first_witness: failed.first().map(|n| witness([("check", n.to_string())])),
    }
}

type SampleFn = fn(&mut ChaCha8Rng, &VerifyConfig) -> Result<Option<Witness>>;

fn run_sampled(suite: Suite, f: SampleFn, cfg: &VerifyConfig) -> SuiteReport {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers.max(1))
        .build()
        .expect("thread pool");
    let results: Vec<Option<Witness>> = pool.install(|| {
        (0..cfg.samples)
            .into_par_iter()
            .map(|i| {
                let mut rng = sample_rng(cfg.seed, suite, i);
                f(&mut rng, cfg)
                    .unwrap_or_else(|e| Some(error_witness(&e)))
                    .map(|mut w| {
                        w.insert("sample".to_string(), i.to_string());
                        w
                    })
            })
            .collect()
    });
    let failures = results.iter().filter(|r| r.is_some()).count();
    SuiteReport {
        suite: suite.name().to_string(),
        samples: cfg.samples,
        failures,
        first_witness: results.into_iter().flatten().next(),
    }
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> SuiteReport {
    match suite {
        Suite::Reciprocity => run_sampled(suite, reciprocity_sample, cfg),
        Suite::Twist => run_sampled(suite, twist_sample, cfg),
        Suite::Units => units_report(),
        Suite::PairSymbol => run_sampled(suite, pair_sample, cfg),
        Suite::Splitting => run_sampled(suite, splitting_sample, cfg),
        Suite::Fixing => run_sampled(suite, fixing_sample, cfg),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(samples: usize, workers: usize) -> VerifyConfig {
        VerifyConfig {
            samples,
            workers,
            ..VerifyConfig::default()
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(Suite::parse(s.name()), Some(vec![s]));
        }
        assert_eq!(Suite::parse("all").unwrap().len(), 6);
        assert_eq!(Suite::parse("nope"), None);
    }

    #[test]
    fn unit_checks_pass() {
        for (name, ok) in unit_checks() {
            assert!(ok, "{name}");
        }
    }

    #[test]
    fn small_runs_pass_and_are_deterministic() {
        for s in Suite::ALL {
            let a = run_suite(s, &cfg(40, 1));
            assert!(a.passed(), "{a:?}");
            assert_eq!(a, run_suite(s, &cfg(40, 3)));
        }
    }

    #[test]
    fn streams_are_distinct() {
        let x: u64 = sample_rng(42, Suite::Twist, 0).gen();
        let y: u64 = sample_rng(42, Suite::Twist, 1).gen();
        let z: u64 = sample_rng(42, Suite::Splitting, 0).gen();
        assert!(x != y && x != z && y != z);
    }
}
