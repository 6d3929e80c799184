//! Sums of the spin over prime ideals, the cube-proportion count and λ3(n).

use std::collections::BTreeMap;

use serde::Serialize;

use crate::arith;
use crate::cubic::{chi_prime, CubicValue};
use crate::error::{Error, Result};
use crate::ideals::{enumerate_prime_ideals, prime_above, PrimeIdealRecord};
use crate::spin::spin_ideal;
use crate::{Eis, Z12};

/// Root counts of the spin over all prime ideals of norm `≤ x`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SpinSumReport {
    pub x: u64,
    pub c1: u64,
    pub cw: u64,
    pub cw2: u64,
    pub zeros: u64,
    pub total: u64,
}

impl SpinSumReport {
    fn add(&mut self, v: CubicValue) {
        match v {
            CubicValue::Zero => self.zeros += 1,
            CubicValue::Root(0) => self.c1 += 1,
            CubicValue::Root(1) => self.cw += 1,
            CubicValue::Root(_) => self.cw2 += 1,
        }
        self.total += 1;
    }

    pub fn is_real(&self) -> bool {
        self.cw == self.cw2
    }

    /// `Re S = c1 − (cw + cw2)/2`.
    pub fn re_s(&self) -> f64 {
        self.c1 as f64 - (self.cw + self.cw2) as f64 / 2.0
    }

    /// `Im S = (cw − cw2)·√3/2`.
    pub fn im_s(&self) -> f64 {
        (self.cw as f64 - self.cw2 as f64) * 3f64.sqrt() / 2.0
    }

    /// `|S|²` exactly: `c1² + cw² + cw2² − c1·cw − c1·cw2 − cw·cw2`.
    pub fn abs2(&self) -> i128 {
        let (a, b, c) = (self.c1 as i128, self.cw as i128, self.cw2 as i128);
        a * a + b * b + c * c - a * b - a * c - b * c
    }

    /// `|S| ≤ x^θ`, compared as `|S|² ≤ x^{2θ}`.
    pub fn within_exponent(&self, theta: f64) -> bool {
        (self.abs2() as f64) <= (self.x as f64).powf(2.0 * theta)
    }
}

/// Powers of ten up to `x`, followed by `x` itself.
pub fn default_checkpoints(x: u64) -> Vec<u64> {
    let mut v: Vec<u64> = std::iter::successors(Some(10u64), |c| c.checked_mul(10))
        .take_while(|&c| c <= x)
        .collect();
    if v.last() != Some(&x) {
        v.push(x);
    }
    v
}

fn normalize_checkpoints(x: u64, checkpoints: &[u64]) -> Vec<u64> {
    let mut cps: Vec<u64> = checkpoints.iter().copied().filter(|&c| c <= x).collect();
    cps.push(x);
    cps.sort_unstable();
    cps.dedup();
    cps
}

/// Fold the records of norm `≤ x` into one snapshot per checkpoint.
fn fold_checkpoints<S: Clone, F>(
    x: u64,
    checkpoints: &[u64],
    workers: usize,
    init: S,
    mut step: F,
    snapshot: impl Fn(&S, u64) -> S,
) -> Result<Vec<S>>
where
    F: FnMut(&mut S, &PrimeIdealRecord),
{
    let cps = normalize_checkpoints(x, checkpoints);
    let mut out = Vec::with_capacity(cps.len());
    let mut state = init;
    let mut next = 0;
    enumerate_prime_ideals(x, workers, |chunk| {
        for r in chunk {
            while next < cps.len() && r.norm > cps[next] {
                out.push(snapshot(&state, cps[next]));
                next += 1;
            }
            step(&mut state, r);
        }
    })?;
    while next < cps.len() {
        out.push(snapshot(&state, cps[next]));
        next += 1;
    }
    Ok(out)
}

/// Spin root counts at each checkpoint (`x` is always included).
pub fn spin_sum(x: u64, checkpoints: &[u64], workers: usize) -> Result<Vec<SpinSumReport>> {
    fold_checkpoints(
        x,
        checkpoints,
        workers,
        SpinSumReport::default(),
        |s, r| s.add(r.spin),
        |s, cp| SpinSumReport { x: cp, ..s.clone() },
    )
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct CubeReport {
    pub x: u64,
    pub hits: u64,
    pub total: u64,
    pub ratio: f64,
}

/// The two primary primes `π = r² + s²` of Z[ζ3] coming from one split
/// rational prime, each with the `r` of one representation.
pub fn cube_candidates(records: &[PrimeIdealRecord]) -> Vec<(Eis, Eis)> {
    let mut out: Vec<(Eis, Eis)> = Vec::new();
    for rec in records.iter().filter(|r| r.f == 1) {
        let g = rec.gen.as_ref().expect("degree-1 records have generators");
        let pi = g.rel_norm();
        if !out.iter().any(|(p, _)| *p == pi) {
            out.push((pi, g.r.clone()));
        }
    }
    out
}

/// Is `r` a cube modulo the prime `π`?
pub fn is_cube_mod(r: &Eis, pi: &Eis) -> Result<bool> {
    Ok(chi_prime(r, pi)? == CubicValue::ONE)
}

/// Proportion of primary primes `π = r² + s²`, `N(π) ≤ x`, for which `r` is
/// a cube modulo `π`, at each checkpoint.
pub fn cube_proportion(x: u64, checkpoints: &[u64], workers: usize) -> Result<Vec<CubeReport>> {
    let mut err = None;
    let mut pending: Vec<PrimeIdealRecord> = Vec::new();
    let reports = fold_checkpoints(
        x,
        checkpoints,
        workers,
        CubeReport::default(),
        |s, r| {
            if r.f != 1 {
                return;
            }
            pending.push(r.clone());
            if pending.len() < 4 {
                return;
            }
            for (pi, rr) in cube_candidates(&pending) {
                match is_cube_mod(&rr, &pi) {
                    Ok(hit) => {
                        s.total += 1;
                        s.hits += hit as u64;
                    }
                    Err(e) => err = Some(e),
                }
            }
            pending.clear();
        },
        |s, cp| CubeReport {
            x: cp,
            ratio: if s.total == 0 {
                0.0
            } else {
                s.hits as f64 / s.total as f64
            },
            ..s.clone()
        },
    )?;
    match err {
        Some(e) => Err(e),
        None => Ok(reports),
    }
}

/// Root counts of `λ3(n) = Σ_{N𝔞 = n} [𝔞]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Lambda3 {
    pub n: u64,
    pub c1: u64,
    pub cw: u64,
    pub cw2: u64,
    pub zeros: u64,
    pub ideals: u64,
}

impl Lambda3 {
    /// The value `c1 − cw` when the sum is real.
    pub fn real_value(&self) -> Option<i64> {
        (self.cw == self.cw2).then(|| self.c1 as i64 - self.cw as i64)
    }
}

/// Generators of all ideals of norm `p^e`, as products over the primes
/// above `p`.
fn ideals_of_prime_power(p: u64, e: u32) -> Result<Vec<Z12>> {
    let recs = prime_above(p)?;
    let gens: Vec<(Z12, u32)> = recs
        .iter()
        .map(|r| {
            let g = r.gen.clone().unwrap_or_else(|| Z12::from_ints(1, -1, 0, 0));
            (g, r.f as u32)
        })
        .collect();
    let mut out = Vec::new();
    fn rec(gens: &[(Z12, u32)], left: u32, acc: Z12, out: &mut Vec<Z12>) {
        match gens.split_first() {
            None => {
                if left == 0 {
                    out.push(acc);
                }
            }
            Some(((g, f), rest)) => {
                let mut cur = acc;
                let mut used = 0;
                loop {
                    rec(rest, left - used, cur.clone(), out);
                    if used + f > left {
                        break;
                    }
                    cur = &cur * g;
                    used += f;
                }
            }
        }
    }
    rec(&gens, e, Z12::one(), &mut out);
    Ok(out)
}

/// `λ3(n)` by enumerating every ideal of norm `n`.
pub fn lambda3(n: u64) -> Result<Lambda3> {
    if n == 0 {
        return Err(Error::Zero);
    }
    let mut gens = vec![Z12::one()];
    for (p, e) in arith::factor(n) {
        let local = ideals_of_prime_power(p, e)?;
        let mut next = Vec::with_capacity(gens.len() * local.len());
        for a in &gens {
            for b in &local {
                next.push(a * b);
            }
        }
        gens = next;
    }
    let mut out = Lambda3 {
        n,
        ..Default::default()
    };
    let mut counts: BTreeMap<Option<u8>, u64> = BTreeMap::new();
    for g in &gens {
        *counts.entry(spin_ideal(g)?.exponent()).or_default() += 1;
    }
    out.ideals = gens.len() as u64;
    out.zeros = counts.get(&None).copied().unwrap_or(0);
    out.c1 = counts.get(&Some(0)).copied().unwrap_or(0);
    out.cw = counts.get(&Some(1)).copied().unwrap_or(0);
    out.cw2 = counts.get(&Some(2)).copied().unwrap_or(0);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::prime_ideals_up_to;
    use crate::Z12;

    #[test]
    fn checkpoints() {
        assert_eq!(default_checkpoints(100_000), vec![10, 100, 1000, 10_000, 100_000]);
        assert_eq!(default_checkpoints(2500), vec![10, 100, 1000, 2500]);
        assert_eq!(normalize_checkpoints(50, &[100, 20, 20, 5]), vec![5, 20, 50]);
    }

    #[test]
    fn spin_sum_small() {
        let r = spin_sum(12, &[], 1).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!((r[0].c1, r[0].cw, r[0].cw2), (r[0].c1, 0, 0));
        assert_eq!(r[0].total, 2);
        let reps = spin_sum(50_000, &default_checkpoints(50_000), 3).unwrap();
        for rep in &reps {
            assert!(rep.is_real(), "{rep:?}");
            assert_eq!(rep.total, rep.c1 + rep.cw + rep.cw2 + rep.zeros);
        }
        let recs = prime_ideals_up_to(1000, 1).unwrap();
        assert_eq!(reps[2].x, 1000);
        assert_eq!(reps[2].total, recs.len() as u64);
    }

    #[test]
    fn abs2_matches_complex_value() {
        let r = SpinSumReport {
            x: 1,
            c1: 17,
            cw: 5,
            cw2: 9,
            zeros: 0,
            total: 31,
        };
        let (re, im) = (r.re_s(), r.im_s());
        assert!((re * re + im * im - r.abs2() as f64).abs() < 1e-9);
    }

    #[test]
    fn worker_count_does_not_matter() {
        let a = spin_sum(200_000, &[1000, 50_000], 1).unwrap();
        let b = spin_sum(200_000, &[1000, 50_000], 7).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn cube_proportion_small() {
        let r = cube_proportion(10_000, &[], 2).unwrap();
        let last = r.last().unwrap();
        assert!(last.ratio >= 0.25 && last.ratio <= 0.42, "{last:?}");
        let p_count = (13..=10_000u64).filter(|&p| p % 12 == 1 && arith::is_prime(p)).count();
        assert_eq!(last.total as usize, 2 * p_count);
    }

    #[test]
    fn cube_decision_is_representation_independent() {
        let recs = prime_ideals_up_to(5000, 1).unwrap();
        let u = Z12::fixing_unit();
        for rec in recs.iter().filter(|r| r.f == 1) {
            let g = rec.gen.clone().unwrap();
            let pi = g.rel_norm();
            let base = is_cube_mod(&g.r, &pi).unwrap();
            for alt in [g.sigma(), &u * &g, &u.unit_pow(-1) * &g, -&g] {
                // Associates by units ≡ ±1 (mod 3) keep r² + s² = π up to sign.
                let pi2 = alt.rel_norm();
                assert!(pi2 == pi || pi2 == -&pi);
                assert_eq!(is_cube_mod(&alt.r, &pi).unwrap(), base);
            }
        }
    }

    #[test]
    fn lambda3_examples() {
        let one = lambda3(1).unwrap();
        assert_eq!((one.ideals, one.real_value()), (1, Some(1)));
        let five = lambda3(5).unwrap();
        assert_eq!((five.ideals, five.real_value()), (0, Some(0)));
        let l13 = lambda3(13).unwrap();
        assert_eq!(l13.ideals, 4);
        assert_eq!(l13.cw, l13.cw2);
        assert_eq!(lambda3(25).unwrap().ideals, 2);
        assert_eq!(lambda3(169).unwrap().ideals, 10);
        for n in 1..400 {
            let l = lambda3(n).unwrap();
            assert!(l.real_value().is_some(), "λ3({n}) not real: {l:?}");
        }
    }
}
