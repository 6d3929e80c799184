//! Prime ideals of Z[ζ12] above a rational prime, and their enumeration by
//! norm.

use rayon::prelude::*;
use serde::Serialize;

use crate::arith;
use crate::cubic::CubicValue;
use crate::eisenstein;
use crate::error::Result;
use crate::spin::spin_of_canonical;
use crate::zeta12::{canonical_generator, gcd, Galois};
use crate::{Eis, Z12};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeIdealRecord {
    pub p: u64,
    /// Residue degree: the norm is `p^f`.
    pub f: u8,
    /// Canonical generator; absent for the prime above 3.
    pub gen: Option<Z12>,
    pub norm: u64,
    pub spin: CubicValue,
}

fn record(p: u64, f: u8, z: &Z12) -> Result<PrimeIdealRecord> {
    let gen = canonical_generator(z)?;
    let norm = gen.norm_u64()?;
    debug_assert_eq!(norm, p.pow(f as u32));
    let spin = spin_of_canonical(&gen)?;
    Ok(PrimeIdealRecord {
        p,
        f,
        gen: Some(gen),
        norm,
        spin,
    })
}

fn rational(n: u64) -> Z12 {
    Z12::from_ints(n as i64, 0, 0, 0)
}

/// The distinct ideals among the Galois conjugates of `z`.
fn orbit(z: &Z12, maps: &[Galois]) -> Vec<Z12> {
    let mut out: Vec<Z12> = Vec::new();
    for &g in maps {
        let c = z.galois(g);
        if !out.iter().any(|o| o.divides(&c) && c.divides(o)) {
            out.push(c);
        }
    }
    out
}

/// All prime ideals of Z[ζ12] above the rational prime `p`, sorted by the
/// coordinates `(r1, r2, s1, s2)` of their canonical generators.
pub fn prime_above(p: u64) -> Result<Vec<PrimeIdealRecord>> {
    let mut out = match p {
        2 => vec![record(2, 2, &Z12::from_ints(1, 0, 1, 0))?],
        3 => vec![PrimeIdealRecord {
            p: 3,
            f: 2,
            gen: None,
            norm: 9,
            spin: CubicValue::Zero,
        }],
        _ => {
            let (f, gens) = match p % 12 {
                1 => {
                    let pi: Eis = eisenstein::prime_above(p)?;
                    let w = arith::sqrt_minus_one(p) as i64;
                    let z = gcd(&Z12::from_eis(pi), &Z12::from_ints(w, 0, 1, 0))?;
                    (1, orbit(&z, &Galois::ALL))
                }
                5 => {
                    let w = arith::sqrt_minus_one(p) as i64;
                    let z = gcd(&rational(p), &Z12::from_ints(w, 0, 1, 0))?;
                    (2, orbit(&z, &[Galois::Id, Galois::Sigma]))
                }
                7 => {
                    let pi: Eis = eisenstein::prime_above(p)?;
                    (2, orbit(&Z12::from_eis(pi), &[Galois::Id, Galois::Tau]))
                }
                _ => {
                    let t = arith::sqrt_three(p) as i64;
                    let z = gcd(&rational(p), &(&Z12::from_ints(t, 0, 0, 0) + &Z12::sqrt3()))?;
                    (2, orbit(&z, &[Galois::Id, Galois::Sigma]))
                }
            };
            gens.iter().map(|z| record(p, f, z)).collect::<Result<Vec<_>>>()?
        }
    };
    out.sort_by(|a, b| {
        let ka = a.gen.as_ref().map(|g| g.sort_key());
        let kb = b.gen.as_ref().map(|g| g.sort_key());
        ka.cmp(&kb)
    });
    Ok(out)
}

const SEGMENT: u64 = 1 << 16;

/// Records with norm in `[lo, hi)`, sorted by `(norm, generator)`.
fn segment_records(lo: u64, hi: u64) -> Result<Vec<PrimeIdealRecord>> {
    let mut out = Vec::new();
    for p in arith::primes_in_range(lo, hi) {
        if p % 12 == 1 {
            out.extend(prime_above(p)?);
        }
    }
    let plo = arith::isqrt(lo.saturating_sub(1)) + 1;
    let phi = arith::isqrt(hi - 1) + 1;
    for p in arith::primes_in_range(plo, phi) {
        if p % 12 != 1 {
            out.extend(prime_above(p)?);
        }
    }
    out.sort_by(|a, b| {
        (a.norm, a.gen.as_ref().map(|g| g.sort_key())).cmp(&(b.norm, b.gen.as_ref().map(|g| g.sort_key())))
    });
    Ok(out)
}

/// Stream every prime ideal of norm `≤ x` in increasing `(norm, generator)`
/// order. Segments are computed on a pool of `workers` threads and handed to
/// `sink` in order, so the stream does not depend on the worker count.
pub fn enumerate_prime_ideals<F>(x: u64, workers: usize, mut sink: F) -> Result<()>
where
    F: FnMut(&[PrimeIdealRecord]),
{
    if x < 2 {
        return Ok(());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("thread pool");
    let starts: Vec<u64> = (0..=x).step_by(SEGMENT as usize).collect();
    let batch = 4 * workers.max(1);
    for chunk in starts.chunks(batch) {
        let results: Vec<Result<Vec<PrimeIdealRecord>>> = pool.install(|| {
            chunk
                .par_iter()
                .map(|&lo| segment_records(lo, (lo + SEGMENT).min(x + 1)))
                .collect()
        });
        for r in results {
            sink(&r?);
        }
    }
    Ok(())
}

/// All prime ideals of norm `≤ x`, see [`enumerate_prime_ideals`].
pub fn prime_ideals_up_to(x: u64, workers: usize) -> Result<Vec<PrimeIdealRecord>> {
    let mut out = Vec::new();
    enumerate_prime_ideals(x, workers, |chunk| out.extend_from_slice(chunk))?;
    Ok(out)
}
