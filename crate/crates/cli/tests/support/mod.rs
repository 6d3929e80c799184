//! A deliberately plain, single-threaded reference for the spin sum: prime
//! ideals come from factoring x⁴ − x² + 1 modulo each prime by brute force,
//! and each spin from an arbitrary primary associate of its generator.

#![allow(dead_code)]

use cubic_spin::spin::spin_raw;
use cubic_spin::zeta12::{gcd, one_mod3_associate};
use cubic_spin::{CubicValue, Z12};

fn primes(limit: u64) -> Vec<u64> {
    let n = limit as usize + 1;
    let mut composite = vec![false; n];
    let mut out = Vec::new();
    for i in 2..n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j < n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// `x⁴ − x² + 1 mod p` divided by `x² + a x + b`: is the remainder zero?
fn quadratic_divides(a: u64, b: u64, p: u64) -> bool {
    // Long division of [1, 0, p−1, 0, 1] (x⁴ … x⁰) by [1, a, b].
    let mut c = [1, 0, p - 1, 0, 1];
    for i in 0..3 {
        let lead = c[i] % p;
        c[i + 1] = (c[i + 1] + p * p - lead * a % p) % p;
        c[i + 2] = (c[i + 2] + p * p - lead * b % p) % p;
    }
    c[3].is_multiple_of(p) && c[4].is_multiple_of(p)
}

fn spin_of(z: &Z12) -> CubicValue {
    if !z.is_coprime_to_three() {
        return CubicValue::Zero;
    }
    let w = one_mod3_associate(z).unwrap().1;
    if !w.is_primitive() {
        return CubicValue::Zero;
    }
    spin_raw(&w).unwrap()
}

/// `(norm, spin)` of every prime ideal of norm at most `x`.
pub fn naive_prime_ideals(x: u64) -> Vec<(u64, CubicValue)> {
    let z = Z12::zeta12();
    let poly = |c: [i64; 3]| {
        // c0 + c1 ζ + c2 ζ²
        let mut acc = Z12::from_ints(c[0], 0, 0, 0);
        acc = &acc + &z.scale(&cubic_spin::Eis::from_ints(c[1], 0));
        &acc + &z.square().scale(&cubic_spin::Eis::from_ints(c[2], 0))
    };
    let mut out = Vec::new();
    for p in primes(x) {
        let pz = Z12::from_ints(p as i64, 0, 0, 0);
        if p % 12 == 1 {
            for rho in 0..p {
                let r2 = rho * rho % p;
                if (r2 * r2 + p - r2 + 1) % p == 0 {
                    let g = gcd(&pz, &poly([-(rho as i64), 1, 0])).unwrap();
                    assert_eq!(g.norm() as u64, p);
                    out.push((p, spin_of(&g)));
                }
            }
        } else if p * p <= x {
            if p == 3 {
                out.push((9, CubicValue::Zero));
                continue;
            }
            let mut found = 0;
            for a in 0..p {
                for b in 0..p {
                    if quadratic_divides(a, b, p) {
                        let g = gcd(&pz, &poly([b as i64, a as i64, 1])).unwrap();
                        assert_eq!(g.norm() as u64, p * p);
                        out.push((p * p, spin_of(&g)));
                        found += 1;
                    }
                }
            }
            // Over F_2 the quadratic factor is repeated.
            assert_eq!(found, if p == 2 { 1 } else { 2 });
        }
    }
    out.sort_by_key(|&(n, _)| n);
    out
}

/// The `sum` CSV for `x` with checkpoints at powers of ten and `x`.
pub fn naive_sum_csv(x: u64, seed: u64) -> String {
    let ideals = naive_prime_ideals(x);
    let mut cps: Vec<u64> = (1..20).map(|k| 10u64.pow(k)).take_while(|&c| c <= x).collect();
    if cps.last() != Some(&x) {
        cps.push(x);
    }
    let mut text = format!("# seed={seed}\nx,c1,cw,cw2,zeros,total,re_S\n");
    for cp in cps {
        let mut c = [0u64; 4];
        for (_, v) in ideals.iter().filter(|(n, _)| *n <= cp) {
            match v {
                CubicValue::Root(k) => c[*k as usize] += 1,
                CubicValue::Zero => c[3] += 1,
            }
        }
        let total: u64 = c.iter().sum();
        let re = c[0] as f64 - (c[1] + c[2]) as f64 / 2.0;
        text += &format!("{cp},{},{},{},{},{total},{re:.16e}\n", c[0], c[1], c[2], c[3]);
    }
    text
}
