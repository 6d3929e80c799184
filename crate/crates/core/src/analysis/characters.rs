//! Smoothed short sums of `[·/q]` over residue classes mod 3, and complete
//! Gauss sums on `Z[ζ3]/3q`.

use std::collections::HashSet;
use std::f64::consts::PI;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cubic::{cubic_symbol, CubicValue};
use crate::eisenstein::{factor, primary_associate};
use crate::error::{Error, Result};
use crate::Eis;

use super::poisson::bump;

fn require_primary(q: &Eis) -> Result<()> {
    if q.is_primary() {
        Ok(())
    } else {
        Err(Error::NotPrimary(q.to_string()))
    }
}

/// `gcd(a1, a2) = 1`, so that `Z[ζ3]/q ≅ Z/N(q)`.
pub fn is_primitive(q: &Eis) -> bool {
    q.a1.gcd(&q.a2) == 1
}

/// `[n/q]` for every `n mod N(q)`, for primitive `q`. The symbol is
/// completely multiplicative in `n`, so only rational primes are evaluated.
fn rational_table(q: &Eis, n: u64) -> Result<Vec<CubicValue>> {
    let n = n as usize;
    let mut table = vec![CubicValue::Zero; n];
    if n == 1 {
        return Ok(table);
    }
    let mut spf = vec![0usize; n];
    table[1] = CubicValue::ONE;
    for m in 2..n {
        if spf[m] == 0 {
            for k in (m..n).step_by(m) {
                if spf[k] == 0 {
                    spf[k] = m;
                }
            }
            table[m] = cubic_symbol(&Eis::from_ints(m as i64, 0), q)?;
        } else {
            table[m] = table[spf[m]] * table[m / spf[m]];
        }
    }
    Ok(table)
}

enum Evaluator {
    /// `s1 + s2·ζ3 ↦ s1 + s2·w mod N` with `w ≡ ζ3 (mod q)`.
    Table {
        n: i128,
        w: i128,
        table: Vec<CubicValue>,
    },
    Direct(Eis),
}

impl Evaluator {
    fn new(q: &Eis) -> Result<Self> {
        let n = q.norm();
        if is_primitive(q) && q.a2 != 0 {
            let a2inv = mod_inverse(q.a2.rem_euclid(n), n).expect("a2 is a unit mod N(q)");
            let w = (-q.a1 * a2inv).rem_euclid(n);
            Ok(Evaluator::Table {
                n,
                w,
                table: rational_table(q, n as u64)?,
            })
        } else {
            Ok(Evaluator::Direct(q.clone()))
        }
    }

    fn eval(&self, s1: i64, s2: i64) -> Result<CubicValue> {
        match self {
            Evaluator::Table { n, w, table } => {
                let idx = (s1 as i128 + s2 as i128 * w).rem_euclid(*n);
                Ok(table[idx as usize])
            }
            Evaluator::Direct(q) => cubic_symbol(&Eis::from_ints(s1, s2), q),
        }
    }
}

fn mod_inverse(a: i128, m: i128) -> Option<i128> {
    let e = a.extended_gcd(&m);
    (e.gcd == 1).then(|| e.x.rem_euclid(m))
}

const ROOTS: [(f64, f64); 3] = [
    (1.0, 0.0),
    (-0.5, 0.866_025_403_784_438_6),
    (-0.5, -0.866_025_403_784_438_6),
];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PvReport {
    pub q_norm: u64,
    pub k: f64,
    pub max_ratio: f64,
    /// Centre and residue class mod 3 attaining the maximum.
    pub worst_center: (f64, f64),
    pub worst_class: (u8, u8),
}

/// The envelope `10·(log N)²` used for `max |T| / √N`.
pub fn pv_envelope(q_norm: u64) -> f64 {
    let l = (q_norm as f64).ln();
    10.0 * l * l
}

/// Scales `N^{1/4}`, `N^{3/8}`, `N^{1/2}`.
pub fn pv_scales(q_norm: u64) -> [f64; 3] {
    let n = q_norm as f64;
    [n.powf(0.25), n.powf(0.375), n.sqrt()]
}

/// A small fixed set of window centres for modulus norm `n` and scale `k`.
pub fn default_centers(q_norm: u64, k: f64) -> Vec<(f64, f64)> {
    let r = (q_norm as f64).sqrt();
    vec![
        (0.0, 0.0),
        (0.5 * k + 0.5, -k / 3.0),
        (r, 0.25 * r),
        (-0.7 * r, 0.4 * r),
    ]
}

/// `max_{c, t} |Σ_{s ≡ t (3)} G_K(s − c)·[s/q]| / √N(q)` over the given
/// centres and all nine classes `t mod 3`.
pub fn pv_scan(q: &Eis, k: f64, centers: &[(f64, f64)]) -> Result<PvReport> {
    require_primary(q)?;
    if factor(q)?.is_unit_times_cube() {
        return Err(Error::PerfectCube(q.to_string()));
    }
    let eval = Evaluator::new(q)?;
    let n = q.norm() as u64;
    let mut best = (0.0f64, (0.0, 0.0), (0u8, 0u8));
    for &(x0, y0) in centers {
        let mut acc = [[(0.0f64, 0.0f64); 3]; 3];
        let (xlo, xhi) = ((x0 - k).floor() as i64, (x0 + k).ceil() as i64);
        let (ylo, yhi) = ((y0 - k).floor() as i64, (y0 + k).ceil() as i64);
        for s1 in xlo..=xhi {
            let dx = (s1 as f64 - x0) / k;
            for s2 in ylo..=yhi {
                let dy = (s2 as f64 - y0) / k;
                let g = bump(dx * dx + dy * dy);
                if g == 0.0 {
                    continue;
                }
                if let CubicValue::Root(e) = eval.eval(s1, s2)? {
                    let (c, s) = ROOTS[e as usize];
                    let cell = &mut acc[s1.rem_euclid(3) as usize][s2.rem_euclid(3) as usize];
                    cell.0 += g * c;
                    cell.1 += g * s;
                }
            }
        }
        for (t1, row) in acc.iter().enumerate() {
            for (t2, &(re, im)) in row.iter().enumerate() {
                let m = re.hypot(im);
                if m > best.0 {
                    best = (m, (x0, y0), (t1 as u8, t2 as u8));
                }
            }
        }
    }
    Ok(PvReport {
        q_norm: n,
        k,
        max_ratio: best.0 / (n as f64).sqrt(),
        worst_center: best.1,
        worst_class: best.2,
    })
}

/// `count` distinct primary primitive `q` with `2 ≤ N(q) ≤ norm_max`, none a
/// unit times a cube, drawn from a seeded stream.
pub fn sample_pv_moduli(seed: u64, count: usize, norm_max: u64) -> Result<Vec<Eis>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bound = ((4.0 * norm_max as f64 / 3.0).sqrt()) as i64 + 1;
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let a = Eis::from_ints(rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound));
        let n = a.norm();
        if n < 2 || n as u64 > norm_max || !a.is_coprime_to_three() {
            continue;
        }
        let q = primary_associate(&a)?.1;
        if !is_primitive(&q) || factor(&q)?.is_unit_times_cube() {
            continue;
        }
        if seen.insert((q.a1, q.a2)) {
            out.push(q);
        }
    }
    Ok(out)
}

/// Multiplicative character mod 3 with `χ_t(±ζ3^k) = ζ3^{t·k}`, zero on
/// multiples of `1 − ζ3`.
pub fn twist_mod3(beta: &Eis, t: u8) -> CubicValue {
    let k = match beta.mod3() {
        (1, 0) | (2, 0) => 0,
        (0, 1) | (0, 2) => 1,
        (2, 2) | (1, 1) => 2,
        _ => return CubicValue::Zero,
    };
    CubicValue::root(k * t as i64)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GaussSum {
    pub re: f64,
    pub im: f64,
    pub abs: f64,
    /// `N(3q) = 9·N(q)`.
    pub modulus_norm: u64,
    /// Whether `ψ_{3q}^{(h1,h2)}` is primitive mod `3q`.
    pub primitive_additive: bool,
}

/// Additive character `β ↦ e_{N(Q)}(h1 (βQ̄)₁ + h2 (βQ̄)₂)` as an exact
/// phase numerator mod `N(Q)`.
fn additive_phase(beta: &Eis, qbar: &Eis, nq: i128, h1: i64, h2: i64) -> i128 {
    let b = beta * qbar;
    (h1 as i128 * b.a1 + h2 as i128 * b.a2).rem_euclid(nq)
}

/// `Σ_{β mod 3q} [β/q]·ψ_{3q}^{(h1,h2)}(−β)·χ_t(β)` by enumerating all
/// `9·N(q)` residues; refuses moduli with `9·N(q) > cap`.
pub fn gauss_sum(q: &Eis, h1: i64, h2: i64, t: u8, cap: u64) -> Result<GaussSum> {
    require_primary(q)?;
    let big_q = q.scale(&3);
    let nq = big_q.norm();
    if nq as u64 > cap {
        return Err(Error::TooLarge(format!("N(3q) = {nq} exceeds the cap {cap}")));
    }
    let qbar = big_q.conj();
    // Residues x1 + x2·ζ3 with 0 ≤ x2 < n2 and 0 ≤ x1 < n1 form a system of
    // representatives (Hermite normal form of the lattice 3q·Z[ζ3]).
    let n2 = big_q.a2.gcd(&(big_q.a1 - big_q.a2));
    let n1 = nq / n2;
    let eval = Evaluator::Direct(q.clone());
    let (mut re, mut im) = (0.0, 0.0);
    for x1 in 0..n1 as i64 {
        for x2 in 0..n2 as i64 {
            let beta = Eis::from_ints(x1, x2);
            let v = eval.eval(x1, x2)? * twist_mod3(&beta, t);
            let CubicValue::Root(e) = v else { continue };
            let phase = additive_phase(&-&beta, &qbar, nq, h1, h2) as f64 / nq as f64;
            let angle = 2.0 * PI * (phase + e as f64 / 3.0);
            re += angle.cos();
            im += angle.sin();
        }
    }
    Ok(GaussSum {
        re,
        im,
        abs: re.hypot(im),
        modulus_norm: nq as u64,
        primitive_additive: additive_is_primitive(&big_q, h1, h2)?,
    })
}

/// `ψ^{(h1,h2)}` mod `Q` is primitive iff it is nontrivial on `(Q/P)` for
/// every prime `P | Q`.
fn additive_is_primitive(big_q: &Eis, h1: i64, h2: i64) -> Result<bool> {
    let nq = big_q.norm();
    let qbar = big_q.conj();
    let f = factor(big_q)?;
    let mut primes: Vec<Eis> = f.primes.iter().map(|(p, _)| p.clone()).collect();
    if f.lambda_exp > 0 {
        primes.push(Eis::lambda());
    }
    for p in primes {
        let d = big_q.exact_div(&p).expect("p divides Q");
        let dw = &d * &Eis::zeta3();
        if additive_phase(&d, &qbar, nq, h1, h2) == 0 && additive_phase(&dw, &qbar, nq, h1, h2) == 0 {
            return Ok(false);
        }
    }
    Ok(true)
}
