//! Numerical check of truncated Poisson summation over a residue class of
//! Z[ζ3], with a fixed smooth bump window.
//!
//! Coordinates are the coefficients `(a1, a2)` of `a1 + a2·ζ3`, treated as
//! Euclidean coordinates in the plane; the window is radial in them.

use std::collections::HashMap;
use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::Eis;

/// `exp(−1/(1 − ρ²))` on the open unit disc, `0` outside.
pub fn bump(rho2: f64) -> f64 {
    if rho2 >= 1.0 {
        0.0
    } else {
        (-1.0 / (1.0 - rho2)).exp()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PoissonWindow {
    pub k: f64,
    pub x0: f64,
    pub y0: f64,
    pub q: Eis,
    pub beta: Eis,
}

impl PoissonWindow {
    /// Window of scale `k` with a fixed off-lattice centre and residue
    /// `β = 2 + ζ3`.
    pub fn standard(q: Eis, k: f64) -> Self {
        PoissonWindow {
            k,
            x0: 0.37,
            y0: -0.21,
            q,
            beta: Eis::from_ints(2, 1),
        }
    }

    pub fn value(&self, a1: f64, a2: f64) -> f64 {
        let (dx, dy) = ((a1 - self.x0) / self.k, (a2 - self.y0) / self.k);
        bump(dx * dx + dy * dy)
    }
}

/// `J0(z)`: the trapezoidal rule on `(1/2π)∫ cos(z cos θ) dθ` for `|z| ≤ 40`
/// (its error is of the size of `J_m(z)`, negligible once `m ≥ 1.5 z + 40`),
/// and the Hankel asymptotic expansion beyond, truncated at its smallest term.
pub fn bessel_j0(z: f64) -> f64 {
    let z = z.abs();
    if z > 40.0 {
        return bessel_j0_asymptotic(z);
    }
    let m = (1.5 * z) as usize + 40;
    let m = m + (m % 2);
    let s: f64 = (0..m).map(|k| (z * (2.0 * PI * k as f64 / m as f64).cos()).cos()).sum();
    s / m as f64
}

fn bessel_j0_asymptotic(z: f64) -> f64 {
    // |a_k| = ((1·3·…·(2k−1))²)/(k!·8^k); P = 1 − |a_2|/z² + …,
    // Q = −|a_1|/z + |a_3|/z³ − ….
    let (mut p, mut q) = (1.0, 0.0);
    let mut term = 1.0;
    for k in 1..60 {
        let next = term * ((2 * k - 1) as f64).powi(2) / (8.0 * k as f64 * z);
        if next.abs() > term.abs() {
            break;
        }
        term = next;
        if k % 2 == 0 {
            p += if (k / 2) % 2 == 0 { term } else { -term };
        } else {
            q += if (k / 2) % 2 == 0 { -term } else { term };
        }
        if term < 1e-17 {
            break;
        }
    }
    let chi = z - PI / 4.0;
    (2.0 / (PI * z)).sqrt() * (p * chi.cos() - q * chi.sin())
}

const GL16: [(f64, f64); 8] = [
    (0.095_012_509_837_637_44, 0.189_450_610_455_068_5),
    (0.281_603_550_779_258_9, 0.182_603_415_044_923_6),
    (0.458_016_777_657_227_4, 0.169_156_519_395_002_5),
    (0.617_876_244_402_643_7, 0.149_595_988_816_576_7),
    (0.755_404_408_355_003, 0.124_628_971_255_533_9),
    (0.865_631_202_387_831_7, 0.095_158_511_682_492_78),
    (0.944_575_023_073_232_6, 0.062_253_523_938_647_89),
    (0.989_400_934_991_649_9, 0.027_152_459_411_754_09),
];

/// Composite 16-point Gauss–Legendre on `[0, 1]` with `panels` panels.
fn gauss_legendre(panels: usize, f: impl Fn(f64) -> f64) -> f64 {
    let h = 1.0 / panels as f64;
    let mut acc = 0.0;
    for p in 0..panels {
        let mid = (p as f64 + 0.5) * h;
        for &(x, w) in &GL16 {
            acc += w * (f(mid - 0.5 * h * x) + f(mid + 0.5 * h * x));
        }
    }
    acc * 0.5 * h
}

/// Fourier transform `∫ G(u)·e(ξ·u) du` of the unit bump at `|ξ| = xi`,
/// refined until two successive panel counts agree to `1e-8` relative.
/// An absolute floor of `1e-12` (against `Ĝ(0) ≈ 0.47`) stops refinement in
/// the far tail, where the value is pure cancellation.
pub fn bump_transform(xi: f64) -> Result<f64> {
    let f = |rho: f64| 2.0 * PI * bump(rho * rho) * bessel_j0(2.0 * PI * xi * rho) * rho;
    let mut panels = 8 + (xi.abs() as usize) / 2;
    let mut prev = gauss_legendre(panels, f);
    for _ in 0..8 {
        panels *= 2;
        let cur = gauss_legendre(panels, f);
        if (cur - prev).abs() <= 1e-8 * cur.abs() + 1e-12 {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::Quadrature(format!("bump transform at |ξ| = {xi}")))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PoissonResult {
    pub q_norm: u64,
    pub k: f64,
    pub h: i64,
    pub lhs: f64,
    pub main: f64,
    pub dual: f64,
    pub abs_err: f64,
    pub rel_err: f64,
}

/// Truncation from the lemma, `K^{ε/2}·N(q)^{1/2}/K` with `ε = 0.1`.
pub fn default_h(q_norm: u64, k: f64) -> i64 {
    (k.powf(0.05) * (q_norm as f64).sqrt() / k).floor() as i64
}

/// Every `q ≡ 1 (mod 3)` with `N(q) ≤ norm_max`, one per associate class of
/// elements coprime to 3, ordered by `(N(q), a1, a2)`.
pub fn primary_moduli(norm_max: u64) -> Vec<Eis> {
    let b = (4.0 * norm_max as f64 / 3.0).sqrt() as i64 + 1;
    let mut out: Vec<Eis> = Vec::new();
    for a1 in -b..=b {
        for a2 in -b..=b {
            let q = Eis::from_ints(a1, a2);
            if q.mod3() == (1, 0) && q.norm() as u64 <= norm_max {
                out.push(q);
            }
        }
    }
    out.sort_by_key(|q| (q.norm(), q.a1, q.a2));
    out
}

/// Compare `Σ_{α ≡ β (q)} G_K(α)` with the main term `(1/N)·Σ_α G_K(α)`
/// plus the dual terms `|h|∞ ≤ H`, `h ≠ 0`.
pub fn poisson_check(win: &PoissonWindow, h_override: Option<i64>) -> Result<PoissonResult> {
    if win.q.is_zero() {
        return Err(Error::Zero);
    }
    let n = win.q.norm();
    let nf = n as f64;
    let h = h_override.unwrap_or_else(|| default_h(n as u64, win.k));

    let (xlo, xhi) = ((win.x0 - win.k).floor() as i64, (win.x0 + win.k).ceil() as i64);
    let (ylo, yhi) = ((win.y0 - win.k).floor() as i64, (win.y0 + win.k).ceil() as i64);
    let mut lhs = 0.0;
    let mut all = 0.0;
    for a1 in xlo..=xhi {
        for a2 in ylo..=yhi {
            let g = win.value(a1 as f64, a2 as f64);
            if g == 0.0 {
                continue;
            }
            all += g;
            let d = &Eis::from_ints(a1, a2) - &win.beta;
            if win.q.divides(&d) {
                lhs += g;
            }
        }
    }
    let main = all / nf;

    // h·(y·q̄) = y·v(h)·N with v(h) = (h1 b1 + h2 b2, −h1 b2 + h2 (b1 − b2))/N.
    let qb = win.q.conj();
    let (b1, b2) = (qb.a1 as f64, qb.a2 as f64);
    let bq = &win.beta * &qb;
    let (bq1, bq2) = (bq.a1.rem_euclid(n), bq.a2.rem_euclid(n));
    let (ib1, ib2) = (qb.a1, qb.a2);
    let mut coeffs: HashMap<i128, f64> = HashMap::new();
    let mut dual_re = 0.0;
    let mut dual_im = 0.0;
    for h1 in -h..=h {
        for h2 in -h..=h {
            if h1 == 0 && h2 == 0 {
                continue;
            }
            let (h1f, h2f) = (h1 as f64, h2 as f64);
            let v1 = (h1f * b1 + h2f * b2) / nf;
            let v2 = (-h1f * b2 + h2f * (b1 - b2)) / nf;
            // N²·|v(h)|², exact, so equal radii share one quadrature.
            let (w1, w2) = (
                h1 as i128 * ib1 + h2 as i128 * ib2,
                -(h1 as i128) * ib2 + h2 as i128 * (ib1 - ib2),
            );
            let key = w1 * w1 + w2 * w2;
            let c = match coeffs.get(&key) {
                Some(&c) => c,
                None => {
                    let xi = win.k * (key as f64).sqrt() / nf;
                    let c = win.k * win.k * bump_transform(xi)?;
                    coeffs.insert(key, c);
                    c
                }
            };
            // Phase of the window centre and of ψ_q^h(−β), the latter exact mod N.
            let centre = win.x0 * v1 + win.y0 * v2;
            let beta_phase = ((h1 as i128 * bq1 + h2 as i128 * bq2).rem_euclid(n)) as f64 / nf;
            let phase = 2.0 * PI * (centre - beta_phase);
            dual_re += c * phase.cos();
            dual_im += c * phase.sin();
        }
    }
    let dual = dual_re / nf;
    debug_assert!(dual_im.abs() / nf <= 1e-6 * (1.0 + main.abs()));
    let abs_err = (lhs - main - dual).abs();
    Ok(PoissonResult {
        q_norm: n as u64,
        k: win.k,
        h,
        lhs,
        main,
        dual,
        abs_err,
        rel_err: abs_err / main,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bessel_reference_values() {
        assert!((bessel_j0(0.0) - 1.0).abs() < 1e-15);
        assert!((bessel_j0(1.0) - 0.765_197_686_557_966_6).abs() < 1e-14);
        assert!((bessel_j0(2.404_825_557_695_773)).abs() < 1e-14);
        assert!((bessel_j0(10.0) + 0.245_935_764_451_348_3).abs() < 1e-14);
        assert!((bessel_j0(100.0) - 0.019_985_850_304_223_12).abs() < 1e-13);
        assert!((bessel_j0(40.0) - 0.007_366_890_584_236_951).abs() < 1e-14);
        assert!((bessel_j0(500.0) + 0.034_100_556_880_731_73).abs() < 1e-15);
        // The two branches agree across the switch.
        for z in [40.5, 41.0, 45.0, 60.0] {
            let m = (1.5 * z) as usize + 40;
            let t: f64 = (0..m)
                .map(|k| (z * (2.0 * PI * k as f64 / m as f64).cos()).cos())
                .sum::<f64>()
                / m as f64;
            assert!((bessel_j0(z) - t).abs() < 1e-14, "{z}");
        }
    }

    #[test]
    fn bump_transform_values() {
        // ∫_disc exp(−1/(1−ρ²)) = π·∫_0^1 exp(−1/(1−t)) dt.
        let direct = PI * gauss_legendre(200, bump);
        assert!((bump_transform(0.0).unwrap() - direct).abs() < 1e-12);
        assert!((bump_transform(0.0).unwrap() - 0.466_512).abs() < 1e-5);
        assert!(bump_transform(7.0).unwrap().abs() < 1e-4);
        assert!(bump_transform(40.0).unwrap().abs() < 1e-8);
    }

    #[test]
    fn unit_modulus_has_no_dual_error() {
        let win = PoissonWindow {
            k: 20.0,
            x0: 0.3,
            y0: -0.7,
            q: Eis::one(),
            beta: Eis::zero(),
        };
        let r = poisson_check(&win, Some(0)).unwrap();
        assert!((r.lhs - r.main).abs() < 1e-12 * r.main);
        let r = poisson_check(&win, Some(2)).unwrap();
        assert!(r.dual.abs() < 1e-6 * r.main, "{r:?}");
    }

    #[test]
    fn far_window_has_empty_sum() {
        let win = PoissonWindow {
            k: 10.0,
            x0: 0.5,
            y0: 0.5,
            q: Eis::from_ints(4, 9),
            beta: Eis::from_ints(1, 0),
        };
        let r = poisson_check(&win, Some(10)).unwrap();
        assert!(r.lhs >= 0.0);
        assert!(r.abs_err < 1e-4 * r.main.max(1.0), "{r:?}");
    }

    #[test]
    fn primary_moduli_cover_classes() {
        let qs = primary_moduli(50);
        assert_eq!(qs[0], Eis::one());
        for n in [7u64, 13, 19, 31, 37, 43] {
            assert_eq!(qs.iter().filter(|q| q.norm() as u64 == n).count(), 2, "{n}");
        }
        assert_eq!(qs.iter().filter(|q| q.norm() == 4).count(), 1);
        assert!(qs.iter().all(|q| q.is_primary()));
    }

    #[test]
    fn small_modulus_accuracy() {
        let win = PoissonWindow {
            k: 50.0,
            x0: 3.3,
            y0: -1.9,
            q: Eis::from_ints(2, 3),
            beta: Eis::from_ints(1, 1),
        };
        let h = (40.0 * 7f64.sqrt() / 50.0).ceil() as i64;
        let r = poisson_check(&win, Some(h)).unwrap();
        assert!(r.rel_err <= 1e-4, "{r:?}");
    }
}
