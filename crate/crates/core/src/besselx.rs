//! Integer-order Bessel functions `J_n(x)` and generalized Bessel functions
//! `J_n(x, y) = sum_m J_{n-2m}(x) J_m(y)`.
//!
//! Two independent routes are provided for `J_n(x, y)`: the truncated double
//! sum built on a Miller downward recurrence, and a direct quadrature of the
//! Fourier-coefficient integral
//! `(1/pi) int_0^pi cos(n t - x sin t - y sin 2t) dt`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Arguments of a generalized Bessel evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenBesselArgs {
    pub n: i64,
    pub x: f64,
    pub y: f64,
}

impl GenBesselArgs {
    pub fn new(n: i64, x: f64, y: f64) -> Self {
        Self { n, x, y }
    }
}

const RESCALE_ABOVE: f64 = 1e250;
const RESCALE_BY: f64 = 1e-250;

/// `J_k(x)` for `k = 0..=nmax` by Miller's downward recurrence, normalized
/// with `J_0 + 2 sum_k J_2k = 1`.
pub fn bessel_j_table(nmax: usize, x: f64) -> Vec<f64> {
    let mut out = vec![0.0; nmax + 1];
    if x == 0.0 {
        out[0] = 1.0;
        return out;
    }
    let ax = x.abs();
    if ax < 1e-8 {
        // Two-term power series; the recurrence would overflow here.
        let h = 0.5 * x;
        let mut lead = 1.0;
        for (k, o) in out.iter_mut().enumerate() {
            if k > 0 {
                lead *= h / k as f64;
            }
            *o = lead * (1.0 - h * h / (k as f64 + 1.0));
        }
        return out;
    }
    let top = (nmax as f64).max(ax);
    // Start far enough above max(n, x) that the seed error has decayed to
    // below double precision by the time it reaches the wanted orders.
    let mut start = (top + 20.0 + (40.0 * top).sqrt()) as usize;
    start += start % 2;

    let mut vals = vec![0.0; start + 2];
    vals[start] = 1e-30;
    let two_over_x = 2.0 / ax;
    for k in (1..=start).rev() {
        let next = k as f64 * two_over_x * vals[k] - vals[k + 1];
        vals[k - 1] = next;
        if next.abs() > RESCALE_ABOVE {
            for v in &mut vals[k - 1..=start] {
                *v *= RESCALE_BY;
            }
        }
    }
    let mut norm = vals[0];
    for k in (2..=start).step_by(2) {
        norm += 2.0 * vals[k];
    }
    let sign_flip = x < 0.0;
    for (k, o) in out.iter_mut().enumerate() {
        let v = if k <= start { vals[k] / norm } else { 0.0 };
        *o = if sign_flip && k % 2 == 1 { -v } else { v };
    }
    out
}

/// `J_n(x)` for any integer `n`; `J_{-n}(x) = (-1)^n J_n(x)`.
pub fn bessel_j(n: i64, x: f64) -> f64 {
    let k = n.unsigned_abs() as usize;
    let v = bessel_j_table(k, x)[k];
    if n < 0 && k % 2 == 1 {
        -v
    } else {
        v
    }
}

/// Signed-order lookup into a table from [`bessel_j_table`].
#[inline]
fn table_at(table: &[f64], n: i64) -> f64 {
    let k = n.unsigned_abs() as usize;
    let v = table.get(k).copied().unwrap_or(0.0);
    if n < 0 && k % 2 == 1 {
        -v
    } else {
        v
    }
}

/// Half-width of the `m` summation range for `J_n(x, y)`.
///
/// Beyond `|m| > y + 3 y^(1/3) + 3` the factor `J_m(y)` is negligible, and
/// beyond `|m| > (|n| + x + 3 x^(1/3) + 3) / 2` the factor `J_{n-2m}(x)` is.
/// The larger of the two plus five terms is used.
pub fn truncation(n: i64, x: f64, y: f64) -> i64 {
    let (ax, ay) = (x.abs(), y.abs());
    let by = ay + 3.0 * ay.cbrt() + 3.0;
    let bx = 0.5 * (n.unsigned_abs() as f64 + ax + 3.0 * ax.cbrt() + 3.0);
    by.max(bx).ceil() as i64 + 5
}

/// Truncated double-sum evaluation of `J_n(x, y)`.
pub fn gen_bessel_sum(args: GenBesselArgs) -> f64 {
    let GenBesselArgs { n, x, y } = args;
    let m_max = truncation(n, x, y);
    let jx = bessel_j_table((n.unsigned_abs() as i64 + 2 * m_max) as usize, x);
    let jy = bessel_j_table(m_max as usize, y);
    sum_terms(n, m_max, &jx, &jy)
}

#[inline]
fn sum_terms(n: i64, m_max: i64, jx: &[f64], jy: &[f64]) -> f64 {
    (-m_max..=m_max)
        .map(|m| table_at(jx, n - 2 * m) * table_at(jy, m))
        .sum()
}

/// `J_n(x, y)` for all `n` in `n_min..=n_max`, sharing one pair of
/// Bessel tables across the row.
pub fn gen_bessel_row(x: f64, y: f64, n_min: i64, n_max: i64) -> Vec<f64> {
    if n_max < n_min {
        return Vec::new();
    }
    let widest = n_min.unsigned_abs().max(n_max.unsigned_abs()) as i64;
    let m_top = truncation(widest, x, y);
    let jx = bessel_j_table((widest + 2 * m_top) as usize, x);
    let jy = bessel_j_table(m_top as usize, y);
    (n_min..=n_max)
        .map(|n| sum_terms(n, truncation(n, x, y), &jx, &jy))
        .collect()
}

/// Absolute tolerance of [`gen_bessel_integral`].
pub const INTEGRAL_TOL: f64 = 1e-12;
const MAX_PANELS: usize = 1 << 22;

/// `(1/pi) int_0^pi cos(n t - x sin t - y sin 2t) dt`.
///
/// The integrand is smooth and, extended to `[0, 2pi]`, periodic and even,
/// so the trapezoid rule converges geometrically; panels are doubled until
/// two successive estimates agree to [`INTEGRAL_TOL`].
pub fn gen_bessel_integral(args: GenBesselArgs) -> Result<f64> {
    let GenBesselArgs { n, x, y } = args;
    let nf = n as f64;
    let f = |t: f64| (nf * t - x * t.sin() - y * (2.0 * t).sin()).cos();

    // The integrand oscillates at most ~|n| + |x| + 2|y| times per period.
    let min_panels = (nf.abs() + x.abs() + 2.0 * y.abs()) as usize + 16;

    let mut panels = 8usize;
    let mut h = PI / panels as f64;
    let mut sum = 0.5 * (f(0.0) + f(PI)) + (1..panels).map(|i| f(i as f64 * h)).sum::<f64>();
    let mut estimate = sum * h / PI;
    loop {
        let mids: f64 = (0..panels).map(|i| f((i as f64 + 0.5) * h)).sum();
        sum += mids;
        panels *= 2;
        h *= 0.5;
        let next = sum * h / PI;
        let diff = (next - estimate).abs();
        estimate = next;
        if diff < INTEGRAL_TOL && panels >= min_panels {
            return Ok(estimate);
        }
        if panels >= MAX_PANELS {
            return Err(Error::Convergence {
                what: "generalized Bessel quadrature",
                achieved: diff,
                requested: INTEGRAL_TOL,
            });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_values() {
        assert_eq!(bessel_j(0, 0.0), 1.0);
        assert_eq!(bessel_j(3, 0.0), 0.0);
        assert_eq!(gen_bessel_sum(GenBesselArgs::new(0, 0.0, 0.0)), 1.0);
        assert_eq!(gen_bessel_sum(GenBesselArgs::new(1, 0.0, 5.0)), 0.0);
        assert!(
            (gen_bessel_integral(GenBesselArgs::new(0, 0.0, 0.0)).unwrap() - 1.0).abs() < 1e-15
        );
    }

    #[test]
    fn known_values() {
        // Abramowitz & Stegun table 9.1.
        assert!((bessel_j(0, 1.0) - 0.765_197_686_557_966_6).abs() < 1e-15);
        assert!((bessel_j(1, 1.0) - 0.440_050_585_744_933_5).abs() < 1e-15);
        assert!((bessel_j(2, 10.0) - 0.254_630_313_685_120_8).abs() < 1e-14);
        assert!((bessel_j(0, 2.404_825_557_695_773).abs()) < 1e-15);
    }

    #[test]
    fn order_and_argument_symmetry() {
        for n in 0..8 {
            let s = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert_eq!(bessel_j(-n, 3.7), s * bessel_j(n, 3.7));
            assert_eq!(bessel_j(n, -3.7), s * bessel_j(n, 3.7));
        }
    }

    #[test]
    fn large_argument_rescaling() {
        // Large orders and arguments go through the rescaling branch.
        let t = bessel_j_table(400, 300.0);
        assert!(t.iter().all(|v| v.is_finite()));
        assert!((bessel_j(0, 300.0) - (-0.033_298_554_876_305_66)).abs() < 1e-13);
    }

    #[test]
    fn row_matches_single() {
        let row = gen_bessel_row(7.3, 2.1, -12, 12);
        for (i, v) in row.iter().enumerate() {
            let n = i as i64 - 12;
            let s = gen_bessel_sum(GenBesselArgs::new(n, 7.3, 2.1));
            assert!((v - s).abs() < 1e-14, "n={n}");
        }
        assert!(gen_bessel_row(1.0, 1.0, 3, 2).is_empty());
    }

    #[test]
    fn integral_reports_non_convergence() {
        // Enormous argument cannot be resolved below the panel cap.
        let r = gen_bessel_integral(GenBesselArgs::new(0, 1e9, 0.0));
        assert!(matches!(r, Err(Error::Convergence { .. })));
    }
}
