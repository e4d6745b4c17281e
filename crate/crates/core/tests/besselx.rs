use floquet_lzs::besselx::{
    bessel_j, gen_bessel_integral, gen_bessel_row, gen_bessel_sum, GenBesselArgs,
};
use floquet_lzs::floquet::SIDEBAND_MARGIN;
use proptest::prelude::*;

#[test]
fn sum_matches_integral_on_grid() {
    let mut worst: f64 = 0.0;
    for i in 0..20 {
        let x = 30.0 * i as f64 / 19.0;
        for j in 0..20 {
            let y = 15.0 * j as f64 / 19.0;
            for n in -5..=5 {
                let a = GenBesselArgs::new(n, x, y);
                let d = (gen_bessel_sum(a) - gen_bessel_integral(a).unwrap()).abs();
                worst = worst.max(d);
            }
        }
    }
    assert!(worst <= 1e-10, "worst dual-method gap {worst:e}");
}

#[test]
fn squares_sum_to_one() {
    for i in 0..=12 {
        let x = 5.0 * i as f64;
        for j in 0..=10 {
            let y = 3.0 * j as f64;
            let n = (x.abs() + 2.0 * y.abs()).ceil() as i64 + SIDEBAND_MARGIN;
            let total: f64 = gen_bessel_row(x, y, -n, n).iter().map(|v| v * v).sum();
            assert!((total - 1.0).abs() < 1e-10, "x={x} y={y}: {total}");
        }
    }
}

#[test]
fn odd_orders_vanish_without_first_argument() {
    for y in [0.3, 1.0, 5.0, 12.5, 30.0] {
        for n in [-7, -3, -1, 1, 3, 9] {
            assert!(
                gen_bessel_sum(GenBesselArgs::new(n, 0.0, y)).abs() < 1e-14,
                "n={n} y={y}"
            );
        }
        for m in -4i64..=4 {
            let lhs = gen_bessel_sum(GenBesselArgs::new(2 * m, 0.0, y));
            assert!((lhs - bessel_j(m, y)).abs() < 1e-12);
        }
    }
}

#[test]
fn reduces_to_ordinary_bessel() {
    for n in -10..=10 {
        for x in [0.1, 1.0, 3.7, 10.0, 25.0] {
            let g = gen_bessel_sum(GenBesselArgs::new(n, x, 0.0));
            assert!((g - bessel_j(n, x)).abs() < 1e-12, "n={n} x={x}");
            let i = gen_bessel_integral(GenBesselArgs::new(n, x, 0.0)).unwrap();
            assert!((i - bessel_j(n, x)).abs() < 1e-12, "n={n} x={x}");
        }
    }
}

#[test]
fn ordinary_bessel_matches_quadrature() {
    // (1/pi) int_0^pi cos(n t - x sin t) dt with a 4096-panel trapezoid,
    // which is spectrally accurate for this periodic integrand.
    let quad = |n: i64, x: f64| {
        let m = 4096;
        let h = std::f64::consts::PI / m as f64;
        let f = |t: f64| (n as f64 * t - x * t.sin()).cos();
        let inner: f64 = (1..m).map(|k| f(k as f64 * h)).sum();
        (0.5 * (f(0.0) + f(std::f64::consts::PI)) + inner) * h / std::f64::consts::PI
    };
    for n in 0..=12 {
        for x in [0.5, 1.0, 7.3, 20.0, 48.0] {
            assert!((bessel_j(n, x) - quad(n, x)).abs() < 1e-12, "n={n} x={x}");
        }
    }
}

#[test]
fn small_rf_scaling_follows_order() {
    // x = a F, y = b F^2 at fixed static field: |J_n| ~ F^|n| as F -> 0.
    let (a, b) = (2.0, 0.6);
    for n in [-3i64, -2, -1, 1, 2, 3] {
        let f_lo: f64 = 1e-3;
        let f_hi: f64 = 1e-1;
        let j = |f: f64| gen_bessel_sum(GenBesselArgs::new(n, a * f, b * f * f)).abs();
        let slope = (j(f_hi) / j(f_lo)).ln() / (f_hi / f_lo).ln();
        assert!(
            (slope - n.abs() as f64).abs() < 0.05,
            "n={n}: slope {slope}"
        );
    }
}

proptest! {
    #[test]
    fn negation_symmetry(n in -12i64..=12, x in -40.0f64..40.0, y in -20.0f64..20.0) {
        // theta -> -theta gives J_{-n}(-x,-y) = J_n(x,y); theta -> theta + pi
        // gives J_n(-x,y) = (-1)^n J_n(x,y).
        let a = gen_bessel_sum(GenBesselArgs::new(n, x, y));
        prop_assert!((a - gen_bessel_sum(GenBesselArgs::new(-n, -x, -y))).abs() < 1e-12);
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert!((a - sign * gen_bessel_sum(GenBesselArgs::new(n, -x, y))).abs() < 1e-12);
    }

    #[test]
    fn integral_negation_symmetry(n in -6i64..=6, x in -15.0f64..15.0, y in -8.0f64..8.0) {
        let a = gen_bessel_integral(GenBesselArgs::new(n, x, y)).unwrap();
        let b = gen_bessel_integral(GenBesselArgs::new(-n, -x, -y)).unwrap();
        prop_assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn bounded_by_one(n in -30i64..=30, x in 0.0f64..60.0, y in 0.0f64..30.0) {
        prop_assert!(gen_bessel_sum(GenBesselArgs::new(n, x, y)).abs() <= 1.0 + 1e-12);
    }

    #[test]
    fn ordinary_reflection(n in 0i64..40, x in -50.0f64..50.0) {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert!((bessel_j(-n, x) - sign * bessel_j(n, x)).abs() < 1e-15);
    }

    #[test]
    fn ordinary_recurrence(n in 1i64..30, x in 0.5f64..50.0) {
        let lhs = bessel_j(n - 1, x) + bessel_j(n + 1, x);
        let rhs = 2.0 * n as f64 / x * bessel_j(n, x);
        prop_assert!((lhs - rhs).abs() < 1e-12 * (1.0 + 2.0 * n as f64 / x));
    }
}
