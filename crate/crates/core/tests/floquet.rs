use floquet_lzs::floquet::{
    classical_boundaries, coupling_strength, default_linewidth, resonance_detuning, resonance_map,
    sideband_energy, sideband_range, spectrum,
};
use floquet_lzs::grid::{one_worker, Axis, FieldGrid};
use floquet_lzs::units::mhz;
use floquet_lzs::{CoupledSystem, FieldDrive, Preset};
use proptest::prelude::*;
use std::num::NonZeroUsize;

#[test]
fn spectra_normalized_over_figure_grid() {
    let grid = FieldGrid::new(
        Axis::new(0.0, 0.8, 41).unwrap(),
        Axis::new(0.0, 0.8, 41).unwrap(),
    );
    for p in [Preset::Fig2Linear, Preset::LeftResonance] {
        for omega in [mhz(4.0), mhz(8.0)] {
            for idx in 0..grid.len() {
                let (fs, frf) = grid.point(idx);
                let d = FieldDrive::new(fs, frf, omega).unwrap();
                let total = spectrum(&p.model(), &d).total_population();
                assert!((total - 1.0).abs() < 1e-9, "{p} fs={fs} frf={frf}: {total}");
            }
        }
    }
}

#[test]
fn central_sideband_carries_ac_stark_shift() {
    let m = Preset::LeftResonance.model();
    let alpha = mhz(347.04);
    for frf in [0.0, 0.1, 0.35, 0.7] {
        let d = FieldDrive::new(0.25, frf, mhz(8.0)).unwrap();
        let static_only = FieldDrive::new(0.25, 0.0, mhz(8.0)).unwrap();
        let shift = sideband_energy(&m, &d, 0) - sideband_energy(&m, &static_only, 0);
        assert!(
            (shift + 0.25 * alpha * frf * frf).abs() < 1e-12,
            "frf={frf}"
        );
    }
}

proptest! {
    #[test]
    fn coupling_sum_rule(fs in 0.0f64..0.8, frf in 0.0f64..0.8, w in 1.0f64..10.0, quad in any::<bool>()) {
        let p = if quad { Preset::LeftResonance } else { Preset::Fig2Linear };
        let s = CoupledSystem::new(p.model(), mhz(0.1)).unwrap();
        let d = FieldDrive::new(fs, frf, mhz(w)).unwrap();
        let n = sideband_range(&s.stark, &d);
        let total: f64 = (-n..=n).map(|k| coupling_strength(&s, &d, k).powi(2)).sum();
        prop_assert!((total - s.omega0 * s.omega0).abs() < 1e-8 * s.omega0 * s.omega0);
    }

    #[test]
    fn odd_couplings_vanish_without_static_field(frf in 0.0f64..0.8, n in -7i64..=7) {
        let s = CoupledSystem::new(Preset::LeftResonance.model(), mhz(0.1)).unwrap();
        let d = FieldDrive::new(0.0, frf, mhz(8.0)).unwrap();
        if n % 2 != 0 {
            prop_assert_eq!(coupling_strength(&s, &d, n), 0.0);
        }
    }
}

#[test]
fn quadratic_maxima_lie_on_effective_field_arcs() {
    // Each peak along a map row has an effective field within one grid
    // step of a resonant one. Peaks below 1% of omega0^2 are off-resonant
    // Lorentzian tails shaped by a rising J_n^2 and are skipped.
    let s = CoupledSystem::new(Preset::LeftResonance.model(), mhz(0.1)).unwrap();
    let omega = mhz(8.0);
    let grid = FieldGrid::new(
        Axis::new(0.0, 0.8, 201).unwrap(),
        Axis::new(0.0, 0.8, 101).unwrap(),
    );
    let map = resonance_map(
        &s,
        omega,
        &grid,
        default_linewidth(),
        NonZeroUsize::new(4).unwrap(),
    )
    .unwrap();
    let step = grid.f_static.step();
    let alpha = mhz(347.04);
    let mut checked = 0;
    for j in 0..grid.f_rf.steps {
        let row = map.row(j);
        let frf = grid.f_rf.value(j);
        for i in 1..row.len() - 1 {
            if !(row[i] > row[i - 1] && row[i] >= row[i + 1] && row[i] > 1e-2 * s.omega0 * s.omega0)
            {
                continue;
            }
            let fs = grid.f_static.value(i);
            let fe = FieldDrive::new(fs, frf, omega).unwrap().effective_field();
            let best = (-20i64..=20)
                .filter_map(|n| {
                    let fe2 = 2.0 * (mhz(25.15) - n as f64 * omega) / alpha;
                    (fe2 >= 0.0).then(|| (fe2.sqrt() - fe).abs())
                })
                .fold(f64::INFINITY, f64::min);
            assert!(
                best <= step * (1.0 + 1e-9),
                "frf={frf} fs={fs} fe={fe}: off by {best}"
            );
            checked += 1;
        }
    }
    assert!(checked > 100, "only {checked} peaks");
}

#[test]
fn resonance_map_is_worker_independent() {
    let s = CoupledSystem::new(Preset::Fig2Linear.model(), mhz(0.1)).unwrap();
    let grid = FieldGrid::new(
        Axis::new(0.0, 0.8, 37).unwrap(),
        Axis::new(0.0, 0.8, 23).unwrap(),
    );
    let a = resonance_map(&s, mhz(4.0), &grid, default_linewidth(), one_worker()).unwrap();
    for w in [2, 3, 8] {
        let b = resonance_map(
            &s,
            mhz(4.0),
            &grid,
            default_linewidth(),
            NonZeroUsize::new(w).unwrap(),
        )
        .unwrap();
        assert_eq!(a.values, b.values);
    }
}

#[test]
fn detuning_zero_on_boundary_free_resonance() {
    let s = CoupledSystem::new(Preset::LeftResonance.model(), mhz(0.1)).unwrap();
    let omega = mhz(8.0);
    let alpha = mhz(347.04);
    for n in [-3i64, -2, -1, 0, 1] {
        let f_eff = (2.0 * (mhz(25.15) - n as f64 * omega) / alpha).sqrt();
        for theta in [0.1, 0.5, 1.0, 1.4] {
            let d = FieldDrive::on_arc(f_eff, theta, omega).unwrap();
            assert!(
                resonance_detuning(&s, &d, n).abs() < 1e-9,
                "n={n} theta={theta}"
            );
        }
    }
    assert_eq!(classical_boundaries(&s).unwrap().len(), 3);
}
