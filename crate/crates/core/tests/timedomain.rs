use floquet_lzs::floquet::{coupling_strength, resonance_detuning};
use floquet_lzs::lzs::{population_b, turning_point_clearance, LzsMode, StartSegment};
use floquet_lzs::timedomain::{default_step, evolve, stroboscopic, EvolveOptions, InitialState};
use floquet_lzs::units::mhz;
use floquet_lzs::{CoupledSystem, FieldDrive, Preset};

fn left() -> CoupledSystem {
    CoupledSystem::new(Preset::LeftResonance.model(), mhz(0.1)).unwrap()
}

#[test]
fn energy_offset_is_a_global_phase() {
    let s = left();
    let d = FieldDrive::new(0.2, 0.45, mhz(8.0)).unwrap();
    let base = EvolveOptions {
        sample_every: 97,
        ..Default::default()
    };
    let a = evolve(&s, &d, 3.0, default_step(&d), InitialState::State1, &base).unwrap();
    for c in [mhz(-25.0), mhz(3.3), mhz(25.0)] {
        let o = EvolveOptions {
            energy_offset: c,
            ..base
        };
        let b = evolve(&s, &d, 3.0, default_step(&d), InitialState::State1, &o).unwrap();
        let worst = a
            .pop2
            .iter()
            .zip(&b.pop2)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max);
        assert!(worst < 1e-10, "c={c}: {worst:e}");
    }
}

#[test]
fn rk4_is_fourth_order() {
    let s = CoupledSystem::new(Preset::Fig2Linear.model(), mhz(2.0)).unwrap();
    let d = FieldDrive::new(0.35, 0.3, mhz(4.0)).unwrap();
    let t_end = 2.0;
    // Coarse steps on purpose: the error being measured must stand above
    // roundoff, so the drift guard is loosened.
    let o = EvolveOptions {
        drift_limit: 1e-5,
        ..Default::default()
    };
    let end = |dt: f64| {
        let r = evolve(&s, &d, t_end, dt, InitialState::State1, &o).unwrap();
        *r.pop2.last().unwrap()
    };
    let dt = d.period() / 1000.0;
    let reference = end(dt / 16.0);
    let e1 = (end(dt) - reference).abs();
    let e2 = (end(dt / 2.0) - reference).abs();
    let ratio = e1 / e2;
    assert!(e1 > 1e-11, "error {e1:e} too small to measure the order");
    assert!((ratio - 16.0).abs() <= 0.3 * 16.0, "ratio {ratio}");
}

#[test]
fn detuned_drive_stays_small() {
    let s = left();
    let omega = mhz(8.0);
    let alpha = mhz(347.04);
    let w0 = mhz(25.15);
    for (n, theta) in [(0i64, 0.3), (-1, 0.6), (-2, 0.9)] {
        let f_eff = (2.0 * (w0 - n as f64 * omega) / alpha).sqrt();
        let on = FieldDrive::on_arc(f_eff, theta, omega).unwrap();
        let rabi = coupling_strength(&s, &on, n).abs();
        // shift the static field until the detuning is five Rabi frequencies
        let target = 5.0 * rabi;
        let dfs = target / (alpha * on.f_static);
        let d = FieldDrive::new(on.f_static + dfs, on.f_rf, omega).unwrap();
        let det = resonance_detuning(&s, &d, n).abs();
        assert!(
            (det / target - 1.0).abs() < 0.05,
            "n={n}: {det} vs {target}"
        );
        let r = evolve(
            &s,
            &d,
            20.0,
            default_step(&d),
            InitialState::State1,
            &EvolveOptions::default(),
        )
        .unwrap();
        let peak = r.pop2.iter().cloned().fold(0.0, f64::max);
        let bound = (coupling_strength(&s, &d, n) / det).powi(2) * 1.5;
        assert!(peak < bound, "n={n}: {peak} vs {bound}");
    }
}

#[test]
fn lzs_agrees_with_direct_integration_on_resonance() {
    // On a resonance the crossing contributions add up coherently over N
    // cycles while the start/stop dressing (amplitude ~ V / |W2| at the
    // field maximum) does not, so the comparison is made there. Errors are
    // measured against the scale N^2 (omega0 T / 2)^2 because near Bessel
    // nodes both values are small.
    let s = left();
    let omega = mhz(8.0);
    let n_cycles = 10u32;
    let mut checked = 0;
    for n in [0i64, -1, -2] {
        let f_eff = (2.0 * (mhz(25.15) - n as f64 * omega) / mhz(347.04)).sqrt();
        for theta in [0.3, 0.6, 0.9, 1.2, 1.5] {
            let d = FieldDrive::on_arc(f_eff, theta, omega).unwrap();
            if turning_point_clearance(&s, &d) < 1.5 {
                continue;
            }
            let scale = (n_cycles as f64 * s.omega0 * d.period() / 2.0).powi(2);
            let lzs =
                population_b(&s, &d, n_cycles, StartSegment::FieldMaximum, LzsMode::Exact).unwrap();
            let r = stroboscopic(
                &s,
                &d,
                n_cycles as usize,
                4096,
                InitialState::State1,
                &EvolveOptions::default(),
            )
            .unwrap();
            let ode = *r.pop2.last().unwrap();
            assert!(
                (lzs - ode).abs() < 0.05 * scale,
                "n={n} theta={theta}: lzs {lzs} ode {ode}"
            );
            checked += 1;
        }
    }
    assert!(checked >= 8, "{checked}");
}
