use std::num::NonZeroUsize;

use floquet_lzs::ensemble::{
    dipole_coupling, pp_fraction, sample_ensemble, PairEnsemble, PairGeometry,
};
use floquet_lzs::grid::one_worker;
use floquet_lzs::timedomain::{evolve, EvolveOptions, InitialState};
use floquet_lzs::units::mhz;
use floquet_lzs::{CoupledSystem, FieldDrive, Preset};

#[test]
fn inverse_cube_mean_is_reproducible() {
    let g = PairGeometry::experiment();
    let mean = |e: &PairEnsemble| {
        e.positions
            .iter()
            .map(|&p| g.separation(p).powi(-3))
            .sum::<f64>()
            / e.len() as f64
    };
    let a = sample_ensemble(g, 100_000, 99, one_worker()).unwrap();
    let b = sample_ensemble(g, 100_000, 99, NonZeroUsize::new(7).unwrap()).unwrap();
    assert_eq!(mean(&a).to_bits(), mean(&b).to_bits());
    assert_eq!(a.couplings, b.couplings);
    let c = sample_ensemble(g, 100_000, 100, one_worker()).unwrap();
    assert_ne!(a.couplings, c.couplings);
}

#[test]
fn on_axis_pair_matches_direct_integration() {
    let g = PairGeometry::experiment();
    let e = PairEnsemble::from_positions(g, 0, vec![[0.0, 0.0, 0.0]]);
    let v = dipole_coupling(g.mu_product, g.d);
    assert_eq!(e.couplings[0], v);
    let model = Preset::LeftResonance.model();
    let fq = model.crossing_fields().unwrap()[1];
    let d = FieldDrive::new(fq, 0.0, mhz(8.0)).unwrap();
    let pp = pp_fraction(&e, &model, &d, 0, 20.0).unwrap();
    assert!((pp - (v * 20.0).sin().powi(2)).abs() < 1e-12);
    // omega0 / 2 is the pair coupling
    let sys = CoupledSystem::new(model, 2.0 * v).unwrap();
    let opts = EvolveOptions {
        sample_every: usize::MAX,
        ..Default::default()
    };
    let r = evolve(
        &sys,
        &d,
        20.0,
        d.period() / 4096.0,
        InitialState::State1,
        &opts,
    )
    .unwrap();
    assert!((r.pop2.last().unwrap() - pp).abs() < 1e-6);
}
