use floquet_lzs::classical::{
    energy_asymptotes, energy_density, energy_density_branch, energy_support,
    sideband_vs_classical, AverageWindow, FieldBranch,
};
use floquet_lzs::units::mhz;
use floquet_lzs::{FieldDrive, Preset};
use proptest::prelude::*;

#[test]
fn sidebands_converge_to_classical_density() {
    let m = Preset::Fig2Linear.model();
    let d = FieldDrive::new(0.2, 0.3, mhz(8.0)).unwrap();
    let omegas: Vec<f64> = [8.0, 2.0, 0.5, 0.25].iter().map(|&f| mhz(f)).collect();
    let cmp = sideband_vs_classical(&m, &d, &omegas, AverageWindow::default()).unwrap();
    let dev: Vec<f64> = cmp
        .iter()
        .map(|c| c.mean_relative_deviation().unwrap())
        .collect();
    for w in dev.windows(2) {
        assert!(w[1] < w[0], "{dev:?}");
    }
    assert!(dev[3] < 0.1, "{dev:?}");
}

proptest! {
    #[test]
    fn branches_add_up(fs in 0.0f64..0.3, extra in 0.01f64..0.5, u in 0.0f64..1.0) {
        let m = Preset::LeftResonance.model();
        let d = FieldDrive::new(fs, fs + extra, mhz(8.0)).unwrap();
        let (lo, hi) = energy_support(&m, &d);
        let w = lo + u * (hi - lo);
        prop_assume!(energy_asymptotes(&m, &d).iter().all(|a| (a - w).abs() > 1e-6));
        let total = energy_density(&m, &d, w).unwrap();
        let parts = energy_density_branch(&m, &d, w, FieldBranch::Positive).unwrap()
            + energy_density_branch(&m, &d, w, FieldBranch::Negative).unwrap();
        prop_assert!((total - parts).abs() <= 1e-12 * total.abs().max(1.0));
    }
}
