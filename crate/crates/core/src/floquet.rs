//! Floquet sidebands of the driven level, resonance conditions, and the
//! per-sideband coupling strengths.
//!
//! Under the drive, state |2> splits into sidebands `n` at energies
//! `<W2> - n omega` with amplitudes `J_n(k F_rf / omega)` (linear Stark shift)
//! or `J_n(alpha F_rf F_s / omega, alpha F_rf^2 / (8 omega))` (quadratic).
//! Each sideband crossing |1> opens an avoided crossing of width
//! `omega0 |J_n|`.

use std::num::NonZeroUsize;

use crate::besselx::{gen_bessel_row, gen_bessel_sum, GenBesselArgs};
use crate::error::Result;
use crate::grid::{map_indexed, FieldGrid, GridMap};
use crate::model::{CoupledSystem, FieldDrive, StarkModel};
use crate::units::mhz;

/// Extra orders kept beyond `|x| + 2|y|` on each side of the spectrum.
pub const SIDEBAND_MARGIN: i64 = 40;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sideband {
    pub n: i64,
    /// rad/us
    pub energy: f64,
    pub amplitude: f64,
}

impl Sideband {
    pub fn population(&self) -> f64 {
        self.amplitude * self.amplitude
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SidebandSpectrum {
    pub drive: FieldDrive,
    pub model: StarkModel,
    pub n_min: i64,
    pub n_max: i64,
    /// Ascending in `n`.
    pub sidebands: Vec<Sideband>,
}

impl SidebandSpectrum {
    pub fn total_population(&self) -> f64 {
        self.sidebands.iter().map(Sideband::population).sum()
    }

    pub fn get(&self, n: i64) -> Option<&Sideband> {
        if n < self.n_min || n > self.n_max {
            return None;
        }
        self.sidebands.get((n - self.n_min) as usize)
    }

    /// Sidebands carrying more than `threshold` population.
    pub fn populated(&self, threshold: f64) -> impl Iterator<Item = &Sideband> {
        self.sidebands
            .iter()
            .filter(move |s| s.population() > threshold)
    }
}

/// Half-width `N` of the sideband range `[-N, N]` kept for a drive.
pub fn sideband_range(model: &StarkModel, drive: &FieldDrive) -> i64 {
    let (x, y) = model.bessel_args(drive);
    (x.abs() + 2.0 * y.abs()).ceil() as i64 + SIDEBAND_MARGIN
}

/// Signed sideband amplitude `J_n(...)` for the model under `drive`.
pub fn amplitude(model: &StarkModel, drive: &FieldDrive, n: i64) -> f64 {
    let (x, y) = model.bessel_args(drive);
    gen_bessel_sum(GenBesselArgs::new(n, x, y))
}

/// Energy of sideband `n`: `<W2> - n omega`.
#[inline]
pub fn sideband_energy(model: &StarkModel, drive: &FieldDrive, n: i64) -> f64 {
    model.mean_energy2(drive) - n as f64 * drive.omega
}

pub fn spectrum(model: &StarkModel, drive: &FieldDrive) -> SidebandSpectrum {
    let big_n = sideband_range(model, drive);
    let (x, y) = model.bessel_args(drive);
    let amps = gen_bessel_row(x, y, -big_n, big_n);
    let sidebands = (-big_n..=big_n)
        .zip(amps)
        .map(|(n, amplitude)| Sideband {
            n,
            energy: sideband_energy(model, drive, n),
            amplitude,
        })
        .collect();
    SidebandSpectrum {
        drive: *drive,
        model: *model,
        n_min: -big_n,
        n_max: big_n,
        sidebands,
    }
}

/// Energy mismatch of the `n`-photon resonance, zero exactly on resonance.
pub fn resonance_detuning(system: &CoupledSystem, drive: &FieldDrive, n: i64) -> f64 {
    sideband_energy(&system.stark, drive, n)
}

/// Signed coupling `omega0 J_n(...)`.
pub fn coupling_amplitude(system: &CoupledSystem, drive: &FieldDrive, n: i64) -> f64 {
    system.omega0 * amplitude(&system.stark, drive, n)
}

/// `Omega_n = omega0 |J_n(...)|`, the full width of the n-th avoided crossing.
pub fn coupling_strength(system: &CoupledSystem, drive: &FieldDrive, n: i64) -> f64 {
    coupling_amplitude(system, drive, n).abs()
}

/// Default Lorentzian FWHM used to render resonance lines on a grid, rad/us.
pub fn default_linewidth() -> f64 {
    mhz(0.2)
}

/// Peak-normalized Lorentzian with full width at half maximum `fwhm`.
#[inline]
pub fn lorentzian(detuning: f64, fwhm: f64) -> f64 {
    let u = 2.0 * detuning / fwhm;
    1.0 / (1.0 + u * u)
}

/// `sum_n Omega_n^2 L(detuning_n)` at one field point.
pub fn resonance_value(system: &CoupledSystem, drive: &FieldDrive, linewidth: f64) -> f64 {
    let spec = spectrum(&system.stark, drive);
    let o2 = system.omega0 * system.omega0;
    spec.sidebands
        .iter()
        .map(|s| o2 * s.population() * lorentzian(s.energy, linewidth))
        .sum()
}

/// Interaction-strength map over the (F_s, F_rf) plane at fixed `omega`.
pub fn resonance_map(
    system: &CoupledSystem,
    omega: f64,
    grid: &FieldGrid,
    linewidth: f64,
    workers: NonZeroUsize,
) -> Result<GridMap<f64>> {
    // Validate once; every grid point shares omega and non-negative ranges.
    FieldDrive::new(grid.f_static.min, grid.f_rf.min, omega)?;
    let values = map_indexed(grid.len(), workers, |idx| {
        let (fs, frf) = grid.point(idx);
        let drive = FieldDrive {
            f_static: fs,
            f_rf: frf,
            omega,
        };
        resonance_value(system, &drive, linewidth)
    });
    Ok(GridMap {
        grid: *grid,
        values,
    })
}

/// Line `F_s + slope * F_rf = offset` in the (F_s, F_rf) plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryLine {
    /// `+1` for `F_s + F_rf`, `-1` for `F_s - F_rf`.
    pub rf_sign: f64,
    pub offset: f64,
}

impl BoundaryLine {
    /// Static field on the line at a given RF amplitude.
    pub fn f_static_at(&self, f_rf: f64) -> f64 {
        self.offset - self.rf_sign * f_rf
    }

    pub fn describe(&self) -> String {
        let op = if self.rf_sign > 0.0 { '+' } else { '-' };
        format!("F_s {op} F_rf = {:.6} V/cm", self.offset)
    }
}

/// Field combinations for which a crossing is reached exactly at an extremum
/// of the RF oscillation.
///
/// Linear: `F_s + F_rf = F_lin` and `F_s - F_rf = F_lin`. Quadratic:
/// `F_s + F_rf = Fq`, `F_s - F_rf = Fq`, and `F_s - F_rf = -Fq`, the last
/// bounding the region where both crossings are traversed.
pub fn classical_boundaries(system: &CoupledSystem) -> Result<Vec<BoundaryLine>> {
    let fields = system.stark.crossing_fields()?;
    let fc = *fields.last().expect("at least one crossing field");
    let mut lines = vec![
        BoundaryLine {
            rf_sign: 1.0,
            offset: fc,
        },
        BoundaryLine {
            rf_sign: -1.0,
            offset: fc,
        },
    ];
    if fields.len() == 2 {
        lines.push(BoundaryLine {
            rf_sign: -1.0,
            offset: -fc,
        });
    }
    Ok(lines)
}
