//! Classical limit of the sideband spectrum.
//!
//! For slow driving the sideband populations approach the fraction of time
//! the instantaneous energy `W2(F(t))` spends near each value. With `t`
//! uniform over a period, the field follows the arcsine law on
//! `[F_s - F_rf, F_s + F_rf]`, and the energy density is its pushforward
//! through the Stark law, summed over field branches.

use std::f64::consts::{FRAC_1_PI, PI};

use crate::error::{Error, Result};
use crate::floquet;
use crate::model::{FieldDrive, StarkModel};
use crate::units::mhz;

fn require_rf(drive: &FieldDrive) -> Result<()> {
    if drive.f_rf > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(
            "classical density needs F_rf > 0; the static field is a delta distribution".into(),
        ))
    }
}

/// Density of the instantaneous field, `1 / (pi sqrt(F_rf^2 - (f - F_s)^2))`
/// inside the swept range and zero outside. Infinite at the turning points.
pub fn field_density(drive: &FieldDrive, f: f64) -> Result<f64> {
    require_rf(drive)?;
    Ok(arcsine_density(drive, f))
}

#[inline]
fn arcsine_density(drive: &FieldDrive, f: f64) -> f64 {
    let u = f - drive.f_static;
    let r2 = drive.f_rf * drive.f_rf - u * u;
    if u.abs() > drive.f_rf {
        0.0
    } else if r2 <= 0.0 {
        f64::INFINITY
    } else {
        FRAC_1_PI / r2.sqrt()
    }
}

/// `P(F <= f)` for the arcsine law.
pub fn field_cdf(drive: &FieldDrive, f: f64) -> Result<f64> {
    require_rf(drive)?;
    let u = ((f - drive.f_static) / drive.f_rf).clamp(-1.0, 1.0);
    Ok(0.5 + FRAC_1_PI * u.asin())
}

/// Which field root of `W2(F) = w` contributes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldBranch {
    Positive,
    Negative,
}

/// Field roots of `W2(F) = w` with their `|dW2/dF|`.
fn field_roots(model: &StarkModel, w: f64) -> Vec<(FieldBranch, f64, f64)> {
    match *model {
        StarkModel::Linear { w0, k } => {
            let f = (w0 - w) / k;
            let branch = if f >= 0.0 {
                FieldBranch::Positive
            } else {
                FieldBranch::Negative
            };
            vec![(branch, f, k.abs())]
        }
        StarkModel::Quadratic { w0, alpha } => {
            let arg = 2.0 * (w0 - w) / alpha;
            if arg < 0.0 {
                return Vec::new();
            }
            let fc = arg.sqrt();
            let jac = alpha.abs() * fc;
            vec![
                (FieldBranch::Positive, fc, jac),
                (FieldBranch::Negative, -fc, jac),
            ]
        }
    }
}

/// Contribution of a single field branch to the energy density.
pub fn energy_density_branch(
    model: &StarkModel,
    drive: &FieldDrive,
    w: f64,
    branch: FieldBranch,
) -> Result<f64> {
    require_rf(drive)?;
    let mut total = 0.0;
    for (b, f, jac) in field_roots(model, w) {
        if b != branch {
            continue;
        }
        let p = arcsine_density(drive, f);
        if p == 0.0 {
            continue;
        }
        total += if jac == 0.0 { f64::INFINITY } else { p / jac };
    }
    Ok(total)
}

/// Density of the instantaneous energy of state |2>, per rad/us.
///
/// Returns `+inf` exactly at an asymptote.
pub fn energy_density(model: &StarkModel, drive: &FieldDrive, w: f64) -> Result<f64> {
    Ok(
        energy_density_branch(model, drive, w, FieldBranch::Positive)?
            + energy_density_branch(model, drive, w, FieldBranch::Negative)?,
    )
}

/// Energies where the density diverges, ascending: the energies at both
/// turning points of the field and, for a quadratic shift whose swept field
/// passes through zero, the zero-field energy.
pub fn energy_asymptotes(model: &StarkModel, drive: &FieldDrive) -> Vec<f64> {
    let lo = drive.f_static - drive.f_rf;
    let hi = drive.f_static + drive.f_rf;
    let mut out = vec![model.energy2(lo), model.energy2(hi)];
    if model.kind() == crate::model::StarkKind::Quadratic && lo < 0.0 && hi > 0.0 {
        out.push(model.w0());
    }
    out.sort_by(f64::total_cmp);
    out.dedup();
    out
}

/// Range `[min, max]` of energies visited during a period.
pub fn energy_support(model: &StarkModel, drive: &FieldDrive) -> (f64, f64) {
    let a = energy_asymptotes(model, drive);
    (a[0], *a.last().expect("non-empty"))
}

/// Probability that the instantaneous energy lies in `[w_lo, w_hi]`,
/// from the analytic arcsine distribution function.
pub fn energy_probability(
    model: &StarkModel,
    drive: &FieldDrive,
    w_lo: f64,
    w_hi: f64,
) -> Result<f64> {
    require_rf(drive)?;
    if w_hi <= w_lo {
        return Ok(0.0);
    }
    let cdf = |f: f64| field_cdf(drive, f);
    match *model {
        StarkModel::Linear { w0, k } => {
            let (a, b) = ((w0 - w_hi) / k, (w0 - w_lo) / k);
            let (a, b) = if a <= b { (a, b) } else { (b, a) };
            Ok(cdf(b)? - cdf(a)?)
        }
        StarkModel::Quadratic { w0, alpha } => {
            // |F| lies in [sqrt(2(w0 - w_hi)/alpha), sqrt(2(w0 - w_lo)/alpha)].
            let root = |w: f64| (2.0 * (w0 - w) / alpha).max(0.0).sqrt();
            let (inner, outer) = (root(w_hi), root(w_lo));
            Ok((cdf(outer)? - cdf(inner)?) + (cdf(-inner)? - cdf(-outer)?))
        }
    }
}

/// Sampled density with divergences marked.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityCurve {
    pub abscissa: Vec<f64>,
    pub density: Vec<f64>,
    pub asymptotes: Vec<f64>,
}

/// Energy density on a grid; points within half a grid step of an
/// asymptote are reported as `+inf`.
pub fn energy_density_curve(
    model: &StarkModel,
    drive: &FieldDrive,
    energies: &[f64],
) -> Result<DensityCurve> {
    let asymptotes = energy_asymptotes(model, drive);
    let step = grid_step(energies);
    let density = energies
        .iter()
        .map(|&w| {
            if near_any(w, &asymptotes, 0.5 * step) {
                Ok(f64::INFINITY)
            } else {
                energy_density(model, drive, w)
            }
        })
        .collect::<Result<_>>()?;
    Ok(DensityCurve {
        abscissa: energies.to_vec(),
        density,
        asymptotes,
    })
}

fn grid_step(xs: &[f64]) -> f64 {
    xs.windows(2)
        .map(|w| (w[1] - w[0]).abs())
        .fold(f64::INFINITY, f64::min)
        .min(f64::MAX)
}

fn near_any(w: f64, points: &[f64], dist: f64) -> bool {
    points.iter().any(|&a| (w - a).abs() < dist)
}

/// Width of the centered moving average applied to sideband populations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AverageWindow {
    /// Fixed number of sidebands.
    Sidebands(usize),
    /// Fixed energy span (rad/us); the sideband count grows as omega shrinks.
    Energy(f64),
}

impl Default for AverageWindow {
    fn default() -> Self {
        AverageWindow::Energy(mhz(3.0))
    }
}

impl AverageWindow {
    /// Sideband count at drive frequency `omega`.
    pub fn sidebands(&self, omega: f64) -> usize {
        match *self {
            AverageWindow::Sidebands(k) => k.max(1),
            AverageWindow::Energy(span) => {
                let k = 2.0 * (0.5 * span / omega).round();
                (k as usize).max(2)
            }
        }
    }
}

/// Centered moving average over `k` neighbours. An even `k` uses the
/// `2 x k` form (half weight on the two outermost points) so the window
/// stays centered. Values beyond the ends count as zero.
pub fn moving_average(values: &[f64], k: usize) -> Vec<f64> {
    let k = k.max(1);
    let half = (k / 2) as isize;
    let weight = |j: isize| -> f64 {
        if k.is_multiple_of(2) && j.abs() == half {
            0.5 / k as f64
        } else {
            1.0 / k as f64
        }
    };
    let len = values.len() as isize;
    (0..len)
        .map(|i| {
            (-half..=half)
                .filter_map(|j| {
                    let idx = i + j;
                    (0..len)
                        .contains(&idx)
                        .then(|| weight(j) * values[idx as usize])
                })
                .sum()
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonRow {
    pub n: i64,
    /// rad/us
    pub energy: f64,
    pub population: f64,
    /// `omega * P(W)`; `+inf` within `omega / 2` of an asymptote.
    pub classical_scaled: f64,
    pub moving_avg: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalComparison {
    pub omega: f64,
    pub window: usize,
    pub asymptotes: Vec<f64>,
    /// Ascending in energy.
    pub rows: Vec<ComparisonRow>,
}

impl ClassicalComparison {
    /// Mean of `|moving_avg - classical| / classical` over rows at least
    /// `3 omega` from every asymptote with non-zero classical density.
    /// If no row qualifies (the spectrum is too coarse), rows at least
    /// `omega / 2` away are used instead.
    pub fn mean_relative_deviation(&self) -> Option<f64> {
        self.deviation_beyond(3.0 * self.omega)
            .or_else(|| self.deviation_beyond(0.5 * self.omega))
    }

    pub fn deviation_beyond(&self, clearance: f64) -> Option<f64> {
        let devs: Vec<f64> = self
            .rows
            .iter()
            .filter(|r| {
                r.classical_scaled.is_finite()
                    && r.classical_scaled > 0.0
                    && !near_any(r.energy, &self.asymptotes, clearance)
            })
            .map(|r| (r.moving_avg - r.classical_scaled).abs() / r.classical_scaled)
            .collect();
        (!devs.is_empty()).then(|| devs.iter().sum::<f64>() / devs.len() as f64)
    }
}

/// Sideband populations next to the scaled classical density, for each
/// drive frequency in `omegas`.
pub fn sideband_vs_classical(
    model: &StarkModel,
    drive: &FieldDrive,
    omegas: &[f64],
    window: AverageWindow,
) -> Result<Vec<ClassicalComparison>> {
    require_rf(drive)?;
    omegas
        .iter()
        .map(|&omega| {
            let d = drive.with_omega(omega)?;
            let spec = floquet::spectrum(model, &d);
            let asymptotes = energy_asymptotes(model, &d);
            // Ascending energy is descending n.
            let mut sbs = spec.sidebands;
            sbs.reverse();
            let pops: Vec<f64> = sbs.iter().map(|s| s.population()).collect();
            let k = window.sidebands(omega);
            let avg = moving_average(&pops, k);
            let rows = sbs
                .iter()
                .zip(avg)
                .map(|(s, moving_avg)| {
                    let classical_scaled = if near_any(s.energy, &asymptotes, 0.5 * omega) {
                        f64::INFINITY
                    } else {
                        omega * energy_density(model, &d, s.energy)?
                    };
                    Ok(ComparisonRow {
                        n: s.n,
                        energy: s.energy,
                        population: s.population(),
                        classical_scaled,
                        moving_avg,
                    })
                })
                .collect::<Result<_>>()?;
            Ok(ClassicalComparison {
                omega,
                window: k,
                asymptotes,
                rows,
            })
        })
        .collect()
}

/// `int_a^b g(w) dw` for `g` with at most inverse-square-root endpoint
/// singularities, via `w = (a+b)/2 - (b-a)/2 cos u` and the midpoint rule.
pub fn integrate_endpoint_singular(a: f64, b: f64, panels: usize, g: impl Fn(f64) -> f64) -> f64 {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let du = PI / panels as f64;
    (0..panels)
        .map(|i| {
            let u = (i as f64 + 0.5) * du;
            g(c - h * u.cos()) * h * u.sin()
        })
        .sum::<f64>()
        * du
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Preset;

    fn fig4() -> (StarkModel, FieldDrive) {
        (
            Preset::Fig2Linear.model(),
            FieldDrive::new(0.2, 0.3, mhz(8.0)).unwrap(),
        )
    }

    fn fig5() -> (StarkModel, FieldDrive) {
        (
            Preset::LeftResonance.model(),
            FieldDrive::new(0.2, 0.45, mhz(8.0)).unwrap(),
        )
    }

    #[test]
    fn field_density_examples() {
        let d = FieldDrive::new(0.2, 0.3, 1.0).unwrap();
        assert!((field_density(&d, 0.2).unwrap() - 1.0 / (PI * 0.3)).abs() < 1e-14);
        assert_eq!(field_density(&d, 0.51).unwrap(), 0.0);
        assert_eq!(field_density(&d, -0.11).unwrap(), 0.0);
        let flat = FieldDrive::new(0.2, 0.0, 1.0).unwrap();
        assert!(field_density(&flat, 0.2).is_err());
    }

    #[test]
    fn field_density_normalized() {
        let d = FieldDrive::new(0.2, 0.3, 1.0).unwrap();
        let total = integrate_endpoint_singular(-0.1, 0.5, 2000, |f| field_density(&d, f).unwrap());
        assert!((total - 1.0).abs() < 1e-6, "{total}");
        assert_eq!(field_cdf(&d, -0.1).unwrap(), 0.0);
        assert_eq!(field_cdf(&d, 0.5).unwrap(), 1.0);
        assert!((field_cdf(&d, 0.2).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn linear_support_and_affine_map() {
        let (m, d) = fig4();
        let (lo, hi) = energy_support(&m, &d);
        assert!((lo - (mhz(25.0) - mhz(60.0) * 0.5)).abs() < 1e-12);
        assert!((hi - (mhz(25.0) + mhz(60.0) * 0.1)).abs() < 1e-12);
        let w = 0.5 * (lo + hi);
        let f = (mhz(25.0) - w) / mhz(60.0);
        let expect = field_density(&d, f).unwrap() / mhz(60.0);
        assert!((energy_density(&m, &d, w).unwrap() - expect).abs() < 1e-15);
        assert_eq!(energy_asymptotes(&m, &d).len(), 2);
    }

    #[test]
    fn quadratic_three_asymptotes() {
        let (m, d) = fig5();
        let a = energy_asymptotes(&m, &d);
        assert_eq!(a.len(), 3);
        assert_eq!(a[2], m.w0());
        assert_eq!(energy_density(&m, &d, a[0]).unwrap(), f64::INFINITY);
        assert_eq!(energy_density(&m, &d, m.w0() + 1.0).unwrap(), 0.0);
    }

    #[test]
    fn energy_density_normalized() {
        for (m, d) in [fig4(), fig5()] {
            let (lo, hi) = energy_support(&m, &d);
            let asym = energy_asymptotes(&m, &d);
            let mut cuts = vec![lo];
            cuts.extend(asym.iter().copied().filter(|&a| a > lo && a < hi));
            cuts.push(hi);
            let total: f64 = cuts
                .windows(2)
                .map(|s| {
                    integrate_endpoint_singular(s[0], s[1], 4000, |w| {
                        energy_density(&m, &d, w).unwrap()
                    })
                })
                .sum();
            assert!((total - 1.0).abs() < 1e-3, "{total}");
            let analytic = energy_probability(&m, &d, lo, hi).unwrap();
            assert!((analytic - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn branch_additivity() {
        let (m, d) = fig5();
        let (lo, hi) = energy_support(&m, &d);
        for i in 1..50 {
            let w = lo + (hi - lo) * i as f64 / 50.0;
            let sum = energy_density_branch(&m, &d, w, FieldBranch::Positive).unwrap()
                + energy_density_branch(&m, &d, w, FieldBranch::Negative).unwrap();
            let full = energy_density(&m, &d, w).unwrap();
            assert!((sum - full).abs() <= 1e-12 * full.abs().max(1.0));
        }
    }

    #[test]
    fn curve_marks_asymptotes() {
        let (m, d) = fig5();
        let (lo, hi) = energy_support(&m, &d);
        let grid: Vec<f64> = (0..=200)
            .map(|i| lo + (hi - lo) * i as f64 / 200.0)
            .collect();
        let c = energy_density_curve(&m, &d, &grid).unwrap();
        assert_eq!(c.density[0], f64::INFINITY);
        assert_eq!(c.density[200], f64::INFINITY);
        assert!(c.density.iter().all(|&p| p >= 0.0));
    }

    #[test]
    fn moving_average_weights() {
        let ones = vec![1.0; 9];
        let ma = moving_average(&ones, 4);
        assert!((ma[4] - 1.0).abs() < 1e-15);
        assert!((moving_average(&ones, 3)[4] - 1.0).abs() < 1e-15);
        let spike = [0.0, 0.0, 1.0, 0.0, 0.0];
        assert_eq!(moving_average(&spike, 2), vec![0.0, 0.25, 0.5, 0.25, 0.0]);
        assert_eq!(AverageWindow::Energy(mhz(3.0)).sidebands(mhz(0.25)), 12);
        assert_eq!(AverageWindow::Energy(mhz(3.0)).sidebands(mhz(8.0)), 2);
    }

    #[test]
    fn fast_drive_concentrates_on_central_sideband() {
        let m = Preset::Fig2Linear.model();
        let d = FieldDrive::new(0.2, 0.05, mhz(200.0)).unwrap();
        let cmp =
            sideband_vs_classical(&m, &d, &[mhz(200.0)], AverageWindow::Sidebands(1)).unwrap();
        let best = cmp[0]
            .rows
            .iter()
            .max_by(|a, b| a.population.total_cmp(&b.population))
            .unwrap();
        assert_eq!(best.n, 0);
    }

    #[test]
    fn sidebands_stay_near_classical_support() {
        // Leakage past a turning point extends over the Airy width of the
        // energy extremum; for omega of a few MHz that is below 3 omega.
        for (m, d) in [fig4(), fig5()] {
            for omega in [mhz(8.0), mhz(2.0)] {
                let dd = d.with_omega(omega).unwrap();
                let spec = floquet::spectrum(&m, &dd);
                let peak = spec
                    .sidebands
                    .iter()
                    .map(|s| s.population())
                    .fold(0.0, f64::max);
                let (lo, hi) = energy_support(&m, &dd);
                for s in spec.populated(1e-2 * peak) {
                    assert!(
                        s.energy > lo - 3.0 * omega && s.energy < hi + 3.0 * omega,
                        "n={}",
                        s.n
                    );
                }
            }
        }
    }
}
