//! Monte-Carlo ensemble of atom pairs in two displaced Gaussian clouds.
//!
//! A probe atom sits at the origin; its partner is drawn from an elongated
//! Gaussian whose center is a distance `d` away, transverse to the long
//! axis. Each pair couples with the angle-averaged dipole-dipole strength
//! `V = mu1 mu2 / r^3` and, on the n-th sideband resonance, transfers to
//! the pair state with probability `sin^2(Omega_n t / 2)`, where
//! `Omega_n = 2 V |J_n|`.

use std::f64::consts::{FRAC_PI_2, SQRT_2};
use std::num::NonZeroUsize;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::floquet;
use crate::grid::map_indexed;
use crate::model::{FieldDrive, StarkModel};

/// Hartree energy over hbar, rad/us.
pub const HARTREE_RAD_PER_US: f64 = 4.134_137_333_518_2e10;
/// Bohr radius, um.
pub const BOHR_UM: f64 = 5.291_772_109_03e-5;
/// `V[rad/us] = mu1 mu2 [e^2 a0^2] * DIPOLE_COUPLING / r^3 [um^3]`;
/// equals 6.12616e-3.
pub const DIPOLE_COUPLING: f64 = HARTREE_RAD_PER_US * BOHR_UM * BOHR_UM * BOHR_UM;

/// Angle-averaged dipole-dipole coupling in rad/us.
#[inline]
pub fn dipole_coupling(mu_product: f64, r_um: f64) -> f64 {
    mu_product * DIPOLE_COUPLING / (r_um * r_um * r_um)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairGeometry {
    /// Offset of the cloud center from the probe, um.
    pub d: f64,
    /// Gaussian sigma along the cloud axis, um.
    pub sigma_long: f64,
    /// Gaussian sigma in both transverse directions, um.
    pub sigma_trans: f64,
    /// Product of the two transition dipoles, e^2 a0^2.
    pub mu_product: f64,
}

impl PairGeometry {
    pub fn new(d: f64, sigma_long: f64, sigma_trans: f64, mu_product: f64) -> Result<Self> {
        for (name, v) in [
            ("d", d),
            ("sigma_long", sigma_long),
            ("sigma_trans", sigma_trans),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Domain(format!("{name} must be > 0, got {v}")));
            }
        }
        if !(mu_product.is_finite() && mu_product >= 0.0) {
            return Err(Error::Domain(format!(
                "mu_product must be >= 0, got {mu_product}"
            )));
        }
        Ok(Self {
            d,
            sigma_long,
            sigma_trans,
            mu_product,
        })
    }

    /// 400 um long, 8 um radius (1/sqrt(e) widths), 25 um apart, 800^2 e^2 a0^2.
    pub fn experiment() -> Self {
        Self {
            d: 25.0,
            sigma_long: 200.0,
            sigma_trans: 8.0,
            mu_product: 800.0 * 800.0,
        }
    }

    /// Separation for a partner displaced by `(x, y, z)` from its cloud
    /// center; `x` runs along the cloud axis, `y` along the offset.
    #[inline]
    pub fn separation(&self, p: [f64; 3]) -> f64 {
        let [x, y, z] = p;
        (x * x + (y + self.d) * (y + self.d) + z * z).sqrt()
    }

    pub fn coupling(&self, p: [f64; 3]) -> f64 {
        dipole_coupling(self.mu_product, self.separation(p))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairEnsemble {
    pub seed: u64,
    pub geometry: PairGeometry,
    /// Partner offsets from the cloud center, um.
    pub positions: Vec<[f64; 3]>,
    /// rad/us
    pub couplings: Vec<f64>,
}

impl PairEnsemble {
    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn from_positions(geometry: PairGeometry, seed: u64, positions: Vec<[f64; 3]>) -> Self {
        let couplings = positions.iter().map(|&p| geometry.coupling(p)).collect();
        Self {
            seed,
            geometry,
            positions,
            couplings,
        }
    }

    /// Same positions with every coupling scaled by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        let mut g = self.geometry;
        g.mu_product *= factor;
        Self::from_positions(g, self.seed, self.positions.clone())
    }
}

/// Draws `count` partner positions. Pair `i` uses its own ChaCha8 stream
/// `i` under `seed`, so the result does not depend on `workers`.
pub fn sample_ensemble(
    geometry: PairGeometry,
    count: usize,
    seed: u64,
    workers: NonZeroUsize,
) -> Result<PairEnsemble> {
    if count == 0 {
        return Err(Error::Domain("ensemble needs at least one pair".into()));
    }
    let positions = map_indexed(count, workers, |i| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        let mut g = || -> f64 { StandardNormal.sample(&mut rng) };
        let x = geometry.sigma_long * g();
        let y = geometry.sigma_trans * g();
        let z = geometry.sigma_trans * g();
        [x, y, z]
    });
    Ok(PairEnsemble::from_positions(geometry, seed, positions))
}

/// Mean of `sin^2(Omega_n,i t / 2)` with `Omega_n,i = 2 V_i |J_n|`.
pub fn pp_fraction_for_amplitude(ensemble: &PairEnsemble, amplitude: f64, t: f64) -> Result<f64> {
    if t.is_nan() || t < 0.0 {
        return Err(Error::Domain(format!("time must be >= 0, got {t}")));
    }
    let a = amplitude.abs() * t;
    let sum: f64 = ensemble
        .couplings
        .iter()
        .map(|v| (v * a).sin().powi(2))
        .sum();
    Ok(sum / ensemble.len() as f64)
}

/// Pair-state fraction after time `t` on the `n`-th sideband resonance.
pub fn pp_fraction(
    ensemble: &PairEnsemble,
    model: &StarkModel,
    drive: &FieldDrive,
    n: i64,
    t: f64,
) -> Result<f64> {
    pp_fraction_for_amplitude(ensemble, floquet::amplitude(model, drive, n), t)
}

/// Effective field of the `n`-photon resonance: `F_eff^2 = 2 (W0 - n omega) / alpha`.
pub fn resonant_effective_field(model: &StarkModel, omega: f64, n: i64) -> Result<f64> {
    let StarkModel::Quadratic { w0, alpha } = *model else {
        return Err(Error::Domain(
            "mixing-angle scans need a quadratic Stark shift".into(),
        ));
    };
    let f2 = 2.0 * (w0 - n as f64 * omega) / alpha;
    if f2.is_nan() || f2 < 0.0 {
        return Err(Error::Domain(format!("no real resonance for n = {n}")));
    }
    Ok(f2.sqrt())
}

/// Mixing angles in `[0, pi/2]` where the constant-`f_eff` arc crosses a
/// line `F_s +- F_rf = +-Fq` bounding the classically allowed region.
pub fn classical_boundary_angles(model: &StarkModel, f_eff: f64) -> Result<Vec<f64>> {
    let fq = *model.crossing_fields()?.last().expect("crossing field");
    let mut out = Vec::new();
    // f_eff cos t + s sqrt2 f_eff sin t = c
    for (s, c) in [(1.0, fq), (-1.0, fq), (-1.0, -fq)] {
        let (a, b) = (f_eff, s * SQRT_2 * f_eff);
        let r = a.hypot(b);
        if r == 0.0 || (c / r).abs() > 1.0 {
            continue;
        }
        let psi = b.atan2(a);
        let off = (c / r).acos();
        for th in [psi + off, psi - off] {
            if (-1e-12..=FRAC_PI_2 + 1e-12).contains(&th) {
                out.push(th.clamp(0.0, FRAC_PI_2));
            }
        }
    }
    out.sort_by(f64::total_cmp);
    out.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    Ok(out)
}

fn classically_allowed(model: &StarkModel, drive: &FieldDrive) -> bool {
    let lo = drive.f_static - drive.f_rf;
    let hi = drive.f_static + drive.f_rf;
    model
        .crossing_fields()
        .map(|fs| fs.iter().any(|&f| lo <= f && f <= hi))
        .unwrap_or(false)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRow {
    pub theta: f64,
    pub f_static: f64,
    pub f_rf: f64,
    pub pp_fraction: f64,
    /// `J_n^2` at the same drive, the weak-coupling single-pair shape.
    pub bessel_sq: f64,
    pub allowed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MixingScan {
    pub n: i64,
    pub f_eff: f64,
    pub boundary_angles: Vec<f64>,
    /// Smallest angle at which the arc is classically allowed.
    pub onset_angle: Option<f64>,
    pub rows: Vec<ScanRow>,
}

/// Pair-state fraction along the resonant constant-`F_eff` arc of the
/// `n`-photon resonance, one row per mixing angle.
pub fn mixing_angle_scan(
    ensemble: &PairEnsemble,
    model: &StarkModel,
    omega: f64,
    n: i64,
    thetas: &[f64],
    t: f64,
    workers: NonZeroUsize,
) -> Result<MixingScan> {
    let f_eff = resonant_effective_field(model, omega, n)?;
    let drives = thetas
        .iter()
        .map(|&th| FieldDrive::on_arc(f_eff, th, omega))
        .collect::<Result<Vec<_>>>()?;
    let rows = map_indexed(drives.len(), workers, |i| {
        let d = &drives[i];
        let amp = floquet::amplitude(model, d, n);
        pp_fraction_for_amplitude(ensemble, amp, t).map(|pp| ScanRow {
            theta: thetas[i],
            f_static: d.f_static,
            f_rf: d.f_rf,
            pp_fraction: pp,
            bessel_sq: amp * amp,
            allowed: classically_allowed(model, d),
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let boundary_angles = classical_boundary_angles(model, f_eff)?;
    let at = |th: f64| FieldDrive::on_arc(f_eff, th, omega).map(|d| classically_allowed(model, &d));
    let onset_angle = if at(0.0)? {
        Some(0.0)
    } else {
        boundary_angles
            .iter()
            .copied()
            .find(|&th| at((th + 1e-9).min(FRAC_PI_2)).unwrap_or(false))
    };
    Ok(MixingScan {
        n,
        f_eff,
        boundary_angles,
        onset_angle,
        rows,
    })
}
