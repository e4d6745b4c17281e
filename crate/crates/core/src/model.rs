//! Drive, Stark-shift model and coupled two-level system.
//!
//! State |1> has zero energy at every field. State |2> sits at `w0` in zero
//! field and shifts either linearly (`w0 - k F`) or quadratically
//! (`w0 - alpha F^2 / 2`).

use std::f64::consts::{FRAC_PI_2, SQRT_2};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::units::{mhz, period};

/// Static offset plus sinusoidal RF field, `F(t) = f_static + f_rf cos(omega t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldDrive {
    /// V/cm, may be negative.
    pub f_static: f64,
    /// V/cm, non-negative.
    pub f_rf: f64,
    /// rad/us, positive.
    pub omega: f64,
}

impl FieldDrive {
    pub fn new(f_static: f64, f_rf: f64, omega: f64) -> Result<Self> {
        if !(f_static.is_finite() && f_rf.is_finite() && omega.is_finite()) {
            return Err(Error::Domain("drive parameters must be finite".into()));
        }
        if f_rf < 0.0 {
            return Err(Error::Domain(format!(
                "RF amplitude must be >= 0, got {f_rf}"
            )));
        }
        if omega <= 0.0 {
            return Err(Error::Domain(format!(
                "drive frequency must be > 0, got {omega}"
            )));
        }
        Ok(Self {
            f_static,
            f_rf,
            omega,
        })
    }

    /// Drive on a constant-effective-field arc at mixing angle `theta`
    /// (`0` pure static, `pi/2` pure RF).
    ///
    /// Inverts `theta = atan(f_rf / (sqrt2 f_static))` together with
    /// `f_eff^2 = f_static^2 + f_rf^2 / 2`, giving `f_static = f_eff cos(theta)`
    /// and `f_rf = sqrt2 f_eff sin(theta)` (the non-negative root pair).
    pub fn on_arc(f_eff: f64, theta: f64, omega: f64) -> Result<Self> {
        if !(0.0..=FRAC_PI_2 + 1e-12).contains(&theta) {
            return Err(Error::Domain(format!(
                "mixing angle {theta} outside [0, pi/2]"
            )));
        }
        let theta = theta.min(FRAC_PI_2);
        // cos(pi/2) is 6e-17, not zero; snap the pure-RF end.
        let (s, c) = if theta == FRAC_PI_2 {
            (1.0, 0.0)
        } else {
            theta.sin_cos()
        };
        Self::new(f_eff * c, SQRT_2 * f_eff * s, omega)
    }

    pub fn period(&self) -> f64 {
        period(self.omega)
    }

    /// Instantaneous field at time `t` (us).
    #[inline]
    pub fn field_at(&self, t: f64) -> f64 {
        self.f_static + self.f_rf * (self.omega * t).cos()
    }

    /// Static field with the same cycle-averaged quadratic Stark shift.
    pub fn effective_field(&self) -> f64 {
        (self.f_static * self.f_static + 0.5 * self.f_rf * self.f_rf).sqrt()
    }

    /// `atan(f_rf / (sqrt2 f_static))`, in `[0, pi/2]` for `f_static >= 0`.
    pub fn mixing_angle(&self) -> Result<f64> {
        if self.f_static == 0.0 && self.f_rf == 0.0 {
            return Err(Error::Domain(
                "mixing angle undefined for zero field".into(),
            ));
        }
        Ok(self.f_rf.atan2(SQRT_2 * self.f_static.abs()))
    }

    pub fn with_omega(&self, omega: f64) -> Result<Self> {
        Self::new(self.f_static, self.f_rf, omega)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StarkKind {
    Linear,
    Quadratic,
}

/// Stark shift law of state |2>. All energies in rad/us.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StarkModel {
    /// `W2 = w0 - k F`; `k` in rad/us per V/cm.
    Linear { w0: f64, k: f64 },
    /// `W2 = w0 - alpha F^2 / 2`; `alpha` in rad/us per (V/cm)^2.
    Quadratic { w0: f64, alpha: f64 },
}

impl StarkModel {
    pub fn kind(&self) -> StarkKind {
        match self {
            StarkModel::Linear { .. } => StarkKind::Linear,
            StarkModel::Quadratic { .. } => StarkKind::Quadratic,
        }
    }

    pub fn w0(&self) -> f64 {
        match *self {
            StarkModel::Linear { w0, .. } | StarkModel::Quadratic { w0, .. } => w0,
        }
    }

    #[inline]
    pub fn energy1(&self, _field: f64) -> f64 {
        0.0
    }

    #[inline]
    pub fn energy2(&self, field: f64) -> f64 {
        match *self {
            StarkModel::Linear { w0, k } => w0 - k * field,
            StarkModel::Quadratic { w0, alpha } => w0 - 0.5 * alpha * field * field,
        }
    }

    /// `dW2/dF`.
    #[inline]
    pub fn energy2_slope(&self, field: f64) -> f64 {
        match *self {
            StarkModel::Linear { k, .. } => -k,
            StarkModel::Quadratic { alpha, .. } => -alpha * field,
        }
    }

    /// Energy of state |2> along the drive.
    #[inline]
    pub fn energy2_at_time(&self, drive: &FieldDrive, t: f64) -> f64 {
        self.energy2(drive.field_at(t))
    }

    /// Fields where the diabatic levels cross: `[w0/k]` or `[-Fq, +Fq]`.
    pub fn crossing_fields(&self) -> Result<Vec<f64>> {
        match *self {
            StarkModel::Linear { w0, k } => {
                if k == 0.0 {
                    return Err(Error::Domain(
                        "linear model with k = 0 has no crossing".into(),
                    ));
                }
                Ok(vec![w0 / k])
            }
            StarkModel::Quadratic { w0, alpha } => {
                if !(w0 > 0.0 && alpha > 0.0) {
                    return Err(Error::Domain(format!(
                        "quadratic model needs w0 > 0 and alpha > 0 (w0 = {w0}, alpha = {alpha})"
                    )));
                }
                let f = (2.0 * w0 / alpha).sqrt();
                Ok(vec![-f, f])
            }
        }
    }

    /// Cycle-averaged energy of state |2>, i.e. the n = 0 sideband energy.
    pub fn mean_energy2(&self, drive: &FieldDrive) -> f64 {
        match *self {
            StarkModel::Linear { w0, k } => w0 - k * drive.f_static,
            StarkModel::Quadratic { w0, alpha } => {
                let fe2 = drive.f_static * drive.f_static + 0.5 * drive.f_rf * drive.f_rf;
                w0 - 0.5 * alpha * fe2
            }
        }
    }

    /// Arguments `(x, y)` of the (generalized) Bessel amplitude for `drive`.
    pub fn bessel_args(&self, drive: &FieldDrive) -> (f64, f64) {
        match *self {
            StarkModel::Linear { k, .. } => (k * drive.f_rf / drive.omega, 0.0),
            StarkModel::Quadratic { alpha, .. } => (
                alpha * drive.f_rf * drive.f_static / drive.omega,
                alpha * drive.f_rf * drive.f_rf / (8.0 * drive.omega),
            ),
        }
    }
}

/// Stark model plus the bare avoided-crossing width `omega0 = 2<2|V|1>` (rad/us).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoupledSystem {
    pub stark: StarkModel,
    pub omega0: f64,
}

impl CoupledSystem {
    /// `omega0 = 0` is accepted so that uncoupled runs can be expressed.
    pub fn new(stark: StarkModel, omega0: f64) -> Result<Self> {
        if !(omega0.is_finite() && omega0 >= 0.0) {
            return Err(Error::Domain(format!(
                "coupling must be finite and >= 0, got {omega0}"
            )));
        }
        Ok(Self { stark, omega0 })
    }

    /// Off-diagonal element `V = omega0 / 2`.
    pub fn half_gap(&self) -> f64 {
        0.5 * self.omega0
    }
}

/// Parameter sets taken from the measured 41d+49s / 42p+49p system and
/// the illustrative linear case.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// W0 = 25.15 MHz, alpha = 347.04 MHz/(V/cm)^2.
    LeftResonance,
    /// W0 = 25.15 MHz, alpha = 297.40 MHz/(V/cm)^2.
    RightResonance,
    /// W0 = 25 MHz, k = 60 MHz/(V/cm).
    Fig2Linear,
}

impl Preset {
    pub const ALL: [Preset; 3] = [
        Preset::LeftResonance,
        Preset::RightResonance,
        Preset::Fig2Linear,
    ];

    pub fn model(self) -> StarkModel {
        match self {
            Preset::LeftResonance => StarkModel::Quadratic {
                w0: mhz(25.15),
                alpha: mhz(347.04),
            },
            Preset::RightResonance => StarkModel::Quadratic {
                w0: mhz(25.15),
                alpha: mhz(297.40),
            },
            Preset::Fig2Linear => StarkModel::Linear {
                w0: mhz(25.0),
                k: mhz(60.0),
            },
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Preset::LeftResonance => "left-resonance",
            Preset::RightResonance => "right-resonance",
            Preset::Fig2Linear => "fig2-linear",
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown preset '{s}'")))
    }
}
