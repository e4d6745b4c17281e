//! Landau-Zener-Stuckelberg description of the driven crossing.
//!
//! Each RF cycle sweeps the diabatic levels through the crossing field(s).
//! A passage is a transfer matrix set by the local sweep rate; between
//! passages the amplitudes pick up the dynamical phase `+-1/2 int W2 dt`.
//! The product over one cycle, `S`, is unimodular, so `S^N` reduces to
//! Chebyshev polynomials of `xi = Tr S / 2`.
//!
//! Inside this module the two diabatic energies are written symmetrically,
//! `W_b = -W_a = W2 / 2`; populations are unaffected by the shift.

mod stokes;
mod transfer;

use std::f64::consts::PI;
use std::num::NonZeroUsize;

use num_complex::Complex64;

pub use stokes::{ln_gamma, stokes_phase, LzsParams};
pub use transfer::Transfer2x2;

use crate::error::{Error, Result};
use crate::floquet::BoundaryLine;
use crate::grid::{map_indexed, FieldGrid, GridMap};
use crate::model::{CoupledSystem, FieldDrive, StarkModel};

/// `|sin(omega t)|` below which a crossing counts as tangential.
pub const TANGENT_TOL: f64 = 1e-8;

/// Sign of the crossing field that is passed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossingEvent {
    /// us, in `[0, period)`.
    pub t: f64,
    /// V/cm.
    pub field: f64,
    /// `|dW2/dt|` at the crossing, rad/us^2.
    pub slope: f64,
    /// `W_b - W_a` increases through the crossing.
    pub rising: bool,
    pub branch: Branch,
}

/// Crossings during one period starting at the field maximum (`t = 0`),
/// in time order.
///
/// For the quadratic shift with `F_s - F_rf < -Fq` both crossing fields are
/// passed, giving the branch sequence `+, -, -, +`.
pub fn crossings_per_cycle(
    system: &CoupledSystem,
    drive: &FieldDrive,
) -> Result<Vec<CrossingEvent>> {
    let model = &system.stark;
    let fields = model.crossing_fields()?;
    let mut events = Vec::with_capacity(4);
    for &fc in &fields {
        if drive.f_rf == 0.0 {
            if drive.f_static == fc {
                return Err(Error::DegenerateGeometry {
                    line: format!("F_s = {fc:.6} V/cm at F_rf = 0"),
                });
            }
            continue;
        }
        let c = (fc - drive.f_static) / drive.f_rf;
        if c.abs() > 1.0 + 1e-12 {
            continue;
        }
        let c = c.clamp(-1.0, 1.0);
        let s = (1.0 - c * c).sqrt();
        if s < TANGENT_TOL {
            let line = BoundaryLine {
                rf_sign: c.signum(),
                offset: fc,
            };
            return Err(Error::DegenerateGeometry {
                line: line.describe(),
            });
        }
        let phase = c.acos();
        for wt in [phase, 2.0 * PI - phase] {
            let t = wt / drive.omega;
            let df_dt = -drive.f_rf * drive.omega * wt.sin();
            let dw_dt = model.energy2_slope(fc) * df_dt;
            events.push(CrossingEvent {
                t,
                field: fc,
                slope: dw_dt.abs(),
                rising: dw_dt > 0.0,
                branch: if fc >= 0.0 {
                    Branch::Plus
                } else {
                    Branch::Minus
                },
            });
        }
    }
    events.sort_by(|a, b| a.t.total_cmp(&b.t));
    Ok(events)
}

/// `int W2 dt` from 0 to `t`, in closed form.
fn energy_antiderivative(model: &StarkModel, drive: &FieldDrive, t: f64) -> f64 {
    let w = drive.omega;
    let mean = model.mean_energy2(drive);
    match *model {
        StarkModel::Linear { k, .. } => mean * t - k * drive.f_rf * (w * t).sin() / w,
        StarkModel::Quadratic { alpha, .. } => {
            mean * t
                - alpha * drive.f_static * drive.f_rf * (w * t).sin() / w
                - alpha * drive.f_rf * drive.f_rf * (2.0 * w * t).sin() / (8.0 * w)
        }
    }
}

/// Dynamical phase `int_{t_i}^{t_j} W_b dt = 1/2 int W2 dt` (small-gap form).
pub fn phase_integral(system: &CoupledSystem, drive: &FieldDrive, t_i: f64, t_j: f64) -> f64 {
    let m = &system.stark;
    0.5 * (energy_antiderivative(m, drive, t_j) - energy_antiderivative(m, drive, t_i))
}

/// Where the cycle product starts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StartSegment {
    /// Before the first crossing after the field maximum.
    #[default]
    FieldMaximum,
    /// Before the first crossing after the field minimum.
    FieldMinimum,
    /// Before crossing `k` (cyclically) of [`crossings_per_cycle`].
    Rotation(usize),
}

impl StartSegment {
    fn offset(self, count: usize) -> usize {
        match self {
            StartSegment::FieldMaximum => 0,
            StartSegment::FieldMinimum => count / 2,
            StartSegment::Rotation(k) => k % count,
        }
    }
}

/// One crossing placed on the unrolled time axis of a cycle.
#[derive(Debug, Clone, Copy)]
struct Passage {
    t: f64,
    rising: bool,
    params: LzsParams,
}

/// Crossings of one cycle in the order they are met from `start`,
/// with times unrolled to be increasing.
fn passages(
    system: &CoupledSystem,
    drive: &FieldDrive,
    start: StartSegment,
) -> Result<Vec<Passage>> {
    let events = crossings_per_cycle(system, drive)?;
    if events.is_empty() {
        return Err(Error::Domain("no crossing during the RF cycle".into()));
    }
    let count = events.len();
    let first = start.offset(count);
    let period = drive.period();
    let v = system.half_gap();
    (0..count)
        .map(|j| {
            let idx = (first + j) % count;
            let e = &events[idx];
            let t = if idx < first { e.t + period } else { e.t };
            Ok(Passage {
                t,
                rising: e.rising,
                params: LzsParams::from_sweep(v, e.slope)?,
            })
        })
        .collect()
}

fn passage_matrix(p: &Passage) -> Transfer2x2 {
    let m = Transfer2x2::crossing(p.params.epsilon, p.params.phi);
    if p.rising {
        m.transpose()
    } else {
        m
    }
}

/// Evolution matrix over one RF period, from just before the first
/// crossing of `start` to just before its repetition.
pub fn one_cycle_matrix(
    system: &CoupledSystem,
    drive: &FieldDrive,
    start: StartSegment,
) -> Result<Transfer2x2> {
    let ps = passages(system, drive, start)?;
    let end = ps[0].t + drive.period();
    let mut s = Transfer2x2::IDENTITY;
    for (j, p) in ps.iter().enumerate() {
        let next = ps.get(j + 1).map_or(end, |q| q.t);
        s = Transfer2x2::free(phase_integral(system, drive, p.t, next)) * passage_matrix(p) * s;
    }
    Ok(s)
}

/// Chebyshev polynomial of the second kind `U_n(x)`, with `U_{-1} = 0`.
///
/// Uses `sin((n+1) t) / sin t` for `|x| < 1`, the hyperbolic form for
/// `|x| > 1`, and the three-term recurrence near `|x| = 1`.
pub fn chebyshev_u(n: i64, x: f64) -> f64 {
    if n < 0 {
        return 0.0;
    }
    let nf = (n + 1) as f64;
    if (1.0 - x.abs()).abs() < 1e-6 {
        let (mut prev, mut cur) = (0.0, 1.0);
        for _ in 0..n {
            let next = 2.0 * x * cur - prev;
            prev = cur;
            cur = next;
        }
        cur
    } else if x.abs() < 1.0 {
        let t = x.acos();
        (nf * t).sin() / t.sin()
    } else {
        let t = x.abs().acosh();
        let sign = if x < 0.0 && n % 2 == 1 { -1.0 } else { 1.0 };
        sign * (nf * t).sinh() / t.sinh()
    }
}

/// How `population_b` is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LzsMode {
    /// Full cycle matrix and `xi = Tr S / 2`.
    #[default]
    Exact,
    /// First order in `sqrt(epsilon)`: interference factor times
    /// `U_{N-1}(cos Theta)` with `Theta` the phase accumulated per cycle.
    NearDiabatic,
}

/// Population of `|b>` after `n_cycles` full cycles, starting in `|a>`.
pub fn population_b(
    system: &CoupledSystem,
    drive: &FieldDrive,
    n_cycles: u32,
    start: StartSegment,
    mode: LzsMode,
) -> Result<f64> {
    if n_cycles == 0 {
        return Err(Error::Domain("need at least one RF cycle".into()));
    }
    let n = n_cycles as i64;
    let p = match mode {
        LzsMode::Exact => {
            let s = one_cycle_matrix(system, drive, start)?;
            let xi = 0.5 * s.trace().re;
            s.m[1][0].norm_sqr() * chebyshev_u(n - 1, xi).powi(2)
        }
        LzsMode::NearDiabatic => {
            let theta = phase_integral(system, drive, 0.0, drive.period());
            interference_factor(system, drive, start)? * chebyshev_u(n - 1, theta.cos()).powi(2)
        }
    };
    Ok(p.clamp(0.0, 1.0))
}

fn interference_sum(
    system: &CoupledSystem,
    drive: &FieldDrive,
    start: StartSegment,
) -> Result<(Complex64, f64)> {
    let ps = passages(system, drive, start)?;
    let t0 = ps[0].t;
    let sum = ps
        .iter()
        .map(|p| {
            let LzsParams { epsilon, phi, .. } = p.params;
            let hop = if p.rising {
                Complex64::from_polar(1.0, -phi)
            } else {
                -Complex64::from_polar(1.0, phi)
            };
            hop * epsilon.sqrt()
                * Complex64::from_polar(1.0, 2.0 * phase_integral(system, drive, t0, p.t))
        })
        .sum();
    let span = phase_integral(system, drive, t0, ps.last().expect("non-empty").t);
    Ok((sum, span))
}

/// Stuckelberg factor `|S_21|^2` to first order in `sqrt(epsilon)`.
///
/// One crossing field: `4 eps sin^2(Theta_12 + phi)` from the field-maximum
/// start. Both crossing fields:
/// `4 [sqrt(eps+) sin(2 Theta_12 + Theta_23 + phi+) - sqrt(eps-) sin(Theta_23 - phi-)]^2`.
pub fn interference_factor(
    system: &CoupledSystem,
    drive: &FieldDrive,
    start: StartSegment,
) -> Result<f64> {
    Ok(interference_sum(system, drive, start)?.0.norm_sqr())
}

/// Signed square root of [`interference_factor`]: the first-order
/// transfer amplitude with the phase of the symmetric passage sequence
/// removed. Real for the field-maximum and field-minimum starts; for other
/// rotations the real part is returned.
pub fn interference_amplitude(
    system: &CoupledSystem,
    drive: &FieldDrive,
    start: StartSegment,
) -> Result<f64> {
    let (sum, span) = interference_sum(system, drive, start)?;
    Ok((Complex64::i() * Complex64::from_polar(1.0, -span) * sum).re)
}

/// Classification of a map point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    /// No crossing is reached.
    Forbidden = 0,
    Allowed = 1,
    /// A crossing is touched tangentially.
    Degenerate = 2,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LzsPoint {
    pub p_b: f64,
    pub region: Region,
}

/// Evaluates `population_b` at one drive; zero outside the allowed region.
pub fn lzs_point(
    system: &CoupledSystem,
    drive: &FieldDrive,
    n_cycles: u32,
    start: StartSegment,
    mode: LzsMode,
) -> Result<LzsPoint> {
    match crossings_per_cycle(system, drive) {
        Err(Error::DegenerateGeometry { .. }) => Ok(LzsPoint {
            p_b: 0.0,
            region: Region::Degenerate,
        }),
        Err(e) => Err(e),
        Ok(ev) if ev.is_empty() => Ok(LzsPoint {
            p_b: 0.0,
            region: Region::Forbidden,
        }),
        Ok(_) => Ok(LzsPoint {
            p_b: population_b(system, drive, n_cycles, start, mode)?,
            region: Region::Allowed,
        }),
    }
}

/// `|b>` population after `n_cycles` over the (F_s, F_rf) plane.
pub fn lzs_map(
    system: &CoupledSystem,
    omega: f64,
    grid: &FieldGrid,
    n_cycles: u32,
    start: StartSegment,
    mode: LzsMode,
    workers: NonZeroUsize,
) -> Result<GridMap<LzsPoint>> {
    FieldDrive::new(grid.f_static.min, grid.f_rf.min, omega)?;
    system.stark.crossing_fields()?;
    if n_cycles == 0 {
        return Err(Error::Domain("need at least one RF cycle".into()));
    }
    let values = map_indexed(grid.len(), workers, |idx| {
        let (fs, frf) = grid.point(idx);
        let drive = FieldDrive {
            f_static: fs,
            f_rf: frf,
            omega,
        };
        lzs_point(system, &drive, n_cycles, start, mode)
    });
    let values = values.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(GridMap {
        grid: *grid,
        values,
    })
}

/// Smallest Airy parameter `|W2(t_e)| (2 / |W2''(t_e)|)^(1/3)` over the two
/// field extrema `omega t_e in {0, pi}`.
///
/// Where it drops below about 1, a crossing lies within the curvature
/// region of an energy turning point and the independent-passage picture
/// breaks down.
pub fn turning_point_clearance(system: &CoupledSystem, drive: &FieldDrive) -> f64 {
    let m = &system.stark;
    let w2 = drive.omega * drive.omega;
    [1.0, -1.0]
        .into_iter()
        .map(|c: f64| {
            let f = drive.f_static + c * drive.f_rf;
            let curvature = m.energy2_slope(f) * (-c * drive.f_rf * w2);
            if curvature == 0.0 {
                f64::INFINITY
            } else {
                m.energy2(f).abs() * (2.0 / curvature.abs()).cbrt()
            }
        })
        .fold(f64::INFINITY, f64::min)
}
