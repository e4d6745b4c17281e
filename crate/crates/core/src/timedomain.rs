//! Direct integration of the driven two-level Schrodinger equation,
//!
//! ```text
//! i dT1/dt = W1(t) T1 + (omega0/2) T2
//! i dT2/dt = W2(t) T2 + (omega0/2) T1
//! ```
//!
//! with a fixed-step fourth-order Runge-Kutta scheme in the lab frame.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{CoupledSystem, FieldDrive};

/// Largest allowed step as a fraction of the RF period.
pub const MAX_STEP_FRACTION: f64 = 1.0 / 1000.0;
/// Default step as a fraction of the RF period.
pub const DEFAULT_STEP_FRACTION: f64 = 1.0 / 4096.0;
/// Default bound on `|pop1 + pop2 - 1|`.
pub const NORM_DRIFT_LIMIT: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InitialState {
    #[default]
    State1,
    State2,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolveOptions {
    /// RF phase at `t = 0`: the field is `F_s + F_rf cos(omega t + phase)`.
    pub phase: f64,
    /// Constant added to both diabatic energies (rad/us).
    pub energy_offset: f64,
    /// Record every `sample_every`-th step (the initial state is always kept).
    pub sample_every: usize,
    pub drift_limit: f64,
}

impl Default for EvolveOptions {
    fn default() -> Self {
        Self {
            phase: 0.0,
            energy_offset: 0.0,
            sample_every: 1,
            drift_limit: NORM_DRIFT_LIMIT,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionResult {
    pub times: Vec<f64>,
    pub pop1: Vec<f64>,
    pub pop2: Vec<f64>,
    /// `max |pop1 + pop2 - 1|` over every step, sampled or not.
    pub norm_drift: f64,
}

pub fn default_step(drive: &FieldDrive) -> f64 {
    drive.period() * DEFAULT_STEP_FRACTION
}

/// Integrates from `t = 0` to `t_end` with steps no longer than `dt`.
///
/// The run is split into `ceil(t_end / dt)` equal steps, so `t_end` is hit
/// exactly.
pub fn evolve(
    system: &CoupledSystem,
    drive: &FieldDrive,
    t_end: f64,
    dt: f64,
    initial: InitialState,
    opts: &EvolveOptions,
) -> Result<EvolutionResult> {
    let max_dt = drive.period() * MAX_STEP_FRACTION;
    if !(dt > 0.0 && dt <= max_dt * (1.0 + 1e-12)) {
        return Err(Error::Domain(format!(
            "step {dt} us outside (0, period/1000 = {max_dt}] us"
        )));
    }
    if !(t_end > 0.0 && t_end.is_finite()) {
        return Err(Error::Domain(format!("end time must be > 0, got {t_end}")));
    }
    let steps = (t_end / dt - 1e-9).ceil().max(1.0) as usize;
    let h = t_end / steps as f64;
    let every = opts.sample_every.max(1);

    let v = system.half_gap();
    let c = opts.energy_offset;
    let model = system.stark;
    let (fs, frf, w, ph) = (drive.f_static, drive.f_rf, drive.omega, opts.phase);
    let w1 = model.energy1(0.0) + c;
    let rhs = |t: f64, y: [Complex64; 2]| -> [Complex64; 2] {
        let w2 = model.energy2(fs + frf * (w * t + ph).cos()) + c;
        let mi = Complex64::new(0.0, -1.0);
        [mi * (w1 * y[0] + v * y[1]), mi * (w2 * y[1] + v * y[0])]
    };

    let mut y = match initial {
        InitialState::State1 => [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        InitialState::State2 => [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
    };
    let cap = steps / every + 2;
    let mut out = EvolutionResult {
        times: Vec::with_capacity(cap),
        pop1: Vec::with_capacity(cap),
        pop2: Vec::with_capacity(cap),
        norm_drift: 0.0,
    };
    let record = |out: &mut EvolutionResult, t: f64, y: &[Complex64; 2]| {
        out.times.push(t);
        out.pop1.push(y[0].norm_sqr());
        out.pop2.push(y[1].norm_sqr());
    };
    record(&mut out, 0.0, &y);

    let axpy = |y: &[Complex64; 2], k: &[Complex64; 2], s: f64| [y[0] + k[0] * s, y[1] + k[1] * s];
    for i in 0..steps {
        let t = i as f64 * h;
        let k1 = rhs(t, y);
        let k2 = rhs(t + 0.5 * h, axpy(&y, &k1, 0.5 * h));
        let k3 = rhs(t + 0.5 * h, axpy(&y, &k2, 0.5 * h));
        let k4 = rhs(t + h, axpy(&y, &k3, h));
        for j in 0..2 {
            y[j] += (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]) * (h / 6.0);
        }
        let drift = (y[0].norm_sqr() + y[1].norm_sqr() - 1.0).abs();
        out.norm_drift = out.norm_drift.max(drift);
        if (i + 1) % every == 0 || i + 1 == steps {
            let t_rec = if i + 1 == steps {
                t_end
            } else {
                (i + 1) as f64 * h
            };
            record(&mut out, t_rec, &y);
        }
    }
    if out.norm_drift > opts.drift_limit {
        return Err(Error::StepSize {
            drift: out.norm_drift,
            limit: opts.drift_limit,
            dt: h,
        });
    }
    Ok(out)
}

/// Populations at whole RF periods `t = m T`, `m = 0..=periods`, using
/// `steps_per_period` steps per period.
pub fn stroboscopic(
    system: &CoupledSystem,
    drive: &FieldDrive,
    periods: usize,
    steps_per_period: usize,
    initial: InitialState,
    opts: &EvolveOptions,
) -> Result<EvolutionResult> {
    let period = drive.period();
    let opts = EvolveOptions {
        sample_every: steps_per_period,
        ..*opts
    };
    evolve(
        system,
        drive,
        periods as f64 * period,
        period / steps_per_period as f64,
        initial,
        &opts,
    )
}

/// Largest pointwise population difference between runs at `dt` and
/// `dt / 2`, compared at the times of the coarse run.
pub fn convergence_check(
    system: &CoupledSystem,
    drive: &FieldDrive,
    t_end: f64,
    dt: f64,
    initial: InitialState,
    opts: &EvolveOptions,
) -> Result<f64> {
    let every = opts.sample_every.max(1);
    let coarse = evolve(system, drive, t_end, dt, initial, opts)?;
    let fine_opts = EvolveOptions {
        sample_every: 2 * every,
        ..*opts
    };
    let fine = evolve(system, drive, t_end, 0.5 * dt, initial, &fine_opts)?;
    let worst = coarse
        .pop2
        .iter()
        .zip(&fine.pop2)
        .chain(coarse.pop1.iter().zip(&fine.pop1))
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    Ok(worst)
}
