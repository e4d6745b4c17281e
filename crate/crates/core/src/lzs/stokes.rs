use std::f64::consts::{FRAC_PI_4, PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
// Published g = 7, n = 9 coefficients, kept digit for digit.
#[allow(clippy::excessive_precision)]
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln Gamma(z)` for `Re z >= 1/2` by the Lanczos approximation
/// (g = 7, nine terms), continuous in `Im z`.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    debug_assert!(z.re >= 0.5, "Lanczos form used outside Re z >= 1/2");
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS_COEF[0], 0.0);
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * TAU.ln() + (z + 0.5) * t.ln() - t + x.ln()
}

/// Stokes phase `pi/4 + arg Gamma(1 - i delta) + delta (ln delta - 1)`.
pub fn stokes_phase(delta: f64) -> Result<f64> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::Domain(format!(
            "adiabaticity must be > 0, got {delta}"
        )));
    }
    let arg = ln_gamma(Complex64::new(1.0, -delta)).im;
    Ok(FRAC_PI_4 + arg + delta * (delta.ln() - 1.0))
}

/// Adiabaticity, transfer probability and Stokes phase of one crossing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LzsParams {
    pub delta: f64,
    pub epsilon: f64,
    pub phi: f64,
}

impl LzsParams {
    /// `delta = 0` (no coupling) gives `epsilon = 0`, `phi = pi/4`.
    pub fn from_adiabaticity(delta: f64) -> Result<Self> {
        if delta == 0.0 {
            return Ok(Self {
                delta,
                epsilon: 0.0,
                phi: FRAC_PI_4,
            });
        }
        Ok(Self {
            delta,
            epsilon: 1.0 - (-2.0 * PI * delta).exp(),
            phi: stokes_phase(delta)?,
        })
    }

    /// `delta = V^2 / |d(W_b - W_a)/dt|` for half-gap `v` and sweep rate `slope`.
    pub fn from_sweep(v: f64, slope: f64) -> Result<Self> {
        if slope.is_nan() || slope <= 0.0 {
            return Err(Error::Domain(format!(
                "sweep rate must be > 0, got {slope}"
            )));
        }
        Self::from_adiabaticity(v * v / slope)
    }
}
