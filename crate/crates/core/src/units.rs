//! Unit conventions.
//!
//! Energies and frequencies are angular frequencies in rad/us everywhere
//! inside the crate. Fields are in V/cm and times in us. User-facing values
//! (CLI, CSV, config) are ordinary MHz; convert with the helpers below.

use std::f64::consts::TAU;

/// MHz (cycles per us) to rad/us.
#[inline]
pub fn mhz(f: f64) -> f64 {
    TAU * f
}

/// rad/us to MHz.
#[inline]
pub fn to_mhz(w: f64) -> f64 {
    w / TAU
}

/// Period in us of a drive with angular frequency `omega` (rad/us).
#[inline]
pub fn period(omega: f64) -> f64 {
    TAU / omega
}
