//! Two-level Rydberg pairs driven through a Stark-tuned resonance by static
//! plus RF electric fields: Floquet sidebands, the classical limit,
//! Landau-Zener-Stuckelberg interference, direct time evolution, and
//! ensemble-averaged interaction signals.

pub mod besselx;
pub mod classical;
pub mod ensemble;
pub mod error;
pub mod floquet;
pub mod grid;
pub mod lzs;
pub mod model;
pub mod timedomain;
pub mod units;

pub use error::{Error, Result};
pub use grid::{Axis, FieldGrid, GridMap};
pub use model::{CoupledSystem, FieldDrive, Preset, StarkKind, StarkModel};
