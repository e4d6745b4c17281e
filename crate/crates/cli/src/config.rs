//! Run configuration: a TOML document with one table per concern. Every
//! field has a default, so an empty file (or no file) is a valid config.
//!
//! ```toml
//! seed = 2024
//!
//! [model]
//! preset = "left-resonance"   # or kind = "quadratic", w0_mhz, alpha_mhz (k_mhz for linear)
//! omega0_mhz = 0.1
//!
//! [drive]
//! omega_mhz = 8.0
//! f_static = 0.2
//! f_rf = 0.45
//! ```
//!
//! Frequencies are cyclic MHz, fields V/cm, times us.

use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use floquet_lzs::classical::AverageWindow;
use floquet_lzs::ensemble::PairGeometry;
use floquet_lzs::lzs::{LzsMode, StartSegment};
use floquet_lzs::timedomain::InitialState;
use floquet_lzs::units::mhz;
use floquet_lzs::{Axis, CoupledSystem, FieldDrive, FieldGrid, Preset, StarkModel};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

pub const ECHO_BEGIN: &str = "# config begin";
pub const ECHO_END: &str = "# config end";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    /// Worker threads; never echoed because it cannot change the output.
    #[serde(skip_serializing)]
    pub workers: Option<usize>,
    /// Output directory; overridden by `--out`.
    #[serde(skip_serializing)]
    pub out: Option<PathBuf>,
    pub model: ModelConfig,
    pub drive: DriveConfig,
    pub grid: GridConfig,
    pub sidebands: SidebandsConfig,
    pub resonance_map: ResonanceMapConfig,
    pub lzs: LzsConfig,
    pub classical: ClassicalConfig,
    pub evolve: EvolveConfig,
    pub ensemble: EnsembleConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 2024,
            workers: None,
            out: None,
            model: ModelConfig::default(),
            drive: DriveConfig::default(),
            grid: GridConfig::default(),
            sidebands: SidebandsConfig::default(),
            resonance_map: ResonanceMapConfig::default(),
            lzs: LzsConfig::default(),
            classical: ClassicalConfig::default(),
            evolve: EvolveConfig::default(),
            ensemble: EnsembleConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModelConfig {
    pub preset: Option<String>,
    /// `linear` or `quadratic` when no preset is named.
    pub kind: Option<String>,
    pub w0_mhz: Option<f64>,
    pub k_mhz: Option<f64>,
    pub alpha_mhz: Option<f64>,
    /// Bare coupling `omega0 / 2pi`.
    pub omega0_mhz: f64,
}

impl Default for ModelConfig {
    fn default() -> Self {
        Self {
            preset: None,
            kind: None,
            w0_mhz: None,
            k_mhz: None,
            alpha_mhz: None,
            omega0_mhz: 0.1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DriveConfig {
    pub omega_mhz: f64,
    pub f_static: f64,
    pub f_rf: f64,
}

impl Default for DriveConfig {
    fn default() -> Self {
        Self {
            omega_mhz: 8.0,
            f_static: 0.2,
            f_rf: 0.45,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxisConfig {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridConfig {
    pub f_static: AxisConfig,
    pub f_rf: AxisConfig,
}

impl Default for GridConfig {
    fn default() -> Self {
        let axis = AxisConfig {
            min: 0.0,
            max: 0.8,
            steps: 400,
        };
        Self {
            f_static: axis,
            f_rf: axis,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SidebandsConfig {
    /// One spectrum per RF amplitude; empty means `drive.f_rf` alone.
    pub f_rf: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ResonanceMapConfig {
    pub linewidth_mhz: f64,
}

impl Default for ResonanceMapConfig {
    fn default() -> Self {
        Self { linewidth_mhz: 0.2 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LzsConfig {
    pub n_cycles: u32,
    /// `field-maximum`, `field-minimum` or `rotation:<k>`.
    pub start: String,
    /// `exact` or `near-diabatic`.
    pub mode: String,
}

impl Default for LzsConfig {
    fn default() -> Self {
        Self {
            n_cycles: 3,
            start: "field-maximum".into(),
            mode: "exact".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ClassicalConfig {
    pub omegas_mhz: Vec<f64>,
    /// Moving-average span in MHz of sideband energy...
    pub window_mhz: Option<f64>,
    /// ...or a fixed sideband count; give one of the two.
    pub window_sidebands: Option<usize>,
}

impl Default for ClassicalConfig {
    fn default() -> Self {
        Self {
            omegas_mhz: vec![8.0, 2.0, 0.5, 0.25],
            window_mhz: Some(3.0),
            window_sidebands: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EvolveConfig {
    pub t_end_us: f64,
    pub steps_per_period: usize,
    pub sample_every: usize,
    /// `state1` or `state2`.
    pub initial: String,
    /// RF phase at t = 0 in radians.
    pub phase: f64,
    pub energy_offset_mhz: f64,
}

impl Default for EvolveConfig {
    fn default() -> Self {
        Self {
            t_end_us: 20.0,
            steps_per_period: 4096,
            sample_every: 64,
            initial: "state1".into(),
            phase: 0.0,
            energy_offset_mhz: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EnsembleConfig {
    pub count: usize,
    pub t_us: f64,
    pub orders: Vec<i64>,
    /// Mixing angles on an even grid over `[0, pi/2]`, endpoints included.
    pub theta_steps: usize,
    pub d_um: f64,
    pub sigma_long_um: f64,
    pub sigma_trans_um: f64,
    /// Dipole product in `(e a0)^2`.
    pub mu_product: f64,
    /// Multiplies every pair coupling (e.g. 0.01 for the weak limit).
    pub coupling_scale: f64,
    pub dump_pairs: bool,
}

impl Default for EnsembleConfig {
    fn default() -> Self {
        let g = PairGeometry::experiment();
        Self {
            count: 10_000,
            t_us: 20.0,
            orders: vec![-3, -2, -1, 0, 1, 2],
            theta_steps: 201,
            d_um: g.d,
            sigma_long_um: g.sigma_long,
            sigma_trans_um: g.sigma_trans,
            mu_product: g.mu_product,
            coupling_scale: 1.0,
            dump_pairs: false,
        }
    }
}

/// Subcommand families; decides which tables a config echo carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Section {
    Sidebands,
    ResonanceMap,
    LzsMap,
    Classical,
    Evolve,
    Ensemble,
}

impl Section {
    pub fn name(self) -> &'static str {
        match self {
            Section::Sidebands => "sidebands",
            Section::ResonanceMap => "resonance-map",
            Section::LzsMap => "lzs-map",
            Section::Classical => "classical",
            Section::Evolve => "evolve",
            Section::Ensemble => "ensemble",
        }
    }

    fn keys(self) -> &'static [&'static str] {
        match self {
            Section::Sidebands => &["model", "drive", "sidebands"],
            Section::ResonanceMap => &["model", "drive", "grid", "resonance_map"],
            Section::LzsMap => &["model", "drive", "grid", "lzs"],
            Section::Classical => &["model", "drive", "classical"],
            Section::Evolve => &["model", "drive", "evolve"],
            Section::Ensemble => &["seed", "model", "drive", "ensemble"],
        }
    }
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| bad(e.to_string()))
    }

    /// Reads a TOML file, or the echoed config block of a CSV written by
    /// a previous run.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| bad(format!("cannot read {}: {e}", path.display())))?;
        match extract_echo(&text) {
            Some(block) => Self::parse(&block),
            None => Self::parse(&text),
        }
    }

    /// Fills choices that defaults leave open so the echo is explicit.
    pub fn resolve(mut self) -> Result<Self> {
        let m = &self.model;
        let explicit =
            m.kind.is_some() || m.w0_mhz.is_some() || m.k_mhz.is_some() || m.alpha_mhz.is_some();
        if m.preset.is_none() && !explicit {
            self.model.preset = Some(Preset::LeftResonance.name().into());
        }
        if self.sidebands.f_rf.is_empty() {
            self.sidebands.f_rf = vec![self.drive.f_rf];
        }
        self.stark()?;
        Ok(self)
    }

    /// The config as TOML, restricted to the tables that affect `section`.
    pub fn echo(&self, section: Section) -> String {
        let full = toml::Table::try_from(self).expect("config serializes");
        let keep: toml::Table = full
            .into_iter()
            .filter(|(k, _)| section.keys().contains(&k.as_str()))
            .collect();
        toml::to_string(&keep).expect("table serializes")
    }

    pub fn workers(&self) -> Result<NonZeroUsize> {
        match self.workers {
            Some(w) => NonZeroUsize::new(w).ok_or_else(|| bad("workers must be >= 1")),
            None => Ok(std::thread::available_parallelism().unwrap_or(NonZeroUsize::MIN)),
        }
    }

    pub fn stark(&self) -> Result<StarkModel> {
        let m = &self.model;
        let explicit =
            m.kind.is_some() || m.w0_mhz.is_some() || m.k_mhz.is_some() || m.alpha_mhz.is_some();
        if let Some(name) = &m.preset {
            if explicit {
                return Err(bad(
                    "model: give either a preset or explicit parameters, not both",
                ));
            }
            return Preset::from_str(name).map(Preset::model).map_err(|_| {
                bad(format!(
                    "model: unknown preset '{name}' (left-resonance, right-resonance, fig2-linear)"
                ))
            });
        }
        let need =
            |v: Option<f64>, key: &str| v.ok_or_else(|| bad(format!("model: missing {key}")));
        let w0 = mhz(need(m.w0_mhz, "w0_mhz")?);
        match m.kind.as_deref() {
            Some("linear") => Ok(StarkModel::Linear {
                w0,
                k: mhz(need(m.k_mhz, "k_mhz")?),
            }),
            Some("quadratic") => Ok(StarkModel::Quadratic {
                w0,
                alpha: mhz(need(m.alpha_mhz, "alpha_mhz")?),
            }),
            Some(other) => Err(bad(format!(
                "model: kind must be linear or quadratic, got '{other}'"
            ))),
            None => Err(bad(
                "model: explicit parameters need kind = \"linear\" or \"quadratic\"",
            )),
        }
    }

    pub fn system(&self) -> Result<CoupledSystem> {
        Ok(CoupledSystem::new(
            self.stark()?,
            mhz(self.model.omega0_mhz),
        )?)
    }

    pub fn omega(&self) -> Result<f64> {
        let w = self.drive.omega_mhz;
        if !(w > 0.0 && w.is_finite()) {
            return Err(bad(format!("drive: omega_mhz must be > 0, got {w}")));
        }
        Ok(mhz(w))
    }

    pub fn drive(&self) -> Result<FieldDrive> {
        Ok(FieldDrive::new(
            self.drive.f_static,
            self.drive.f_rf,
            self.omega()?,
        )?)
    }

    pub fn grid(&self) -> Result<FieldGrid> {
        let axis = |a: AxisConfig, name: &str| {
            Axis::new(a.min, a.max, a.steps).map_err(|e| bad(format!("grid.{name}: {e}")))
        };
        Ok(FieldGrid::new(
            axis(self.grid.f_static, "f_static")?,
            axis(self.grid.f_rf, "f_rf")?,
        ))
    }

    pub fn start(&self) -> Result<StartSegment> {
        match self.lzs.start.as_str() {
            "field-maximum" => Ok(StartSegment::FieldMaximum),
            "field-minimum" => Ok(StartSegment::FieldMinimum),
            s => s
                .strip_prefix("rotation:")
                .and_then(|k| k.parse().ok())
                .map(StartSegment::Rotation)
                .ok_or_else(|| bad(format!("lzs.start: expected field-maximum, field-minimum or rotation:<k>, got '{s}'"))),
        }
    }

    pub fn mode(&self) -> Result<LzsMode> {
        match self.lzs.mode.as_str() {
            "exact" => Ok(LzsMode::Exact),
            "near-diabatic" => Ok(LzsMode::NearDiabatic),
            s => Err(bad(format!(
                "lzs.mode: expected exact or near-diabatic, got '{s}'"
            ))),
        }
    }

    pub fn window(&self) -> Result<AverageWindow> {
        match (self.classical.window_mhz, self.classical.window_sidebands) {
            (Some(e), None) if e > 0.0 => Ok(AverageWindow::Energy(mhz(e))),
            (None, Some(k)) if k > 0 => Ok(AverageWindow::Sidebands(k)),
            (Some(_), Some(_)) => Err(bad(
                "classical: give window_mhz or window_sidebands, not both",
            )),
            _ => Err(bad("classical: window must be positive")),
        }
    }

    pub fn initial(&self) -> Result<InitialState> {
        match self.evolve.initial.as_str() {
            "state1" => Ok(InitialState::State1),
            "state2" => Ok(InitialState::State2),
            s => Err(bad(format!(
                "evolve.initial: expected state1 or state2, got '{s}'"
            ))),
        }
    }

    pub fn geometry(&self) -> Result<PairGeometry> {
        let e = &self.ensemble;
        PairGeometry::new(e.d_um, e.sigma_long_um, e.sigma_trans_um, e.mu_product)
            .map_err(|err| bad(format!("ensemble: {err}")))
    }
}

/// Text between the echo markers with the `# ` prefix removed.
pub fn extract_echo(text: &str) -> Option<String> {
    let mut lines = text.lines().skip_while(|l| l.trim_end() != ECHO_BEGIN);
    lines.next()?;
    let mut block = String::new();
    for line in lines {
        if line.trim_end() == ECHO_END {
            return Some(block);
        }
        let body = line.strip_prefix('#')?;
        block.push_str(body.strip_prefix(' ').unwrap_or(body));
        block.push('\n');
    }
    None
}
