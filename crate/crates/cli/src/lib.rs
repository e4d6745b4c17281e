//! `flzs`: CSV front end for the floquet-lzs kernels.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use config::RunConfig;
pub use error::{CliError, Result};

#[derive(Debug, Parser)]
#[command(
    name = "flzs",
    version,
    about = "Floquet sidebands, LZS maps and pair ensembles of RF-driven Rydberg atoms"
)]
pub struct Cli {
    /// TOML config, or a CSV written by an earlier run (its echoed config is reused).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// RNG seed for the ensemble sampler.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads; never changes the output.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Output directory.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Sideband spectra of state 2, one file per RF amplitude.
    Sidebands,
    /// Floquet interaction strength over the (F_s, F_rf) plane.
    ResonanceMap,
    /// LZS population of |b> after N cycles over the (F_s, F_rf) plane.
    LzsMap,
    /// Moving-averaged sidebands against the classical density, one file per omega.
    Classical,
    /// Direct RK4 integration of the two-level system.
    Evolve,
    /// Ensemble pair-state fraction along resonant mixing-angle arcs.
    Ensemble,
    /// Generalized Bessel J_n(x, y) by series and by quadrature.
    #[command(allow_negative_numbers = true)]
    Genbessel { n: i64, x: f64, y: f64 },
}

/// Merges file config and flags, then resolves defaults.
pub fn load_config(cli: &Cli) -> Result<RunConfig> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(w) = cli.workers {
        cfg.workers = Some(w);
    }
    if let Some(out) = &cli.out {
        cfg.out = Some(out.clone());
    }
    cfg.resolve()
}

/// Runs one command, returning what it printed or the files it wrote.
pub fn run(cli: &Cli) -> Result<String> {
    if let Command::Genbessel { n, x, y } = cli.command {
        return commands::genbessel(n, x, y);
    }
    let cfg = load_config(cli)?;
    cfg.workers()?;
    let out = cfg.out.clone().unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&out).map_err(|source| CliError::Io {
        path: out.clone(),
        source,
    })?;
    let files = match cli.command {
        Command::Sidebands => commands::sidebands(&cfg, &out),
        Command::ResonanceMap => commands::resonance_map(&cfg, &out),
        Command::LzsMap => commands::lzs_map(&cfg, &out),
        Command::Classical => commands::classical(&cfg, &out),
        Command::Evolve => commands::evolve_cmd(&cfg, &out),
        Command::Ensemble => commands::ensemble(&cfg, &out),
        Command::Genbessel { .. } => unreachable!(),
    }?;
    Ok(files.iter().map(|p| format!("{}\n", p.display())).collect())
}
