//! One function per subcommand. Each returns the files it wrote.

use std::f64::consts::FRAC_PI_2;
use std::path::{Path, PathBuf};

use floquet_lzs::besselx::{gen_bessel_integral, gen_bessel_sum, GenBesselArgs};
use floquet_lzs::ensemble::{mixing_angle_scan, sample_ensemble};
use floquet_lzs::timedomain::{evolve, EvolveOptions};
use floquet_lzs::units::{mhz, to_mhz};
use floquet_lzs::{classical, floquet, lzs, FieldDrive};

use crate::config::{RunConfig, Section};
use crate::error::{CliError, Result};
use crate::output::{list, CsvFile};

pub fn sidebands(cfg: &RunConfig, out: &Path) -> Result<Vec<PathBuf>> {
    let model = cfg.stark()?;
    let omega = cfg.omega()?;
    let mut written = Vec::new();
    for (i, &f_rf) in cfg.sidebands.f_rf.iter().enumerate() {
        let drive = FieldDrive::new(cfg.drive.f_static, f_rf, omega)?;
        let spec = floquet::spectrum(&model, &drive);
        let mut notes = vec![format!(
            "f_static: {} f_rf: {} omega_mhz: {}",
            drive.f_static, f_rf, cfg.drive.omega_mhz
        )];
        if f_rf > 0.0 {
            let asym = classical::energy_asymptotes(&model, &drive);
            notes.push(format!(
                "asymptotes_mhz: {}",
                list(asym.into_iter().map(to_mhz))
            ));
        }
        let mut csv = CsvFile::new(
            cfg,
            Section::Sidebands,
            &notes,
            &["n", "energy_mhz", "amplitude", "population"],
        );
        for s in &spec.sidebands {
            csv.row(&[&s.n, &to_mhz(s.energy), &s.amplitude, &s.population()]);
        }
        written.push(csv.write(out, &format!("sidebands_{i:02}_frf{f_rf}.csv"))?);
    }
    Ok(written)
}

pub fn resonance_map(cfg: &RunConfig, out: &Path) -> Result<Vec<PathBuf>> {
    let system = cfg.system()?;
    let linewidth = mhz(cfg.resonance_map.linewidth_mhz);
    let map = floquet::resonance_map(
        &system,
        cfg.omega()?,
        &cfg.grid()?,
        linewidth,
        cfg.workers()?,
    )?;
    let boundaries = floquet::classical_boundaries(&system)?;
    let notes = vec![
        "value: sum over n of Omega_n^2 L(detuning) in MHz^2 (Lorentzian L peak-normalized)"
            .to_string(),
        format!(
            "classical boundaries: {}",
            boundaries
                .iter()
                .map(|b| b.describe())
                .collect::<Vec<_>>()
                .join("; ")
        ),
    ];
    let mut csv = CsvFile::new(
        cfg,
        Section::ResonanceMap,
        &notes,
        &["f_s", "f_rf", "value"],
    );
    for ((fs, frf), v) in map.iter() {
        csv.row(&[&fs, &frf, &to_mhz(to_mhz(v))]);
    }
    Ok(vec![csv.write(out, "resonance_map.csv")?])
}

pub fn lzs_map(cfg: &RunConfig, out: &Path) -> Result<Vec<PathBuf>> {
    let system = cfg.system()?;
    let map = lzs::lzs_map(
        &system,
        cfg.omega()?,
        &cfg.grid()?,
        cfg.lzs.n_cycles,
        cfg.start()?,
        cfg.mode()?,
        cfg.workers()?,
    )?;
    let notes =
        vec!["allowed_flag: 0 forbidden, 1 allowed, 2 crossing touched tangentially".to_string()];
    let mut csv = CsvFile::new(
        cfg,
        Section::LzsMap,
        &notes,
        &["f_s", "f_rf", "p_b", "allowed_flag"],
    );
    for ((fs, frf), p) in map.iter() {
        csv.row(&[&fs, &frf, &p.p_b, &(p.region as u8)]);
    }
    Ok(vec![csv.write(out, "lzs_map.csv")?])
}

pub fn classical(cfg: &RunConfig, out: &Path) -> Result<Vec<PathBuf>> {
    let model = cfg.stark()?;
    let drive = cfg.drive()?;
    let omegas: Vec<f64> = cfg.classical.omegas_mhz.iter().map(|&w| mhz(w)).collect();
    let comparisons = classical::sideband_vs_classical(&model, &drive, &omegas, cfg.window()?)?;
    let mut written = Vec::new();
    for (c, w_mhz) in comparisons.iter().zip(&cfg.classical.omegas_mhz) {
        let dev = c
            .mean_relative_deviation()
            .map_or_else(|| "n/a".to_string(), |d| d.to_string());
        let notes = vec![
            format!("omega_mhz: {w_mhz} window_sidebands: {}", c.window),
            format!(
                "asymptotes_mhz: {}",
                list(c.asymptotes.iter().map(|&a| to_mhz(a)))
            ),
            format!("mean_relative_deviation: {dev}"),
            "classical_scaled: omega * P(W); inf within omega/2 of an asymptote".to_string(),
        ];
        let mut csv = CsvFile::new(
            cfg,
            Section::Classical,
            &notes,
            &["energy_mhz", "population", "classical_scaled", "moving_avg"],
        );
        for r in &c.rows {
            csv.row(&[
                &to_mhz(r.energy),
                &r.population,
                &r.classical_scaled,
                &r.moving_avg,
            ]);
        }
        written.push(csv.write(out, &format!("classical_omega{w_mhz}mhz.csv"))?);
    }
    Ok(written)
}

pub fn evolve_cmd(cfg: &RunConfig, out: &Path) -> Result<Vec<PathBuf>> {
    let system = cfg.system()?;
    let drive = cfg.drive()?;
    let e = &cfg.evolve;
    if e.steps_per_period == 0 {
        return Err(CliError::Config(
            "evolve.steps_per_period must be >= 1".into(),
        ));
    }
    let opts = EvolveOptions {
        phase: e.phase,
        energy_offset: mhz(e.energy_offset_mhz),
        sample_every: e.sample_every,
        ..Default::default()
    };
    let dt = drive.period() / e.steps_per_period as f64;
    let run = evolve(&system, &drive, e.t_end_us, dt, cfg.initial()?, &opts)?;
    let notes = vec![format!("norm_drift: {}", run.norm_drift)];
    let mut csv = CsvFile::new(cfg, Section::Evolve, &notes, &["t_us", "pop1", "pop2"]);
    for i in 0..run.times.len() {
        csv.row(&[&run.times[i], &run.pop1[i], &run.pop2[i]]);
    }
    Ok(vec![csv.write(out, "evolve.csv")?])
}

/// Even grid over `[0, pi/2]`, both ends included.
pub fn mixing_angles(steps: usize) -> Result<Vec<f64>> {
    if steps < 2 {
        return Err(CliError::Config("ensemble.theta_steps must be >= 2".into()));
    }
    let h = FRAC_PI_2 / (steps - 1) as f64;
    Ok((0..steps)
        .map(|i| {
            if i + 1 == steps {
                FRAC_PI_2
            } else {
                i as f64 * h
            }
        })
        .collect())
}

pub fn ensemble(cfg: &RunConfig, out: &Path) -> Result<Vec<PathBuf>> {
    let model = cfg.stark()?;
    let omega = cfg.omega()?;
    let e = &cfg.ensemble;
    let workers = cfg.workers()?;
    let mut pairs = sample_ensemble(cfg.geometry()?, e.count, cfg.seed, workers)?;
    if e.coupling_scale != 1.0 {
        if !(e.coupling_scale >= 0.0 && e.coupling_scale.is_finite()) {
            return Err(CliError::Config(
                "ensemble.coupling_scale must be >= 0".into(),
            ));
        }
        pairs = pairs.scaled(e.coupling_scale);
    }
    let thetas = mixing_angles(e.theta_steps)?;
    let mut written = Vec::new();
    for &n in &e.orders {
        let scan = mixing_angle_scan(&pairs, &model, omega, n, &thetas, e.t_us, workers)?;
        let onset = scan
            .onset_angle
            .map_or_else(|| "none".to_string(), |a| a.to_string());
        let notes = vec![
            format!("n: {n} f_eff: {}", scan.f_eff),
            format!(
                "classical boundary angles: {}",
                list(scan.boundary_angles.iter().copied())
            ),
            format!("onset angle: {onset}"),
        ];
        let mut csv = CsvFile::new(cfg, Section::Ensemble, &notes, &["theta_f", "pp_fraction"]);
        for r in &scan.rows {
            csv.row(&[&r.theta, &r.pp_fraction]);
        }
        written.push(csv.write(out, &format!("ensemble_n{n}.csv"))?);
    }
    if e.dump_pairs {
        let mut csv = CsvFile::new(
            cfg,
            Section::Ensemble,
            &[],
            &["x_um", "y_um", "z_um", "r_um", "vdd_mhz"],
        );
        for (p, v) in pairs.positions.iter().zip(&pairs.couplings) {
            let r = pairs.geometry.separation(*p);
            csv.row(&[&p[0], &p[1], &p[2], &r, &to_mhz(*v)]);
        }
        written.push(csv.write(out, "ensemble_pairs.csv")?);
    }
    Ok(written)
}

/// `n,x,y,sum,integral,abs_diff` as two CSV lines.
pub fn genbessel(n: i64, x: f64, y: f64) -> Result<String> {
    let args = GenBesselArgs::new(n, x, y);
    let sum = gen_bessel_sum(args);
    let integral = gen_bessel_integral(args)?;
    Ok(format!(
        "n,x,y,sum,integral,abs_diff\n{n},{x:?},{y:?},{sum:?},{integral:?},{:?}\n",
        (sum - integral).abs()
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genbessel_trivial_cases() {
        assert_eq!(
            genbessel(0, 0.0, 0.0).unwrap(),
            "n,x,y,sum,integral,abs_diff\n0,0.0,0.0,1.0,1.0,0.0\n"
        );
        let line = genbessel(1, 0.0, 5.0).unwrap();
        let f: Vec<f64> = line
            .lines()
            .nth(1)
            .unwrap()
            .split(',')
            .map(|s| s.parse().unwrap())
            .collect();
        assert!(f[3].abs() < 1e-12 && f[4].abs() < 1e-12 && f[5] < 1e-12);
    }

    #[test]
    fn angle_grid_ends() {
        let t = mixing_angles(201).unwrap();
        assert_eq!(t.len(), 201);
        assert_eq!(t[0], 0.0);
        assert_eq!(t[200], FRAC_PI_2);
        assert!(mixing_angles(1).is_err());
    }
}
