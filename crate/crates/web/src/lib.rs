//! WebAssembly bindings for the browser demo. The page passes plain
//! numbers in lab units (MHz, V/cm) and gets flat `Float64Array`s back;
//! drawing happens in JavaScript.

use floquet_lzs::grid::one_worker;
use floquet_lzs::lzs::{lzs_map, LzsMode, StartSegment};
use floquet_lzs::units::{mhz, to_mhz};
use floquet_lzs::{floquet, Axis, CoupledSystem, FieldDrive, FieldGrid, Preset};
use wasm_bindgen::prelude::*;

/// Upper edge of both map axes, V/cm.
pub const MAP_FIELD_MAX: f64 = 0.8;
/// Largest map side accepted from the page.
pub const MAX_MAP_STEPS: usize = 400;

fn system(preset: &str, omega0_mhz: f64) -> Result<CoupledSystem, String> {
    let p: Preset = preset
        .parse()
        .map_err(|e: floquet_lzs::Error| e.to_string())?;
    CoupledSystem::new(p.model(), mhz(omega0_mhz)).map_err(|e| e.to_string())
}

fn square_grid(steps: usize) -> Result<FieldGrid, String> {
    if !(2..=MAX_MAP_STEPS).contains(&steps) {
        return Err(format!("map size must be 2..={MAX_MAP_STEPS}, got {steps}"));
    }
    let axis = Axis::new(0.0, MAP_FIELD_MAX, steps).map_err(|e| e.to_string())?;
    Ok(FieldGrid::new(axis, axis))
}

/// Sideband spectrum as `[n, energy_mhz, population]` triples, keeping
/// sidebands above `1e-6` population.
pub fn spectrum_triples(
    preset: &str,
    omega_mhz: f64,
    f_static: f64,
    f_rf: f64,
) -> Result<Vec<f64>, String> {
    let model = system(preset, 0.0)?.stark;
    let drive = FieldDrive::new(f_static, f_rf, mhz(omega_mhz)).map_err(|e| e.to_string())?;
    let spec = floquet::spectrum(&model, &drive);
    Ok(spec
        .populated(1e-6)
        .flat_map(|s| [s.n as f64, to_mhz(s.energy), s.population()])
        .collect())
}

/// Interaction strength over `[0, 0.8]^2` V/cm, row-major with `F_rf`
/// as the slow index, normalized to its maximum.
pub fn resonance_values(
    preset: &str,
    omega_mhz: f64,
    omega0_mhz: f64,
    steps: usize,
) -> Result<Vec<f64>, String> {
    let sys = system(preset, omega0_mhz)?;
    let grid = square_grid(steps)?;
    let map = floquet::resonance_map(
        &sys,
        mhz(omega_mhz),
        &grid,
        floquet::default_linewidth(),
        one_worker(),
    )
    .map_err(|e| e.to_string())?;
    Ok(normalized(map.values))
}

/// `|b>` population after `n_cycles` over `[0, 0.8]^2` V/cm, row-major
/// with `F_rf` as the slow index; forbidden points are 0.
pub fn lzs_values(
    preset: &str,
    omega_mhz: f64,
    n_cycles: u32,
    steps: usize,
) -> Result<Vec<f64>, String> {
    let sys = system(preset, 0.1)?;
    let grid = square_grid(steps)?;
    let map = lzs_map(
        &sys,
        mhz(omega_mhz),
        &grid,
        n_cycles,
        StartSegment::FieldMaximum,
        LzsMode::Exact,
        one_worker(),
    )
    .map_err(|e| e.to_string())?;
    Ok(map.values.iter().map(|p| p.p_b).collect())
}

fn normalized(mut v: Vec<f64>) -> Vec<f64> {
    let top = v.iter().copied().fold(0.0, f64::max);
    if top > 0.0 {
        v.iter_mut().for_each(|x| *x /= top);
    }
    v
}

#[wasm_bindgen]
pub fn spectrum(
    preset: &str,
    omega_mhz: f64,
    f_static: f64,
    f_rf: f64,
) -> Result<Vec<f64>, JsError> {
    spectrum_triples(preset, omega_mhz, f_static, f_rf).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn resonance_map(
    preset: &str,
    omega_mhz: f64,
    omega0_mhz: f64,
    steps: usize,
) -> Result<Vec<f64>, JsError> {
    resonance_values(preset, omega_mhz, omega0_mhz, steps).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn lzs_population_map(
    preset: &str,
    omega_mhz: f64,
    n_cycles: u32,
    steps: usize,
) -> Result<Vec<f64>, JsError> {
    lzs_values(preset, omega_mhz, n_cycles, steps).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn map_field_max() -> f64 {
    MAP_FIELD_MAX
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spectrum_is_normalized() {
        let t = spectrum_triples("fig2-linear", 8.0, 0.2, 0.3).unwrap();
        assert_eq!(t.len() % 3, 0);
        let total: f64 = t.chunks(3).map(|c| c[2]).sum();
        assert!((total - 1.0).abs() < 1e-4);
        let single = spectrum_triples("left-resonance", 8.0, 0.3, 0.0).unwrap();
        assert_eq!(single.len(), 3);
        assert_eq!(single[0], 0.0);
    }

    #[test]
    fn maps_have_grid_shape() {
        let r = resonance_values("left-resonance", 8.0, 0.1, 30).unwrap();
        assert_eq!(r.len(), 900);
        assert_eq!(r.iter().copied().fold(0.0, f64::max), 1.0);
        let l = lzs_values("fig2-linear", 4.0, 3, 25).unwrap();
        assert_eq!(l.len(), 625);
        assert!(l.iter().all(|p| (0.0..=1.0).contains(p)));
        // F_rf = 0 row never reaches the crossing away from it.
        assert!(l[..25].iter().all(|&p| p == 0.0));
    }

    #[test]
    fn bad_input_is_reported() {
        assert!(spectrum_triples("nope", 8.0, 0.2, 0.3).is_err());
        assert!(spectrum_triples("fig2-linear", -1.0, 0.2, 0.3).is_err());
        assert!(resonance_values("left-resonance", 8.0, 0.1, 1).is_err());
        assert!(lzs_values("left-resonance", 8.0, 0, 10).is_err());
        assert!(lzs_values("left-resonance", 8.0, 3, MAX_MAP_STEPS + 1).is_err());
    }
}
