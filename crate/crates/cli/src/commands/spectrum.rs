use dispersive_core::dispersion::DispersionModel;
use dispersive_core::qed::spectral_density;
use dispersive_core::thermal::ThermalState;
use dispersive_core::units::C;

use super::sweep;
use crate::config::RunConfig;
use crate::error::CliResult;
use crate::output::{Report, Table};

/// Optical response and spectral energy density across the band. `v_g` and
/// `ρ` are `NaN` where they are undefined (absorbing or anomalous).
pub fn spectrum(config: &RunConfig) -> CliResult<Report> {
    let model = config.material.build()?;
    let state = ThermalState::new(config.temperature)?;
    let rows = sweep(&config.band.grid(), |w| row(&model, &state, w))?;
    Ok(Report::Table(Table {
        columns: vec!["omega", "eps_r", "eps_i", "n_r", "n_i", "vg_over_c", "rho"],
        rows,
    }))
}

fn row(model: &DispersionModel, state: &ThermalState, w: f64) -> CliResult<Vec<f64>> {
    let r = model.response(w)?;
    let vg = r.group_velocity.map_or(f64::NAN, |v| v / C);
    let rho = spectral_density(&r, state).map_or(f64::NAN, |d| if d.anomalous { f64::NAN } else { d.total() });
    Ok(vec![w, r.epsilon.re, r.epsilon.im, r.n_r(), r.n_i(), vg, rho])
}
