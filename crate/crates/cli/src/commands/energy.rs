use dispersive_core::absorbing::{energy_breakdown, index_form_spectrum, RegularizationConfig};
use dispersive_core::thermal::ThermalState;
use dispersive_core::units::C;

use super::sweep;
use crate::config::RunConfig;
use crate::error::CliResult;
use crate::output::{Report, Table};

/// Energy spectral density of an absorbing medium in both closed forms,
/// with the rate and cutoff terms that cancel. At `T > 0` every column is
/// scaled by `coth(ω/2T)`.
pub fn energy(config: &RunConfig) -> CliResult<Report> {
    let model = config.material.build()?;
    model.require_nonmagnetic()?;
    let state = ThermalState::new(config.temperature)?;
    let rows = sweep(&config.band.grid(), |w| {
        let reg = RegularizationConfig::lorentzian(config.regularization * C / w);
        let b = energy_breakdown(&model, w, &reg)?;
        let form_b = index_form_spectrum(&model, w)?;
        let weight = state.coth(w);
        let rel_diff = (b.total - form_b).abs() / form_b.abs();
        Ok(vec![
            w,
            weight * b.total,
            weight * form_b,
            rel_diff,
            weight * b.w1_rate,
            weight * b.w2_rate,
            weight * b.cutoff_residual,
        ])
    })?;
    Ok(Report::Table(Table {
        columns: vec!["omega", "w_form_a", "w_form_b", "rel_diff", "w1_rate", "w2_rate", "cutoff_residual"],
        rows,
    }))
}
