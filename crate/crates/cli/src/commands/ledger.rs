use dispersive_core::classical::{simulate_ledger, Drive, Ramp};

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::output::{Report, Table};

/// Energy ledger of the medium's oscillators under a monochromatic
/// plane-wave drive, one row per time step.
pub fn ledger(config: &RunConfig) -> CliResult<Report> {
    let model = config.material.build()?;
    let oscillator = model
        .permittivity
        .oscillator()
        .ok_or_else(|| CliError::Config("ledger needs a Lorentz or Drude material".into()))?;
    let l = &config.ledger;
    let mut drive = Drive::plane_wave(&model, l.e_amplitude, l.frequency)?;
    if oscillator.damping == 0.0 || l.ramp_width > 0.0 {
        drive = drive.with_ramp(Ramp::new(if l.ramp_width > 0.0 { l.ramp_width } else { 40.0 }));
    }
    let fastest = l.frequency.max(oscillator.resonance);
    let dt = 2.0 * std::f64::consts::PI / fastest / l.steps_per_period;
    let samples = simulate_ledger(&oscillator, &drive, l.t_end, dt)?;
    Ok(Report::Table(Table {
        columns: vec!["t", "kinetic", "potential", "field", "dissipated_rate", "drive_power"],
        rows: samples
            .iter()
            .map(|s| vec![s.t, s.kinetic, s.potential, s.field, s.dissipated_rate, s.drive_power])
            .collect(),
    }))
}
