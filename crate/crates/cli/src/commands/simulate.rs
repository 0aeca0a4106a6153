use dispersive_core::sed::{
    energy_from_spectrum, ForceSpectrum, LangevinSampler, McEstimate, OscillatorParams, SimulationConfig,
    TrajectoryEnsemble,
};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::output::Report;

/// Oscillator parameters and time grid implied by the configuration.
pub fn oscillator_setup(config: &RunConfig) -> CliResult<(OscillatorParams, SimulationConfig)> {
    let sim = &config.simulation;
    let from_model = config.material.oscillator();
    let omega0 = sim.omega_0.or(from_model.map(|m| m.0)).ok_or_else(|| {
        CliError::Config("simulation.omega_0 is required unless the material is a Lorentz oscillator".into())
    })?;
    let gamma = sim.gamma.or(from_model.map(|m| m.1)).ok_or_else(|| {
        CliError::Config("simulation.gamma is required unless the material is a Lorentz oscillator".into())
    })?;
    let cutoff = sim.cutoff.unwrap_or(50.0 * omega0);
    let params = OscillatorParams::new(sim.mass, omega0, gamma, cutoff)?;
    let dt = sim.dt.unwrap_or(0.25 / cutoff);
    // Autocorrelation probes one natural period apart.
    let lag = (2.0 * std::f64::consts::PI / omega0 / dt).round() as usize;
    Ok((params, SimulationConfig::new(dt, sim.steps, sim.seed).with_lag_steps(lag)))
}

/// Run the ensemble in parallel; summaries stay in trajectory order so the
/// result does not depend on the thread count.
pub fn run_ensemble(
    params: &OscillatorParams,
    spectrum: &ForceSpectrum,
    sim: &SimulationConfig,
    traj: usize,
) -> CliResult<TrajectoryEnsemble> {
    let sampler = LangevinSampler::new(params, spectrum, sim)?;
    let summaries = (0..traj as u64).into_par_iter().map(|i| sampler.summary(i)).collect();
    Ok(TrajectoryEnsemble::from_summaries(summaries))
}

fn record(name: &str, e: McEstimate, target: f64) -> Map<String, Value> {
    let mut r = Map::new();
    r.insert("estimator".into(), json!(name));
    r.insert("value".into(), json!(e.value));
    r.insert("std_error".into(), json!(e.std_error));
    r.insert("n".into(), json!(e.n));
    r.insert("analytic_target".into(), json!(target));
    r.insert("sigmas".into(), json!(e.sigmas_from(target)));
    r
}

/// Langevin ensemble estimates against their stationary targets.
pub fn simulate(config: &RunConfig) -> CliResult<Report> {
    let (params, sim) = oscillator_setup(config)?;
    let spectrum = ForceSpectrum::quantum(config.temperature)?;
    let ensemble = run_ensemble(&params, &spectrum, &sim, config.simulation.traj)?;
    let target = energy_from_spectrum(&params, &spectrum)?;
    Ok(Report::Records(vec![
        record("energy", ensemble.energy(), target.total()),
        record("kinetic", ensemble.kinetic(), target.kinetic),
        record("potential", ensemble.potential(), target.potential),
        record("power_balance", ensemble.power_balance(), 0.0),
        record("stationarity", ensemble.stationarity(), 0.0),
    ]))
}
