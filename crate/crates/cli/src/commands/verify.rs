use std::f64::consts::PI;

use dispersive_core::absorbing::{
    energy_breakdown, green_norm_integral, green_norm_quadrature, index_form_spectrum, RegularizationConfig,
};
use dispersive_core::dispersion::{kramers_kronig_residual, refractive_index, DispersionModel, KRAMERS_KRONIG_TOLERANCE};
use dispersive_core::qed::thermal_band_density;
use dispersive_core::sed::{commutator_envelope, commutator_envelope_quadrature, OscillatorParams};
use dispersive_core::thermal::ThermalState;
use dispersive_core::units::C;
use serde_json::{json, Map, Value};

use super::{kramers_kronig_grid, sweep};
use crate::config::RunConfig;
use crate::error::CliResult;
use crate::output::Report;

/// Outcome of one check: worst error against its tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub max_error: f64,
    pub tolerance: f64,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, max_error: f64, tolerance: f64) -> Self {
        Self {
            name,
            max_error,
            tolerance,
            detail: String::new(),
        }
    }

    fn failed(name: &'static str, tolerance: f64, err: impl std::fmt::Display) -> Self {
        Self {
            name,
            max_error: f64::NAN,
            tolerance,
            detail: err.to_string(),
        }
    }

    pub fn pass(&self) -> bool {
        self.max_error <= self.tolerance
    }

    fn record(&self) -> Map<String, Value> {
        let mut r = Map::new();
        r.insert("check_name".into(), json!(self.name));
        r.insert("max_error".into(), json!(self.max_error));
        r.insert("tolerance".into(), json!(self.tolerance));
        r.insert("pass".into(), json!(self.pass()));
        r.insert("detail".into(), json!(self.detail));
        r
    }
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / b.abs().max(a.abs())
    }
}

fn worst(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, |m, v| if v.is_nan() || m.is_nan() { f64::NAN } else { m.max(v) })
}

/// Run a check body, turning an error into a failed record.
fn run(name: &'static str, tolerance: f64, body: impl FnOnce() -> CliResult<f64>) -> Check {
    match body() {
        Ok(e) => Check::new(name, e, tolerance),
        Err(e) => Check::failed(name, tolerance, e),
    }
}

fn response_checks(model: &DispersionModel, grid: &[f64]) -> Vec<Check> {
    let mut out = vec![
        run("reality", 0.0, || {
            Ok(worst(sweep(grid, |w| {
                Ok((model.epsilon(-w)? - model.epsilon(w)?.conj()).norm())
            })?))
        }),
        run("passivity", 0.0, || {
            Ok(worst(sweep(grid, |w| Ok((-model.epsilon(w)?.im).max(0.0)))?))
        }),
        run("index_reconstruction", 1e-12, || {
            Ok(worst(sweep(grid, |w| {
                let e = model.epsilon(w)?;
                let n = refractive_index(e)?;
                let scale = e.norm();
                Ok(((n.n_r * n.n_r - n.n_i * n.n_i - e.re).abs() / scale)
                    .max((2.0 * n.n_r * n.n_i - e.im).abs() / scale))
            })?))
        }),
    ];
    if model.is_lossless() {
        out.push(run("group_velocity", 1e-8, || {
            Ok(worst(sweep(grid, |w| {
                let analytic = model.d_omega_n_r(w)?;
                if analytic <= 0.0 {
                    // Anomalous window: no group velocity to compare.
                    return Ok(0.0);
                }
                let vg = model.group_velocity(w, DispersionModel::default_step(w))?;
                Ok(rel(C / vg, analytic))
            })?))
        }));
    }
    out
}

fn absorbing_checks(model: &DispersionModel, grid: &[f64], scale: f64) -> Vec<Check> {
    let reg = |w: f64, s: f64| RegularizationConfig::lorentzian(s * C / w);
    vec![
        run("energy_form_equivalence", 1e-9, || {
            Ok(worst(sweep(grid, |w| {
                Ok(rel(energy_breakdown(model, w, &reg(w, scale))?.total, index_form_spectrum(model, w)?))
            })?))
        }),
        run("secular_balance", 1e-12, || {
            Ok(worst(sweep(grid, |w| {
                let b = energy_breakdown(model, w, &reg(w, scale))?;
                Ok((b.w1_rate + b.w2_rate).abs() / b.w1_rate.abs().max(b.w2_rate.abs()))
            })?))
        }),
        run("cutoff_cancellation", 1e-10, || {
            Ok(worst(sweep(grid, |w| {
                let total = |s: f64| energy_breakdown(model, w, &reg(w, s)).map(|b| b.total);
                let middle = total(1e-4)?;
                Ok(rel(total(1e-5)?, middle).max(rel(total(1e-3)?, middle)))
            })?))
        }),
        run("green_norm_quadrature", 1e-8, || {
            Ok(worst(sweep(grid, |w| {
                let e = model.epsilon(w)?;
                Ok(rel(green_norm_quadrature(e, w)?, green_norm_integral(e, w)?))
            })?))
        }),
    ]
}

fn causality_check(model: &DispersionModel, config: &RunConfig) -> Check {
    run("kramers_kronig", KRAMERS_KRONIG_TOLERANCE, || {
        Ok(kramers_kronig_residual(model, &kramers_kronig_grid(model, &config.band))?.max_residual)
    })
}

fn planck_check(config: &RunConfig) -> Check {
    run("planck_closure", 1e-6, || {
        let t = if config.temperature > 0.0 { config.temperature } else { 1.0 };
        let u = thermal_band_density(&DispersionModel::vacuum(), &ThermalState::new(t)?, 0.0, 50.0 * t, 1e-10)?;
        Ok(rel(u, PI * PI * t.powi(4) / 15.0))
    })
}

fn commutator_check(omega0: f64, gamma: f64) -> Check {
    run("commutator_envelope", 1e-6, || {
        let p = OscillatorParams::new(1.0, omega0, gamma, 50.0 * omega0)?;
        let mut e = 0.0f64;
        for x in [0.0, 1.0, 5.0, 20.0] {
            let tau = x / omega0;
            e = e.max((commutator_envelope(&p, tau)? - commutator_envelope_quadrature(&p, tau)?).abs());
        }
        Ok(e)
    })
}

/// Every invariant that applies to the configured model over the band.
pub fn verify(config: &RunConfig) -> CliResult<(Report, bool)> {
    let model = config.material.build()?;
    let grid = config.band.grid();
    let mut checks = response_checks(&model, &grid);
    let absorbing = grid.iter().all(|&w| model.epsilon(w).is_ok_and(|e| e.im > 0.0));
    if absorbing && !model.is_magnetic() {
        checks.extend(absorbing_checks(&model, &grid, config.regularization));
    }
    if !model.is_lossless() || model.permittivity.is_vacuum() {
        checks.push(causality_check(&model, config));
    }
    checks.push(planck_check(config));
    if let Some((w0, g)) = config.material.oscillator() {
        if g > 0.0 && g < 2.0 * w0 {
            checks.push(commutator_check(w0, g));
        }
    }
    let all_pass = checks.iter().all(Check::pass);
    Ok((Report::Records(checks.iter().map(Check::record).collect()), all_pass))
}
