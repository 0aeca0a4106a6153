//! One module per subcommand. Each builds a [`Report`] from a resolved
//! [`RunConfig`]; writing it out is left to the caller.

mod energy;
mod kk;
mod ledger;
mod simulate;
mod spectrum;
mod verify;

pub use energy::energy;
pub use kk::kk_check;
pub use ledger::ledger;
pub use simulate::{oscillator_setup, run_ensemble, simulate};
pub use spectrum::spectrum;
pub use verify::verify;

use rayon::prelude::*;

use dispersive_core::dispersion::DispersionModel;

use crate::config::BandConfig;
use crate::error::CliResult;

/// Evaluate `f` at every grid point in parallel, keeping grid order.
pub(crate) fn sweep<T, F>(grid: &[f64], f: F) -> CliResult<Vec<T>>
where
    T: Send,
    F: Fn(f64) -> CliResult<T> + Sync,
{
    grid.par_iter().map(|&w| f(w)).collect()
}

/// Log grid wide enough to hold the absorption of a model centered on the
/// band: three decades either side of it, 4000 points at least.
/// Grid for the Kramers-Kronig residual: the span of a tabulated model, or
/// a wide log grid around the band for a parametric one.
pub(crate) fn kramers_kronig_grid(model: &DispersionModel, band: &BandConfig) -> Vec<f64> {
    match model.permittivity.range() {
        Some((lo, hi)) => dispersive_core::math::log_grid(lo, hi, 4000),
        None => causality_grid(band.omega_min, band.omega_max),
    }
}

fn causality_grid(lo: f64, hi: f64) -> Vec<f64> {
    let (lo, hi) = (lo.min(1.0) * 1e-3, hi.max(1.0) * 1e3);
    let decades = (hi / lo).log10();
    let points = ((decades / 6.0) * 4000.0).ceil().max(4000.0) as usize;
    dispersive_core::math::log_grid(lo, hi, points)
}
