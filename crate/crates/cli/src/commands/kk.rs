use dispersive_core::dispersion::kramers_kronig_residual;
use serde_json::{json, Map, Value};

use super::kramers_kronig_grid;
use crate::config::RunConfig;
use crate::error::CliResult;
use crate::output::Report;

/// Kramers-Kronig residual over the span of a tabulated model, or over a
/// wide log grid around the band for a parametric one. Returns the report
/// and whether the model passed.
pub fn kk_check(config: &RunConfig) -> CliResult<(Report, bool)> {
    let model = config.material.build()?;
    let grid = kramers_kronig_grid(&model, &config.band);
    let r = kramers_kronig_residual(&model, &grid)?;
    let mut record = Map::<String, Value>::new();
    record.insert("check_name".into(), json!("kramers_kronig"));
    record.insert("max_residual".into(), json!(r.max_residual));
    record.insert("discretization_error".into(), json!(r.discretization_error));
    record.insert("tolerance".into(), json!(r.tolerance));
    record.insert("convergence_warning".into(), json!(r.convergence_warning));
    record.insert("non_causal".into(), json!(r.non_causal));
    Ok((Report::Records(vec![record]), !r.non_causal))
}
