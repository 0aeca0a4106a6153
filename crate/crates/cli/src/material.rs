//! Material model files: a JSON or TOML record selected by `kind`.
//!
//! ```toml
//! kind = "lorentz"
//! omega_p = 0.5
//! omega_0 = 1.0
//! gamma = 0.1
//! ```
//!
//! Tabulated files list `samples = [[ω, ε_R, ε_I], ...]`. An optional
//! `unit_scale` multiplies every frequency in the file (and `gamma`) to bring
//! it into natural units.

use std::path::Path;

use dispersive_core::dispersion::DispersionModel;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum MaterialSpec {
    Vacuum,
    Lorentz {
        omega_p: f64,
        omega_0: f64,
        gamma: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        unit_scale: Option<f64>,
    },
    Drude {
        omega_p: f64,
        gamma: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        unit_scale: Option<f64>,
    },
    Tabulated {
        samples: Vec<[f64; 3]>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        unit_scale: Option<f64>,
    },
}

impl MaterialSpec {
    pub fn lorentz(omega_p: f64, omega_0: f64, gamma: f64) -> Self {
        MaterialSpec::Lorentz {
            omega_p,
            omega_0,
            gamma,
            unit_scale: None,
        }
    }

    fn scale(&self) -> f64 {
        match self {
            MaterialSpec::Vacuum => 1.0,
            MaterialSpec::Lorentz { unit_scale, .. }
            | MaterialSpec::Drude { unit_scale, .. }
            | MaterialSpec::Tabulated { unit_scale, .. } => unit_scale.unwrap_or(1.0),
        }
    }

    pub fn build(&self) -> dispersive_core::Result<DispersionModel> {
        let s = self.scale();
        if !(s > 0.0 && s.is_finite()) {
            return Err(dispersive_core::Error::Validation {
                field: "unit_scale",
                reason: "must be positive".into(),
            });
        }
        match self {
            MaterialSpec::Vacuum => Ok(DispersionModel::vacuum()),
            MaterialSpec::Lorentz {
                omega_p,
                omega_0,
                gamma,
                ..
            } => DispersionModel::lorentz(omega_p * s, omega_0 * s, gamma * s),
            MaterialSpec::Drude { omega_p, gamma, .. } => DispersionModel::drude(omega_p * s, gamma * s),
            MaterialSpec::Tabulated { samples, .. } => {
                let rows: Vec<(f64, f64, f64)> = samples.iter().map(|r| (r[0] * s, r[1], r[2])).collect();
                DispersionModel::tabulated(&rows)
            }
        }
    }

    /// Lorentz resonance and damping in natural units, if the model has one.
    pub fn oscillator(&self) -> Option<(f64, f64)> {
        match self {
            MaterialSpec::Lorentz { omega_0, gamma, .. } => Some((omega_0 * self.scale(), gamma * self.scale())),
            _ => None,
        }
    }
}

/// Parse a material file; the format follows the extension (`.toml`,
/// otherwise JSON).
pub fn load_material(path: &Path) -> CliResult<MaterialSpec> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    let fail = |reason: String| CliError::Material {
        path: path.to_path_buf(),
        reason,
    };
    let spec: MaterialSpec = if path.extension().is_some_and(|e| e == "toml") {
        toml::from_str(&text).map_err(|e| fail(e.message().to_string()))?
    } else {
        serde_json::from_str(&text).map_err(|e| fail(e.to_string()))?
    };
    spec.build().map_err(|e| fail(e.to_string()))?;
    Ok(spec)
}
