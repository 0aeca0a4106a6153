//! Run configuration: one TOML or JSON file plus command-line overrides.
//!
//! Flags win over the file, the file wins over defaults. The resolved
//! configuration (with the material record inlined) is hashed with SHA-256
//! and the hash goes into every report.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};
use crate::material::{load_material, MaterialSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BandConfig {
    pub omega_min: f64,
    pub omega_max: f64,
    pub n_points: usize,
    pub spacing: Spacing,
}

impl Default for BandConfig {
    fn default() -> Self {
        Self {
            omega_min: 0.1,
            omega_max: 3.0,
            n_points: 200,
            spacing: Spacing::Log,
        }
    }
}

impl BandConfig {
    pub fn grid(&self) -> Vec<f64> {
        match self.spacing {
            Spacing::Linear => dispersive_core::math::linear_grid(self.omega_min, self.omega_max, self.n_points),
            Spacing::Log => dispersive_core::math::log_grid(self.omega_min, self.omega_max, self.n_points),
        }
    }
}

/// Langevin oscillator run. Resonance and damping default to the material's
/// Lorentz parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimulationConfig {
    pub traj: usize,
    pub steps: usize,
    /// Defaults to `0.25/ω_c`.
    pub dt: Option<f64>,
    pub seed: u64,
    pub mass: f64,
    pub omega_0: Option<f64>,
    pub gamma: Option<f64>,
    /// Defaults to `50 ω₀`.
    pub cutoff: Option<f64>,
}

impl Default for SimulationConfig {
    fn default() -> Self {
        Self {
            traj: 1000,
            steps: 32767,
            dt: None,
            seed: 0,
            mass: 1.0,
            omega_0: None,
            gamma: None,
            cutoff: None,
        }
    }
}

/// Driven-oscillator ledger run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LedgerConfig {
    /// Drive frequency.
    pub frequency: f64,
    pub e_amplitude: f64,
    pub t_end: f64,
    /// Steps per period of the faster of drive and resonance.
    pub steps_per_period: f64,
    /// Width of the erf switch-on; 0 means none for damped media and 40
    /// for lossless ones.
    pub ramp_width: f64,
}

impl Default for LedgerConfig {
    fn default() -> Self {
        Self {
            frequency: 0.5,
            e_amplitude: 1.0,
            t_end: 500.0,
            steps_per_period: 128.0,
            ramp_width: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub path: Option<PathBuf>,
    /// Defaults to the extension of `path`, else CSV for sweeps and JSON
    /// for reports.
    pub format: Option<Format>,
}

/// Contents of a configuration file.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FileConfig {
    pub material: Option<PathBuf>,
    pub band: BandConfig,
    pub temperature: f64,
    /// Cutoff length as a multiple of `c/ω`.
    pub regularization: f64,
    pub simulation: SimulationConfig,
    pub ledger: LedgerConfig,
    pub output: OutputConfig,
}

/// Flags that override the file.
#[derive(Debug, Clone, Default, clap::Args)]
pub struct Overrides {
    /// Configuration file (TOML or JSON).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Material model file (TOML or JSON).
    #[arg(long, global = true)]
    pub model: Option<PathBuf>,
    #[arg(long, global = true)]
    pub omega_min: Option<f64>,
    #[arg(long, global = true)]
    pub omega_max: Option<f64>,
    #[arg(long, global = true)]
    pub points: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub spacing: Option<Spacing>,
    /// Temperature in natural units.
    #[arg(long = "temp", global = true)]
    pub temperature: Option<f64>,
    /// Cutoff length in units of c/ω.
    #[arg(long, global = true)]
    pub reg_scale: Option<f64>,
    #[arg(long, global = true)]
    pub traj: Option<usize>,
    #[arg(long, global = true)]
    pub steps: Option<usize>,
    #[arg(long, global = true)]
    pub dt: Option<f64>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Drive frequency of the ledger run.
    #[arg(long, global = true)]
    pub drive_omega: Option<f64>,
    /// Duration of the ledger run.
    #[arg(long, global = true)]
    pub t_end: Option<f64>,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

/// Fully resolved configuration of one run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub material: MaterialSpec,
    pub band: BandConfig,
    pub temperature: f64,
    pub regularization: f64,
    pub simulation: SimulationConfig,
    pub ledger: LedgerConfig,
    pub output: OutputConfig,
}

fn read_file_config(path: &Path) -> CliResult<FileConfig> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    let parsed = if path.extension().is_some_and(|e| e == "json") {
        serde_json::from_str(&text).map_err(|e| e.to_string())
    } else {
        toml::from_str(&text).map_err(|e| e.message().to_string())
    };
    parsed.map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

impl RunConfig {
    pub fn resolve(command: &str, flags: &Overrides) -> CliResult<Self> {
        let (mut file, base) = match &flags.config {
            Some(p) => (read_file_config(p)?, p.parent().map(Path::to_path_buf)),
            None => (FileConfig::default(), None),
        };
        // Material paths in a config file are relative to that file.
        if let (Some(m), Some(dir)) = (&file.material, &base) {
            if m.is_relative() {
                file.material = Some(dir.join(m));
            }
        }
        let material_path = flags.model.clone().or(file.material);
        let material = match &material_path {
            Some(p) => load_material(p)?,
            None => MaterialSpec::Vacuum,
        };
        let mut band = file.band;
        if let Some(v) = flags.omega_min {
            band.omega_min = v;
        }
        if let Some(v) = flags.omega_max {
            band.omega_max = v;
        }
        if let Some(v) = flags.points {
            band.n_points = v;
        }
        if let Some(v) = flags.spacing {
            band.spacing = v;
        }
        let mut simulation = file.simulation;
        if let Some(v) = flags.traj {
            simulation.traj = v;
        }
        if let Some(v) = flags.steps {
            simulation.steps = v;
        }
        if flags.dt.is_some() {
            simulation.dt = flags.dt;
        }
        if let Some(v) = flags.seed {
            simulation.seed = v;
        }
        let mut ledger = file.ledger;
        if let Some(v) = flags.drive_omega {
            ledger.frequency = v;
        }
        if let Some(v) = flags.t_end {
            ledger.t_end = v;
        }
        let mut output = file.output;
        if flags.out.is_some() {
            output.path = flags.out.clone();
        }
        if flags.format.is_some() {
            output.format = flags.format;
        }
        let regularization = flags.reg_scale.unwrap_or(if file.regularization > 0.0 {
            file.regularization
        } else {
            1e-4
        });
        let config = Self {
            command: command.to_string(),
            material,
            band,
            temperature: flags.temperature.unwrap_or(file.temperature),
            regularization,
            simulation,
            ledger,
            output,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> CliResult<()> {
        let bad = |m: &str| Err(CliError::Config(m.to_string()));
        let b = &self.band;
        if !(b.omega_min > 0.0 && b.omega_min.is_finite()) {
            return bad("band.omega_min must be positive");
        }
        if !(b.omega_max > b.omega_min && b.omega_max.is_finite()) {
            return bad("band.omega_max must exceed band.omega_min");
        }
        if b.n_points < 2 {
            return bad("band.n_points must be at least 2");
        }
        if !(self.temperature >= 0.0 && self.temperature.is_finite()) {
            return bad("temperature must be finite and non-negative");
        }
        if !(self.regularization > 0.0 && self.regularization < dispersive_core::absorbing::MAX_CUTOFF_RATIO) {
            return bad("regularization must lie in (0, 0.01)");
        }
        let s = &self.simulation;
        if s.traj == 0 {
            return bad("simulation.traj must be at least 1");
        }
        if s.steps == 0 {
            return bad("simulation.steps must be at least 1");
        }
        if let Some(dt) = s.dt {
            if !(dt > 0.0 && dt.is_finite()) {
                return bad("simulation.dt must be positive");
            }
        }
        let l = &self.ledger;
        if !(l.frequency > 0.0 && l.e_amplitude.is_finite() && l.t_end > 0.0 && l.steps_per_period >= 40.0) {
            return bad("ledger needs frequency > 0, t_end > 0 and steps_per_period >= 40");
        }
        if !(l.ramp_width >= 0.0) {
            return bad("ledger.ramp_width must be non-negative");
        }
        Ok(())
    }

    pub fn format(&self, default: Format) -> Format {
        self.output.format.unwrap_or_else(|| {
            match self.output.path.as_ref().and_then(|p| p.extension()).and_then(|e| e.to_str()) {
                Some("json") => Format::Json,
                Some("csv") => Format::Csv,
                _ => default,
            }
        })
    }

    /// SHA-256 of the canonical JSON form, output location excluded so that
    /// the same run written to two places carries the same hash.
    pub fn hash(&self) -> String {
        let mut copy = self.clone();
        copy.output = OutputConfig::default();
        let canonical = serde_json::to_vec(&copy).expect("config serializes");
        format!("{:x}", Sha256::digest(&canonical))
    }
}
