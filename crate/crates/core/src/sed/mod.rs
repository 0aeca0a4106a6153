//! Stochastic realizations of the quantum-Langevin picture: a bound charge
//! driven by a colored random force whose spectrum obeys the
//! fluctuation-dissipation relation, and noise-polarization sources whose
//! fields reproduce the electric spectrum of an absorbing medium.
//!
//! Everything random is generated from a root seed and an index, so any
//! trajectory or realization can be regenerated on its own and in any order.

mod analytic;
mod langevin;
mod noise;

pub use analytic::{
    commutator_envelope, commutator_envelope_quadrature, energy_from_spectrum, oscillator_energy_analytic,
    zero_point_energy_closed_form, OscillatorEnergy, SpectrumEnergy,
};
pub use langevin::{
    simulate_oscillator, simulate_trajectory, summarize_trajectory, LangevinSampler, McEstimate, SimulationConfig,
    Trajectory, TrajectoryEnsemble, TrajectorySummary,
};
pub use noise::{
    reconstruct_field_spectrum, sample_noise_polarization, FieldSpectrumEstimate, NoiseEnsemble, NoiseGrid,
    NoiseRealization, RadialGrid, SourceCell,
};

use num_traits::Float;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::thermal::ThermalState;
use crate::units::PI;
use crate::{Error, Result};

/// Bound charge coupled to a reservoir: `mẍ + mγẋ + mω₀²x = F_L(t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorParams {
    pub mass: f64,
    pub omega0: f64,
    pub gamma: f64,
    /// Hard upper cutoff of the reservoir spectrum.
    pub cutoff: f64,
}

impl OscillatorParams {
    /// Validated parameters: underdamped (`γ < 2ω₀`) with `ω_c > 10 ω₀`.
    pub fn new(mass: f64, omega0: f64, gamma: f64, cutoff: f64) -> Result<Self> {
        let p = Self {
            mass,
            omega0,
            gamma,
            cutoff,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for (field, v) in [
            ("mass", self.mass),
            ("omega_0", self.omega0),
            ("cutoff", self.cutoff),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::invalid(field, "must be positive and finite"));
            }
        }
        if !(self.gamma >= 0.0 && self.gamma.is_finite()) {
            return Err(Error::invalid("gamma", "must be finite and non-negative"));
        }
        if !(self.gamma < 2.0 * self.omega0) {
            return Err(Error::invalid("gamma", "must be below 2ω₀ (underdamped)"));
        }
        if !(self.cutoff > 10.0 * self.omega0) {
            return Err(Error::invalid("cutoff", "must exceed 10ω₀"));
        }
        Ok(())
    }

    /// `ω₁ = (ω₀² - γ²/4)^{1/2}`.
    pub fn shifted_frequency(&self) -> f64 {
        (self.omega0 * self.omega0 - 0.25 * self.gamma * self.gamma).sqrt()
    }

    /// `|ω₀² - ω² - iγω|²`.
    pub(crate) fn response_denominator(&self, omega: f64) -> f64 {
        let re = self.omega0 * self.omega0 - omega * omega;
        let im = self.gamma * omega;
        re * re + im * im
    }
}

/// One-sided power spectrum of each Cartesian component of the random force.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ForceSpectrum {
    /// `(mγ/π) ω coth(ω/2T)`, zero-point fluctuations included.
    Quantum(ThermalState),
    /// `2mγT/π`, the high-temperature limit.
    Classical { temperature: f64 },
    /// No force.
    Silent,
}

impl ForceSpectrum {
    pub fn quantum(temperature: f64) -> Result<Self> {
        Ok(ForceSpectrum::Quantum(ThermalState::new(temperature)?))
    }

    pub fn classical(temperature: f64) -> Result<Self> {
        ThermalState::new(temperature)?;
        Ok(ForceSpectrum::Classical { temperature })
    }

    /// Spectral density at `ω`; zero outside `(0, ω_c)`.
    pub fn density(&self, params: &OscillatorParams, omega: f64) -> f64 {
        if !(omega > 0.0 && omega < params.cutoff) {
            return 0.0;
        }
        let base = params.mass * params.gamma / PI;
        match self {
            ForceSpectrum::Quantum(state) => {
                if state.temperature() == 0.0 {
                    base * omega
                } else {
                    // ω coth(ω/2T) = ω + 2ωN(ω), finite as ω → 0.
                    base * (omega + 2.0 * state.omega_occupation(omega))
                }
            }
            ForceSpectrum::Classical { temperature } => 2.0 * base * temperature,
            ForceSpectrum::Silent => 0.0,
        }
    }
}

/// `S_F(ω) = (mγ/π) ω coth(ω/2T)` per Cartesian component, zero for
/// `ω ≥ ω_c`.
pub fn langevin_force_spectrum(params: &OscillatorParams, temperature: f64, omega: f64) -> Result<f64> {
    Ok(ForceSpectrum::quantum(temperature)?.density(params, omega))
}

/// Generator for stream `index` under `seed`.
pub(crate) fn stream_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_validation() {
        assert!(OscillatorParams::new(1.0, 1.0, 0.1, 50.0).is_ok());
        assert!(OscillatorParams::new(1.0, 1.0, 2.5, 50.0).is_err());
        assert!(OscillatorParams::new(1.0, 1.0, 0.1, 5.0).is_err());
        assert!(OscillatorParams::new(0.0, 1.0, 0.1, 50.0).is_err());
    }

    #[test]
    fn spectrum_cutoff_and_limits() {
        let p = OscillatorParams::new(2.0, 1.0, 0.1, 50.0).unwrap();
        let q = ForceSpectrum::quantum(0.0).unwrap();
        assert_eq!(q.density(&p, 50.0), 0.0);
        assert!((q.density(&p, 3.0) - 2.0 * 0.1 / PI * 3.0).abs() < 1e-15);
        let hot = ForceSpectrum::quantum(1e4).unwrap();
        let white = ForceSpectrum::classical(1e4).unwrap();
        assert!((hot.density(&p, 0.01) / white.density(&p, 0.01) - 1.0).abs() < 1e-9);
    }
}
