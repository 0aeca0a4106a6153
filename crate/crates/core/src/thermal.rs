//! Thermal occupation numbers in natural units (`ħ = k_B = 1`).

use num_traits::Float;

use crate::{Error, Result};

/// Equilibrium state of the field and reservoir at temperature `T`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalState {
    temperature: f64,
}

impl ThermalState {
    pub fn new(temperature: f64) -> Result<Self> {
        if !(temperature >= 0.0) || !temperature.is_finite() {
            return Err(Error::invalid("temperature", "must be finite and non-negative"));
        }
        Ok(Self { temperature })
    }

    pub fn zero() -> Self {
        Self { temperature: 0.0 }
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    /// Bose-Einstein occupation `N(ω) = 1/(e^{ω/T} - 1)`; zero at `T = 0`.
    pub fn occupation(&self, omega: f64) -> f64 {
        if self.temperature == 0.0 || omega <= 0.0 {
            return if self.temperature == 0.0 { 0.0 } else { f64::INFINITY };
        }
        1.0 / (omega / self.temperature).exp_m1()
    }

    /// `ω N(ω)`, finite (→ T) as ω → 0.
    pub fn omega_occupation(&self, omega: f64) -> f64 {
        if self.temperature == 0.0 {
            return 0.0;
        }
        let x = omega / self.temperature;
        if x < 1e-8 {
            self.temperature * (1.0 - 0.5 * x)
        } else {
            omega / x.exp_m1()
        }
    }

    /// `N(ω) + 1/2`.
    pub fn half_plus_occupation(&self, omega: f64) -> f64 {
        0.5 + self.occupation(omega)
    }

    /// `coth(ω / 2T)`, equal to `1` at `T = 0`.
    pub fn coth(&self, omega: f64) -> f64 {
        if self.temperature == 0.0 {
            return 1.0;
        }
        let x = omega / (2.0 * self.temperature);
        1.0 / x.tanh()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coth_identity_pointwise() {
        let state = ThermalState::new(0.7).unwrap();
        for i in 1..200 {
            let w = i as f64 * 0.05;
            let lhs = 0.5 * state.coth(w);
            let rhs = state.half_plus_occupation(w);
            assert!((lhs - rhs).abs() <= 1e-14 * rhs.max(1.0), "{w}: {lhs} {rhs}");
        }
    }

    #[test]
    fn occupation_is_positive_and_decreasing() {
        let state = ThermalState::new(2.0).unwrap();
        let mut prev = f64::INFINITY;
        for i in 1..100 {
            let n = state.occupation(i as f64 * 0.1);
            assert!(n > 0.0 && n < prev);
            prev = n;
        }
        assert_eq!(ThermalState::zero().occupation(1.0), 0.0);
        assert!((state.omega_occupation(1e-12) - 2.0).abs() < 1e-9);
    }

    #[test]
    fn rejects_negative_temperature() {
        assert!(ThermalState::new(-1.0).is_err());
        assert!(ThermalState::new(f64::NAN).is_err());
    }
}
