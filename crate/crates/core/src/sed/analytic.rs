//! Quadrature oracles for the Langevin oscillator.

use num_traits::Float;

use super::{ForceSpectrum, OscillatorParams};
use crate::math::Quadrature;
use crate::thermal::ThermalState;
use crate::units::{HBAR, PI};
use crate::{Error, Result};

/// Stationary energy of the three-dimensional oscillator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorEnergy {
    pub zero_point: f64,
    pub thermal: f64,
}

impl OscillatorEnergy {
    pub fn total(&self) -> f64 {
        self.zero_point + self.thermal
    }
}

fn breaks(params: &OscillatorParams, hi: f64) -> alloc::vec::Vec<f64> {
    let (w0, g) = (params.omega0, params.gamma.max(1e-12));
    let mut points = alloc::vec![0.0];
    for m in [-20.0, -5.0, -1.0, 0.0, 1.0, 5.0, 20.0] {
        let w = w0 + m * g;
        if w > 0.0 && w < hi {
            points.push(w);
        }
    }
    let mut w = 10.0 * w0;
    while w < hi {
        points.push(w);
        w *= 10.0;
    }
    points.push(hi);
    points.sort_by(|a, b| a.total_cmp(b));
    points.dedup();
    points
}

/// `(3γ/π) ∫₀^{ω_c} ω(ω₀² + ω²)[N(ω) + ½] / [(ω₀² - ω²)² + γ²ω²] dω`
/// with `ħ = 1`, split into the `½` and `N` parts.
pub fn oscillator_energy_analytic(params: &OscillatorParams, state: &ThermalState) -> Result<OscillatorEnergy> {
    params.validate()?;
    let quad = Quadrature::with_rel_tol(1e-12).max_panels(20_000);
    let points = breaks(params, params.cutoff);
    let w02 = params.omega0 * params.omega0;
    let pre = 3.0 * HBAR * params.gamma / PI;
    let zero_point = pre
        * quad
            .integrate_with_breaks(
                |w| 0.5 * w * (w02 + w * w) / params.response_denominator(w),
                &points,
            )?
            .value;
    let thermal = if state.temperature() == 0.0 {
        0.0
    } else {
        pre * quad
            .abs_tol(1e-300)
            .integrate_with_breaks(
                |w| state.omega_occupation(w) * (w02 + w * w) / params.response_denominator(w),
                &points,
            )?
            .value
    };
    Ok(OscillatorEnergy { zero_point, thermal })
}

/// Large-cutoff closed form of the zero-point part,
/// `(3/π) ω₁ cos⁻¹(γ/2ω₀) + (3γ/2π) ln(ω_c/ω₀)`.
pub fn zero_point_energy_closed_form(params: &OscillatorParams) -> f64 {
    let w1 = params.shifted_frequency();
    3.0 * HBAR / PI * w1 * (params.gamma / (2.0 * params.omega0)).acos()
        + 3.0 * HBAR * params.gamma / (2.0 * PI) * (params.cutoff / params.omega0).ln()
}

/// Kinetic and potential energy of all three components for an arbitrary
/// force spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumEnergy {
    pub kinetic: f64,
    pub potential: f64,
}

impl SpectrumEnergy {
    pub fn total(&self) -> f64 {
        self.kinetic + self.potential
    }
}

/// `(3/2m) ∫ S_F(ω) {ω², ω₀²} / |ω₀² - ω² - iγω|² dω` over `(0, ω_c)`.
pub fn energy_from_spectrum(params: &OscillatorParams, spectrum: &ForceSpectrum) -> Result<SpectrumEnergy> {
    params.validate()?;
    let quad = Quadrature::with_rel_tol(1e-12).abs_tol(1e-300).max_panels(20_000);
    let points = breaks(params, params.cutoff);
    let pre = 1.5 / params.mass;
    let kinetic = quad.integrate_with_breaks(
        |w| spectrum.density(params, w) * w * w / params.response_denominator(w),
        &points,
    )?;
    let w02 = params.omega0 * params.omega0;
    let potential = quad.integrate_with_breaks(
        |w| spectrum.density(params, w) * w02 / params.response_denominator(w),
        &points,
    )?;
    Ok(SpectrumEnergy {
        kinetic: pre * kinetic.value,
        potential: pre * potential.value,
    })
}

fn check_lag(params: &OscillatorParams, tau: f64) -> Result<()> {
    params.validate()?;
    if !(params.gamma > 0.0) {
        return Err(Error::invalid("gamma", "commutator envelope needs γ > 0"));
    }
    if !(tau.abs() < 50.0 / params.gamma) {
        return Err(Error::invalid("tau", "need |τ| < 50/γ"));
    }
    Ok(())
}

/// `[cos ω₁τ - (γ/2ω₁) sin ω₁|τ|] e^{-γ|τ|/2}`: the equal-time commutator
/// envelope of the damped oscillator, equal to one at `τ = 0`.
pub fn commutator_envelope(params: &OscillatorParams, tau: f64) -> Result<f64> {
    check_lag(params, tau)?;
    let w1 = params.shifted_frequency();
    let t = tau.abs();
    Ok(((w1 * t).cos() - params.gamma / (2.0 * w1) * (w1 * t).sin()) * (-0.5 * params.gamma * t).exp())
}

/// `(2γ/π) ∫₀^∞ ω² cos(ωτ) / [(ω₀² - ω²)² + γ²ω²] dω` by quadrature.
///
/// The slowly decaying `1/(ω² + ω₀²)` part is removed and added back through
/// its Fourier integral `(π/2ω₀) e^{-ω₀|τ|}`; the remainder falls as `ω⁻⁴`
/// and is integrated to `ω = 1000 ω₀` on panels one period of `cos ωτ` wide,
/// plus its asymptotic tail at `τ = 0`.
pub fn commutator_envelope_quadrature(params: &OscillatorParams, tau: f64) -> Result<f64> {
    check_lag(params, tau)?;
    let (w0, g) = (params.omega0, params.gamma);
    let w02 = w0 * w0;
    let upper = 1000.0 * w0;
    let t = tau.abs();
    let mut points = breaks(params, upper);
    if t > 0.0 {
        let period = 2.0 * PI / t;
        let mut w = period;
        while w < upper {
            points.push(w);
            w += period;
        }
        points.sort_by(|a, b| a.total_cmp(b));
        points.dedup();
    }
    let remainder = |w: f64| {
        let w2 = w * w;
        let d = params.response_denominator(w);
        // ω²/D - 1/(ω² + ω₀²) over a common denominator.
        let numerator = w2 * (w2 + w02) - d;
        numerator / (d * (w2 + w02)) * (w * t).cos()
    };
    let body = Quadrature::with_rel_tol(1e-12)
        .abs_tol(1e-13)
        .max_panels(200_000)
        .integrate_with_breaks(remainder, &points)?;
    let subtracted = PI / (2.0 * w0) * (-w0 * t).exp();
    // Beyond the upper limit the remainder is (3ω₀² - γ²)/ω⁴; with τ > 0 the
    // oscillating tail is below (ω₀/upper)⁴/τ and is dropped.
    let tail = if t == 0.0 {
        (3.0 * w02 - g * g) / (3.0 * upper.powi(3))
    } else {
        0.0
    };
    Ok(2.0 * g / PI * (body.value + subtracted + tail))
}
