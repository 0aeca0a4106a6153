//! Classical energy accounting in a dispersive medium: the Poynting kernel,
//! the Brillouin density, quasi-monochromatic storage and heat, ensembles of
//! uncorrelated frequency components, and the time-domain ledger of a driven
//! oscillator medium.

mod ledger;

pub use ledger::{cycle_average, simulate_ledger, Drive, LedgerAverage, LedgerSample, Ramp};

use num_complex::Complex64;

use crate::dispersion::{DispersionModel, OpticalResponse};
use crate::math::diff::richardson_derivative;
use crate::math::Quadrature;
use crate::units::PI;
use crate::{Error, Result};

/// Loss ratio `ε_I/|ε_R|` above which the lossless energy formulas refuse.
pub const ABSORPTION_THRESHOLD: f64 = 1e-3;

/// Complex field amplitudes at one frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldAmplitude {
    pub e: Complex64,
    pub h: Complex64,
}

impl FieldAmplitude {
    pub fn new(e: Complex64, h: Complex64) -> Self {
        Self { e, h }
    }

    pub fn real(e: f64, h: f64) -> Self {
        Self::new(Complex64::new(e, 0.0), Complex64::new(h, 0.0))
    }

    pub fn e_sq(&self) -> f64 {
        self.e.norm_sqr()
    }

    pub fn h_sq(&self) -> f64 {
        self.h.norm_sqr()
    }
}

/// Split of the Poynting kernel `[ω'ε*(ω') - ωε(ω)]/(ω' - ω)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoyntingKernel {
    /// `[ω'ε_R(ω') - ωε_R(ω)]/(ω' - ω)`, equal to `d(ωε_R)/dω` on the diagonal.
    pub regular: f64,
    /// Coefficient of the term growing linearly in time, `½[ω'ε_I(ω') + ωε_I(ω)]`.
    pub heat: f64,
}

pub fn poynting_kernel(model: &DispersionModel, omega: f64, omega_prime: f64) -> Result<PoyntingKernel> {
    if !(omega > 0.0 && omega_prime > 0.0) {
        return Err(Error::invalid("omega", "kernel frequencies must be positive"));
    }
    let e1 = model.epsilon(omega)?;
    let e2 = model.epsilon(omega_prime)?;
    let regular = if omega_prime == omega {
        model.d_omega_eps_r(omega)?
    } else {
        (omega_prime * e2.re - omega * e1.re) / (omega_prime - omega)
    };
    Ok(PoyntingKernel {
        regular,
        heat: 0.5 * (omega_prime * e2.im + omega * e1.im),
    })
}

/// Cycle-averaged energy density `(1/16π)[d(ωε_R)/dω |E|² + d(ωμ_R)/dω |H|²]`
/// of a monochromatic field in a transparent medium.
///
/// Refuses with [`Error::Absorbing`] when the loss ratio at the response's
/// frequency exceeds `threshold`.
pub fn brillouin_density(
    response: &OpticalResponse,
    d_omega_eps_r: f64,
    d_omega_mu_r: f64,
    field: FieldAmplitude,
    threshold: f64,
) -> Result<f64> {
    response.require_transparent(threshold)?;
    Ok((d_omega_eps_r * field.e_sq() + d_omega_mu_r * field.h_sq()) / (16.0 * PI))
}

/// [`brillouin_density`] with the derivatives taken from `model`.
pub fn brillouin_density_at(model: &DispersionModel, omega: f64, field: FieldAmplitude) -> Result<f64> {
    let response = model.response(omega)?;
    brillouin_density(
        &response,
        model.d_omega_eps_r(omega)?,
        model.d_omega_mu_r(omega)?,
        field,
        ABSORPTION_THRESHOLD,
    )
}

/// Stored energy and accumulated heat of a quasi-monochromatic field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuasimonoEnergy {
    pub stored: f64,
    pub heat: f64,
}

/// Leading-order energy of a field with carrier `ω₀` and slowly varying
/// envelope amplitudes `field`, a time `t` after the field was established.
pub fn quasimono_energy(model: &DispersionModel, omega0: f64, field: FieldAmplitude, t: f64) -> Result<QuasimonoEnergy> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::invalid("t", "must be finite and non-negative"));
    }
    let eps = model.epsilon(omega0)?;
    let mu = model.mu(omega0)?;
    let stored = (model.d_omega_eps_r(omega0)? * field.e_sq() + model.d_omega_mu_r(omega0)? * field.h_sq()) / (16.0 * PI);
    let heat = omega0 * t / (8.0 * PI) * (eps.im * field.e_sq() + mu.im * field.h_sq());
    Ok(QuasimonoEnergy { stored, heat })
}

/// Next-order envelope term of the quasi-monochromatic electric energy,
/// `-(1/8π) d(ωε_I)/dω ∫ Im[Ė₀(t') E₀*(t')] dt'` over `[t0, t1]`.
///
/// Diagnostic only: it is not part of [`quasimono_energy`]. `envelope` is
/// one Cartesian component of `E₀(t)`; sum over components for a vector.
pub fn envelope_correction<F: Fn(f64) -> Complex64>(
    model: &DispersionModel,
    omega0: f64,
    envelope: F,
    t0: f64,
    t1: f64,
) -> Result<f64> {
    if !(t1 > t0) {
        return Err(Error::invalid("t1", "must exceed t0"));
    }
    let eps = model.epsilon(omega0)?;
    let slope = eps.im + omega0 * model.epsilon_derivative(omega0)?.im;
    let h = 1e-3 * (t1 - t0);
    let integrand = |t: f64| {
        let re = richardson_derivative(|s| envelope(s).re, t, h);
        let im = richardson_derivative(|s| envelope(s).im, t, h);
        (Complex64::new(re, im) * envelope(t).conj()).im
    };
    let integral = Quadrature::with_rel_tol(1e-9).abs_tol(1e-15).integrate(integrand, t0, t1)?;
    Ok(-slope * integral.value / (8.0 * PI))
}

/// Energy density of a field whose frequency components are mutually
/// uncorrelated, with spectral densities `spectrum_e(ω)` and `spectrum_h(ω)`.
///
/// Integrates over `[grid[0], grid[last]]` with every grid point used as a
/// panel boundary. The medium must be transparent wherever it is sampled.
pub fn ensemble_density<FE, FH>(model: &DispersionModel, spectrum_e: FE, spectrum_h: FH, grid: &[f64]) -> Result<f64>
where
    FE: Fn(f64) -> f64,
    FH: Fn(f64) -> f64,
{
    if grid.len() < 2 || grid.windows(2).any(|w| !(w[1] > w[0])) || !(grid[0] > 0.0) {
        return Err(Error::invalid("grid", "need increasing positive frequencies"));
    }
    let mut failure = None;
    let estimate = Quadrature::with_rel_tol(1e-11).abs_tol(1e-300).max_panels(20_000).integrate_with_breaks(
        |w| {
            let density = model.response(w).and_then(|r| {
                r.require_transparent(ABSORPTION_THRESHOLD)?;
                Ok(model.d_omega_eps_r(w)? * spectrum_e(w) + model.d_omega_mu_r(w)? * spectrum_h(w))
            });
            match density {
                Ok(v) => v,
                Err(e) => {
                    failure.get_or_insert(e);
                    0.0
                }
            }
        },
        grid,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(estimate?.value / (16.0 * PI))
}
