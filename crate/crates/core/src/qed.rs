//! Zero-point and thermal energy of the field in a transparent dispersive
//! medium, and the spontaneous-emission rate relative to free space.

use num_traits::Float;

use crate::classical::ABSORPTION_THRESHOLD;
use crate::dispersion::{DispersionModel, OpticalResponse};
use crate::math::Quadrature;
use crate::thermal::ThermalState;
use crate::units::{C, HBAR, PI};
use crate::{Error, Result};

/// Squared zero-point amplitudes of one polarization at one frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroPointAmplitudes {
    pub e_sq: f64,
    pub h_sq: f64,
}

/// `E² = (ħ/πc³) μ_R n_R ω³` and `H² = (ħ/πc³) n_R³ ω³ / μ_R`.
pub fn zero_point_amplitudes(response: &OpticalResponse) -> Result<ZeroPointAmplitudes> {
    response.require_transparent(ABSORPTION_THRESHOLD)?;
    let w3 = response.omega.powi(3);
    let n = response.n_r();
    let mu = response.mu.re;
    let prefactor = HBAR / (PI * C.powi(3));
    Ok(ZeroPointAmplitudes {
        e_sq: prefactor * mu * n * w3,
        h_sq: prefactor * n.powi(3) * w3 / mu,
    })
}

/// Spectral energy density at one frequency, split by origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralDensity {
    pub zero_point: f64,
    pub thermal: f64,
    /// Group velocity is negative here; the mode-counting behind the value
    /// does not hold and the number is returned for inspection only.
    pub anomalous: bool,
}

impl SpectralDensity {
    pub fn total(&self) -> f64 {
        self.zero_point + self.thermal
    }
}

/// `ρ(ω) = n_R² ω³ / (π² v_g c²) · (½ + N(ω))` with `ħ = 1`.
pub fn spectral_density(response: &OpticalResponse, state: &ThermalState) -> Result<SpectralDensity> {
    response.require_transparent(ABSORPTION_THRESHOLD)?;
    let w = response.omega;
    let vg = response.group_velocity.ok_or(Error::AnomalousDispersion {
        omega: w,
        derivative: 0.0,
    })?;
    let base = HBAR * response.n_r().powi(2) * w.powi(3) / (PI * PI * vg * C * C);
    Ok(SpectralDensity {
        zero_point: 0.5 * base,
        thermal: base * state.occupation(w),
        anomalous: vg <= 0.0,
    })
}

/// `ρ(ω)` from the analytic derivative of `ω n_R`, for quadrature.
fn density_parts(model: &DispersionModel, state: &ThermalState, w: f64) -> Result<(f64, f64)> {
    if w == 0.0 {
        return Ok((0.0, 0.0));
    }
    let response = model.response(w)?;
    response.require_transparent(ABSORPTION_THRESHOLD)?;
    let slope = model.d_omega_n_r(w)?;
    if !(slope > 0.0) {
        return Err(Error::AnomalousDispersion { omega: w, derivative: slope });
    }
    let n = response.n_r();
    // n_R² ω² d(ωn_R)/dω / π² times ½ω and ωN(ω).
    let base = HBAR * n * n * w * w * slope / (PI * PI * C.powi(3));
    Ok((0.5 * base * w, base * state.omega_occupation(w)))
}

/// Energy density of a band, split by origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandDensity {
    /// Grows without bound with the upper band edge.
    pub zero_point: f64,
    pub thermal: f64,
}

impl BandDensity {
    pub fn total(&self) -> f64 {
        self.zero_point + self.thermal
    }
}

fn integrate_part(
    model: &DispersionModel,
    state: &ThermalState,
    lo: f64,
    hi: f64,
    tol: f64,
    thermal: bool,
) -> Result<f64> {
    let mut failure = None;
    let mut f = |w: f64| match density_parts(model, state, w) {
        Ok((z, t)) => {
            if thermal {
                t
            } else {
                z
            }
        }
        Err(e) => {
            failure.get_or_insert(e);
            0.0
        }
    };
    let quad = Quadrature::with_rel_tol(tol).max_panels(20_000);
    let estimate = if hi.is_infinite() {
        let scale = state.temperature().max(lo);
        quad.integrate_to_infinity(&mut f, lo, &[lo + scale, lo + 10.0 * scale])
    } else {
        quad.integrate(&mut f, lo, hi)
    };
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(estimate?.value)
}

/// Band energy density `∫ ρ(ω) dω` over `[lo, hi]` by adaptive quadrature
/// at relative tolerance `tol`.
///
/// `hi` may be infinite; the zero-point part is then divergent and reported
/// as an error, so use [`thermal_band_density`] for the thermal part alone.
pub fn band_density(model: &DispersionModel, state: &ThermalState, lo: f64, hi: f64, tol: f64) -> Result<BandDensity> {
    validate_band(lo, hi, tol)?;
    if hi.is_infinite() {
        return Err(Error::Divergent("zero-point energy over an unbounded band"));
    }
    let zero_point = integrate_part(model, state, lo, hi, tol, false)?;
    let thermal = if state.temperature() == 0.0 {
        0.0
    } else {
        integrate_part(model, state, lo, hi, tol, true)?
    };
    Ok(BandDensity { zero_point, thermal })
}

/// `∫₀^{ω_max} ρ(ω) dω` with zero-point and thermal parts reported apart.
pub fn total_density(model: &DispersionModel, state: &ThermalState, omega_max: f64, tol: f64) -> Result<BandDensity> {
    band_density(model, state, 0.0, omega_max, tol)
}

/// Thermal part only, `∫ ρ_T(ω) dω` over `[lo, hi]`; `hi` may be infinite.
pub fn thermal_band_density(model: &DispersionModel, state: &ThermalState, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    validate_band(lo, hi, tol)?;
    if state.temperature() == 0.0 {
        return Ok(0.0);
    }
    integrate_part(model, state, lo, hi, tol, true)
}

fn validate_band(lo: f64, hi: f64, tol: f64) -> Result<()> {
    if !(lo >= 0.0 && lo.is_finite()) || !(hi > lo) {
        return Err(Error::invalid("band", "need 0 <= lo < hi"));
    }
    if !(tol > 0.0) {
        return Err(Error::invalid("tol", "must be positive"));
    }
    Ok(())
}

/// Spontaneous-emission rate of a dipole at `ω₀` relative to free space,
/// `n_R(ω₀)`.
pub fn spontaneous_rate_ratio(model: &DispersionModel, omega0: f64) -> Result<f64> {
    if !(omega0 > 0.0) {
        return Err(Error::invalid("omega_0", "transition frequency must be positive"));
    }
    Ok(model.index(omega0)?.n_r)
}
