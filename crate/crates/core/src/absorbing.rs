//! Zero-point and thermal energy density of an absorbing, dispersive,
//! nonmagnetic medium.
//!
//! The field spectra follow from `k`-integrals of the medium's Green
//! function. The magnetic variance needs a cutoff at the interatomic scale
//! `a`; its `1/a` part cancels against one piece of the polarization energy
//! `W₂`, and the heating rate of `W₁` cancels against the cooling rate of
//! `W₂`. What remains depends on `n_R(ω)` alone.

use num_complex::Complex64;
use num_traits::Float;

use crate::dispersion::{refractive_index, DispersionModel};
use crate::math::Quadrature;
use crate::thermal::ThermalState;
use crate::units::{C, HBAR, PI, POLARIZATIONS};
use crate::{Error, Result};

/// Largest `aω/c` accepted by [`RegularizationConfig::validate`].
pub const MAX_CUTOFF_RATIO: f64 = 0.01;

/// Shape of the large-`k` cutoff.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Regularization {
    /// Factor `1/(1 + k²a²)`.
    #[default]
    Lorentzian,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegularizationConfig {
    /// Interatomic length scale.
    pub a: f64,
    pub scheme: Regularization,
}

impl RegularizationConfig {
    pub fn lorentzian(a: f64) -> Self {
        Self {
            a,
            scheme: Regularization::Lorentzian,
        }
    }

    /// Requires `a > 0` and `aω/c < 0.01`.
    pub fn validate(&self, omega: f64) -> Result<()> {
        if !(self.a > 0.0 && self.a.is_finite()) {
            return Err(Error::invalid("a", "cutoff length must be positive"));
        }
        if !(self.a * omega.abs() / C < MAX_CUTOFF_RATIO) {
            return Err(Error::invalid("a", "cutoff length must satisfy a·ω/c < 0.01"));
        }
        Ok(())
    }
}

/// Local optical data for one frequency of a passive nonmagnetic medium.
#[derive(Debug, Clone, Copy)]
struct Local {
    omega: f64,
    eps: Complex64,
    deps: Complex64,
    n: Complex64,
    dn: Complex64,
}

impl Local {
    fn new(model: &DispersionModel, omega: f64) -> Result<Self> {
        model.require_nonmagnetic()?;
        if !(omega > 0.0) {
            return Err(Error::invalid("omega", "must be positive"));
        }
        let eps = model.epsilon(omega)?;
        if eps.im < 0.0 {
            return Err(Error::invalid("permittivity", "gain media (ε_I < 0) are not supported"));
        }
        let deps = model.epsilon_derivative(omega)?;
        let n = refractive_index(eps)?.complex();
        if n.re == 0.0 && n.im == 0.0 {
            return Err(Error::invalid("permittivity", "index vanishes"));
        }
        Ok(Self {
            omega,
            eps,
            deps,
            n,
            dn: deps / (2.0 * n),
        })
    }

    /// `d(ωε_R)/dω`.
    fn d_omega_eps_r(&self) -> f64 {
        self.eps.re + self.omega * self.deps.re
    }

    /// `d(ω n_R)/dω`.
    fn d_omega_n_r(&self) -> f64 {
        self.n.re + self.omega * self.dn.re
    }

    /// `Im d(ω²√ε)/dω`.
    fn im_d_omega2_root(&self) -> f64 {
        let w = self.omega;
        (2.0 * w * self.n + w * w * self.dn).im
    }

    /// `Re ε^{3/2}` on the principal branch.
    fn re_eps_three_halves(&self) -> f64 {
        (self.n * self.n * self.n).re
    }
}

/// `∫₀^∞ 4πk² dk / |k² - εω²/c²|² = 2π² c n_R / (ε_I ω)`.
pub fn green_norm_integral(eps: Complex64, omega: f64) -> Result<f64> {
    check_green_args(eps, omega)?;
    let n = refractive_index(eps)?;
    Ok(2.0 * PI * PI * C * n.n_r / (eps.im * omega))
}

fn check_green_args(eps: Complex64, omega: f64) -> Result<()> {
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::invalid("omega", "must be positive"));
    }
    if eps.im == 0.0 {
        return Err(Error::Divergent("transparent medium: on-shell pole in the k-integral"));
    }
    if !(eps.im > 0.0 && eps.re.is_finite()) {
        return Err(Error::invalid("permittivity", "need finite ε with ε_I > 0"));
    }
    Ok(())
}

/// [`green_norm_integral`] by adaptive quadrature in `s = kc/ω`.
///
/// The range `[0, S]` is integrated numerically with panel breaks around the
/// near-pole peak at `s = n_R`; beyond `S = 50·max(1, |ε|^{1/2})` the
/// integrand is expanded in `1/s²` and integrated analytically.
pub fn green_norm_quadrature(eps: Complex64, omega: f64) -> Result<f64> {
    check_green_args(eps, omega)?;
    let n = refractive_index(eps)?;
    let modulus2 = eps.norm_sqr();
    let s_max = 50.0 * modulus2.sqrt().sqrt().max(1.0);
    let integrand = |s: f64| {
        let s2 = s * s;
        let gap = s2 - eps.re;
        s2 / (gap * gap + eps.im * eps.im)
    };
    let mut breaks = alloc::vec![0.0];
    if eps.re > 0.0 {
        // Peak half-width in s is about n_I.
        let width = n.n_i.max(1e-300);
        for m in [-8.0, -1.0, 0.0, 1.0, 8.0] {
            let s = n.n_r + m * width;
            if s > 0.0 && s < s_max {
                breaks.push(s);
            }
        }
    }
    breaks.push(s_max);
    breaks.sort_by(|a, b| a.total_cmp(b));
    breaks.dedup();
    let body = Quadrature::with_rel_tol(1e-11).max_panels(20_000).integrate_with_breaks(integrand, &breaks)?;
    let x = 1.0 / s_max;
    let tail = x + 2.0 * eps.re * x.powi(3) / 3.0 + (4.0 * eps.re * eps.re - modulus2) * x.powi(5) / 5.0;
    Ok(4.0 * PI * C / omega * (body.value + tail))
}

/// Small-`a` form of `∫ d³k / (k² - εω²/c²) · 1/(1 + k²a²)`:
/// `2π²/a + 2π² i (ω/c) ε^{1/2}`.
pub fn regularized_k_integral(eps: Complex64, omega: f64, reg: &RegularizationConfig) -> Result<Complex64> {
    reg.validate(omega)?;
    if !(eps.im >= 0.0) {
        return Err(Error::invalid("permittivity", "need ε_I >= 0"));
    }
    let root = refractive_index(eps)?.complex();
    Ok(Complex64::new(2.0 * PI * PI / reg.a, 0.0) + Complex64::new(0.0, 2.0 * PI * PI * omega / C) * root)
}

/// The same integral at finite `a` by adaptive quadrature over
/// `s = kc/ω ∈ [0, ∞)`.
pub fn regularized_k_quadrature(eps: Complex64, omega: f64, reg: &RegularizationConfig) -> Result<Complex64> {
    reg.validate(omega)?;
    if !(eps.im > 0.0) {
        return Err(Error::invalid("permittivity", "quadrature needs ε_I > 0"));
    }
    let n = refractive_index(eps)?;
    let alpha = reg.a * omega / C;
    let integrand = |s: f64| {
        let s2 = s * s;
        Complex64::new(s2 / (1.0 + alpha * alpha * s2), 0.0) / (Complex64::new(s2, 0.0) - eps)
    };
    let mut breaks = alloc::vec![1.0 / alpha, 10.0 / alpha];
    if eps.re > 0.0 {
        for m in [-1.0, 0.0, 1.0] {
            let s = n.n_r + m * n.n_i;
            if s > 0.0 {
                breaks.push(s);
            }
        }
    }
    breaks.sort_by(|a, b| a.total_cmp(b));
    let estimate = Quadrature::with_rel_tol(1e-12)
        .max_panels(20_000)
        .integrate_to_infinity(integrand, 0.0, &breaks)?;
    Ok(estimate.value * (4.0 * PI * omega / C))
}

/// Zero-temperature spectral density of `⟨E²⟩`, polarizations summed:
/// `(2ħ/πc³) ω³ n_R`.
pub fn e_field_spectrum(model: &DispersionModel, omega: f64) -> Result<f64> {
    let local = Local::new(model, omega)?;
    Ok(POLARIZATIONS * HBAR / (PI * C.powi(3)) * omega.powi(3) * local.n.re)
}

/// [`e_field_spectrum`] through the `k`-integral,
/// `(ħ/2π³c⁴) Σ_λ ω⁴ ε_I ∫4πk²dk/|k² - εω²/c²|²`, with the integral taken by
/// quadrature.
pub fn e_field_spectrum_by_quadrature(model: &DispersionModel, omega: f64) -> Result<f64> {
    let local = Local::new(model, omega)?;
    let g = green_norm_quadrature(local.eps, omega)?;
    Ok(HBAR / (2.0 * PI.powi(3) * C.powi(4)) * POLARIZATIONS * omega.powi(4) * local.eps.im * g)
}

/// Zero-temperature spectral density of `⟨H²⟩/8π`, polarizations summed,
/// split into the `1/a` cutoff part and the finite part.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HFieldSpectrum {
    pub cutoff: f64,
    pub finite: f64,
}

impl HFieldSpectrum {
    pub fn total(&self) -> f64 {
        self.cutoff + self.finite
    }
}

/// `(ħ/8π²c³) Σ_λ ω² [ε_I c/a + ω Re ε^{3/2}]`.
pub fn h_field_spectrum(model: &DispersionModel, omega: f64, reg: &RegularizationConfig) -> Result<HFieldSpectrum> {
    reg.validate(omega)?;
    let local = Local::new(model, omega)?;
    Ok(h_field(&local, reg))
}

fn h_field(local: &Local, reg: &RegularizationConfig) -> HFieldSpectrum {
    let w = local.omega;
    let pre = POLARIZATIONS * HBAR / (8.0 * PI * PI * C.powi(3)) * w * w;
    HFieldSpectrum {
        cutoff: pre * local.eps.im * C / reg.a,
        finite: pre * w * local.re_eps_three_halves(),
    }
}

/// Field-energy part `W₁` of the total energy: a static part and the
/// coefficient of its linear growth in time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct W1Spectrum {
    /// Electric term plus the full `⟨H²⟩/8π`, cutoff part included.
    pub static_part: f64,
    pub rate: f64,
}

/// `static = (ħ/8π²c³) Σ_λ ω³ n_R d(ωε_R)/dω + ⟨H²⟩/8π`,
/// `rate = (ħ/4π²c³) Σ_λ ω⁴ n_R ε_I`.
pub fn w1_spectrum(model: &DispersionModel, omega: f64, reg: &RegularizationConfig) -> Result<W1Spectrum> {
    reg.validate(omega)?;
    let local = Local::new(model, omega)?;
    Ok(w1(&local, reg))
}

fn w1_electric(local: &Local) -> f64 {
    let w = local.omega;
    POLARIZATIONS * HBAR / (8.0 * PI * PI * C.powi(3)) * w.powi(3) * local.n.re * local.d_omega_eps_r()
}

fn w1(local: &Local, reg: &RegularizationConfig) -> W1Spectrum {
    let w = local.omega;
    W1Spectrum {
        static_part: w1_electric(local) + h_field(local, reg).total(),
        rate: POLARIZATIONS * HBAR / (4.0 * PI * PI * C.powi(3)) * w.powi(4) * local.n.re * local.eps.im,
    }
}

/// Polarization-energy part `W₂` of the total energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct W2Spectrum {
    /// `-(ħ/8π²c²) Σ_λ ω² ε_I / a`.
    pub static_cutoff: f64,
    /// `(ħ/8π²c³) Σ_λ ω² ε_I Im d(ω²ε^{1/2})/dω`.
    pub static_finite: f64,
    /// Cooling rate; equal and opposite to [`W1Spectrum::rate`].
    pub rate: f64,
}

impl W2Spectrum {
    pub fn static_part(&self) -> f64 {
        self.static_cutoff + self.static_finite
    }
}

pub fn w2_spectrum(model: &DispersionModel, omega: f64, reg: &RegularizationConfig) -> Result<W2Spectrum> {
    reg.validate(omega)?;
    let local = Local::new(model, omega)?;
    Ok(w2(&local, reg))
}

fn w2(local: &Local, reg: &RegularizationConfig) -> W2Spectrum {
    let w = local.omega;
    let eps_i = local.eps.im;
    // The rate comes from the Green-function normalization rather than from
    // n_R ε_I directly, so its cancellation against W₁ is a real check.
    let rate = if eps_i > 0.0 {
        let g = 2.0 * PI * PI * C * local.n.re / (eps_i * w);
        -POLARIZATIONS * HBAR / (8.0 * PI.powi(4) * C.powi(4)) * w.powi(5) * eps_i * eps_i * g
    } else {
        0.0
    };
    W2Spectrum {
        static_cutoff: -POLARIZATIONS * HBAR / (8.0 * PI * PI * C * C) * w * w * eps_i / reg.a,
        static_finite: POLARIZATIONS * HBAR / (8.0 * PI * PI * C.powi(3)) * w * w * eps_i * local.im_d_omega2_root(),
        rate,
    }
}

/// Every term of the total energy spectral density at one frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyBreakdown {
    pub omega: f64,
    pub w1_static: f64,
    pub w1_rate: f64,
    pub w2_static: f64,
    pub w2_static_cutoff: f64,
    pub w2_static_finite: f64,
    pub w2_rate: f64,
    /// `⟨H²⟩/8π`, cutoff part included.
    pub h_field: f64,
    pub h_field_cutoff: f64,
    /// Sum of all `1/a` terms; zero up to rounding.
    pub cutoff_residual: f64,
    /// `W₁ + W₂` with the time-dependent terms cancelled.
    pub total: f64,
}

pub fn energy_breakdown(model: &DispersionModel, omega: f64, reg: &RegularizationConfig) -> Result<EnergyBreakdown> {
    reg.validate(omega)?;
    let local = Local::new(model, omega)?;
    let h = h_field(&local, reg);
    let one = w1(&local, reg);
    let two = w2(&local, reg);
    let cutoff_residual = h.cutoff + two.static_cutoff;
    // Sum the cutoff terms first so their cancellation is not lost to the
    // larger finite parts.
    let total = cutoff_residual + (w1_electric(&local) + h.finite + two.static_finite);
    Ok(EnergyBreakdown {
        omega,
        w1_static: one.static_part,
        w1_rate: one.rate,
        w2_static: two.static_part(),
        w2_static_cutoff: two.static_cutoff,
        w2_static_finite: two.static_finite,
        w2_rate: two.rate,
        h_field: h.total(),
        h_field_cutoff: h.cutoff,
        cutoff_residual,
        total,
    })
}

/// Total zero-point energy spectral density of the absorbing medium,
/// polarizations summed:
/// `(ħ/8π²c³) Σ_λ ω³ { Re[n_R d(ωε)/dω + ε^{3/2}] + (ε_I/ω) Im d(ω²ε^{1/2})/dω }`.
pub fn total_energy_spectrum(model: &DispersionModel, omega: f64) -> Result<f64> {
    let local = Local::new(model, omega)?;
    let w = omega;
    let brace = local.n.re * local.d_omega_eps_r()
        + local.re_eps_three_halves()
        + local.eps.im / w * local.im_d_omega2_root();
    Ok(POLARIZATIONS * HBAR / (8.0 * PI * PI * C.powi(3)) * w.powi(3) * brace)
}

/// The same density written through the real index alone,
/// `(ħ/2π²c³) ω³ n_R² d(ω n_R)/dω`.
pub fn index_form_spectrum(model: &DispersionModel, omega: f64) -> Result<f64> {
    let local = Local::new(model, omega)?;
    Ok(HBAR / (2.0 * PI * PI * C.powi(3)) * omega.powi(3) * local.n.re * local.n.re * local.d_omega_n_r())
}

/// Band energy density split into the zero-point part and the thermal
/// excess.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandEnergy {
    pub zero_point: f64,
    pub thermal: f64,
}

impl BandEnergy {
    pub fn total(&self) -> f64 {
        self.zero_point + self.thermal
    }
}

/// `∫ W(ω) coth(ω/2T) dω` over `[lo, hi]`: the zero-point spectrum weighted
/// by `(½ + N)/½`. `hi` may be infinite, in which case the zero-point part
/// is divergent and reported as an error unless `include_zero_point` is off.
pub fn thermal_total_energy(
    model: &DispersionModel,
    lo: f64,
    hi: f64,
    state: &ThermalState,
    tol: f64,
    include_zero_point: bool,
) -> Result<BandEnergy> {
    if !(lo >= 0.0 && hi > lo) {
        return Err(Error::invalid("band", "need 0 <= lo < hi"));
    }
    if !(tol > 0.0) {
        return Err(Error::invalid("tol", "must be positive"));
    }
    if include_zero_point && hi.is_infinite() {
        return Err(Error::Divergent("zero-point energy over an unbounded band"));
    }
    let quad = Quadrature::with_rel_tol(tol).max_panels(20_000);
    let mut failure = None;
    let mut spectrum = |w: f64| {
        if w == 0.0 {
            return 0.0;
        }
        match total_energy_spectrum(model, w) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        }
    };
    let zero_point = if include_zero_point {
        quad.integrate(&mut spectrum, lo, hi)?.value
    } else {
        0.0
    };
    let thermal = if state.temperature() == 0.0 {
        0.0
    } else {
        // W(ω)·2N(ω) written through ωN(ω), which stays finite at ω → 0.
        let mut excess = |w: f64| {
            if w == 0.0 {
                return 0.0;
            }
            2.0 * spectrum(w) / w * state.omega_occupation(w)
        };
        if hi.is_infinite() {
            let t = state.temperature();
            quad.integrate_to_infinity(&mut excess, lo, &[lo + t, lo + 10.0 * t])?.value
        } else {
            quad.integrate(&mut excess, lo, hi)?.value
        }
    };
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(BandEnergy { zero_point, thermal })
}
