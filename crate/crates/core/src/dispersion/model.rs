use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use super::index::{refractive_index, RefractiveIndex};
use crate::math::diff::richardson_derivative;
use crate::math::interp::MonotoneCubic;
use crate::units::C;
use crate::{Error, Result};

/// A single damped oscillator: `1 - ω_p² / (ω² - ω₀² + iγω)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Oscillator {
    pub plasma: f64,
    pub resonance: f64,
    pub damping: f64,
}

impl Oscillator {
    pub fn new(plasma: f64, resonance: f64, damping: f64) -> Result<Self> {
        for (field, v) in [("omega_p", plasma), ("omega_0", resonance), ("gamma", damping)] {
            if !v.is_finite() {
                return Err(Error::invalid(field, "must be finite"));
            }
            if v < 0.0 {
                return Err(Error::invalid(field, "must be non-negative"));
            }
        }
        Ok(Self {
            plasma,
            resonance,
            damping,
        })
    }

    fn denominator(&self, omega: f64) -> Complex64 {
        Complex64::new(omega * omega - self.resonance * self.resonance, self.damping * omega)
    }

    fn eval(&self, omega: f64) -> Result<Complex64> {
        let d = self.denominator(omega);
        if self.plasma == 0.0 {
            return Ok(Complex64::new(1.0, 0.0));
        }
        if d.re == 0.0 && d.im == 0.0 {
            return Err(Error::invalid("omega", "lossless resonance: response diverges"));
        }
        Ok(Complex64::new(1.0, 0.0) - real_over(self.plasma * self.plasma, d))
    }

    fn derivative(&self, omega: f64) -> Result<Complex64> {
        let d = self.denominator(omega);
        if self.plasma == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        if d.re == 0.0 && d.im == 0.0 {
            return Err(Error::invalid("omega", "lossless resonance: response diverges"));
        }
        let p2 = self.plasma * self.plasma;
        Ok(p2 * Complex64::new(2.0 * omega, self.damping) / (d * d))
    }
}

/// `x / d` by Smith's algorithm, exact when `d` is purely real or imaginary.
fn real_over(x: f64, d: Complex64) -> Complex64 {
    if d.re.abs() >= d.im.abs() {
        let r = d.im / d.re;
        let den = d.re + d.im * r;
        Complex64::new(x / den, -x * r / den)
    } else {
        let r = d.re / d.im;
        let den = d.re * r + d.im;
        Complex64::new(x * r / den, -x / den)
    }
}

/// Tabulated response on `ω > 0`, interpolated with monotone cubics in
/// `ln ω`. Negative frequencies use `ε(-ω) = ε*(ω)`. No extrapolation.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedResponse {
    real: MonotoneCubic,
    imag: MonotoneCubic,
    range: (f64, f64),
}

impl TabulatedResponse {
    /// Samples are `(ω, Re, Im)` with strictly increasing positive `ω`.
    pub fn new(samples: &[(f64, f64, f64)]) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::invalid("samples", "need at least two rows"));
        }
        if samples.iter().any(|s| !(s.0 > 0.0) || !s.1.is_finite() || !s.2.is_finite()) {
            return Err(Error::invalid("samples", "frequencies must be positive and values finite"));
        }
        let x: Vec<f64> = samples.iter().map(|s| s.0.ln()).collect();
        let real = MonotoneCubic::new(x.clone(), samples.iter().map(|s| s.1).collect())
            .map_err(|_| Error::invalid("samples", "frequencies must be strictly increasing"))?;
        let imag = MonotoneCubic::new(x, samples.iter().map(|s| s.2).collect())
            .map_err(|_| Error::invalid("samples", "frequencies must be strictly increasing"))?;
        let range = (samples[0].0, samples[samples.len() - 1].0);
        Ok(Self { real, imag, range })
    }

    pub fn range(&self) -> (f64, f64) {
        self.range
    }

    fn eval(&self, omega: f64) -> Result<Complex64> {
        let w = omega.abs();
        let out = || Error::OutOfRange {
            omega,
            min: self.range.0,
            max: self.range.1,
        };
        if !(w >= self.range.0 && w <= self.range.1) {
            return Err(out());
        }
        let t = w.ln();
        let re = self.real.eval(t).ok_or_else(out)?.0;
        let im = self.imag.eval(t).ok_or_else(out)?.0;
        Ok(if omega < 0.0 {
            Complex64::new(re, -im)
        } else {
            Complex64::new(re, im)
        })
    }

    fn derivative(&self, omega: f64) -> Result<Complex64> {
        let h = 1e-4 * omega.abs();
        let inside = |w: f64| w.abs() >= self.range.0 && w.abs() <= self.range.1;
        if inside(omega - h) && inside(omega + h) && omega.abs() - h > 0.0 {
            let re = richardson_derivative(|w| self.eval(w).map(|e| e.re).unwrap_or(f64::NAN), omega, h);
            let im = richardson_derivative(|w| self.eval(w).map(|e| e.im).unwrap_or(f64::NAN), omega, h);
            return Ok(Complex64::new(re, im));
        }
        // At the table edge fall back to the interpolant's own slope.
        self.eval(omega)?;
        let w = omega.abs();
        let t = w.ln();
        let dre = self.real.eval(t).map(|v| v.1).unwrap_or(0.0) / w;
        let dim = self.imag.eval(t).map(|v| v.1).unwrap_or(0.0) / w;
        // d/dω of the conjugate-symmetric extension: Re is even, Im is odd.
        Ok(if omega < 0.0 {
            Complex64::new(-dre, dim)
        } else {
            Complex64::new(dre, dim)
        })
    }
}

/// One complex response function: permittivity or permeability.
#[derive(Debug, Clone, PartialEq)]
pub enum ResponseModel {
    Vacuum,
    Lorentz(Oscillator),
    /// Free-carrier response, a Lorentz oscillator with `ω₀ = 0`.
    Drude { plasma: f64, damping: f64 },
    Tabulated(TabulatedResponse),
}

impl ResponseModel {
    pub fn lorentz(plasma: f64, resonance: f64, damping: f64) -> Result<Self> {
        Ok(ResponseModel::Lorentz(Oscillator::new(plasma, resonance, damping)?))
    }

    pub fn drude(plasma: f64, damping: f64) -> Result<Self> {
        Oscillator::new(plasma, 0.0, damping)?;
        Ok(ResponseModel::Drude { plasma, damping })
    }

    pub fn tabulated(samples: &[(f64, f64, f64)]) -> Result<Self> {
        Ok(ResponseModel::Tabulated(TabulatedResponse::new(samples)?))
    }

    /// The parametric oscillator behind a Lorentz or Drude response.
    pub fn oscillator(&self) -> Option<Oscillator> {
        match *self {
            ResponseModel::Lorentz(o) => Some(o),
            ResponseModel::Drude { plasma, damping } => Some(Oscillator {
                plasma,
                resonance: 0.0,
                damping,
            }),
            _ => None,
        }
    }

    /// Frequency range of a tabulated response; `None` for parametric ones.
    pub fn range(&self) -> Option<(f64, f64)> {
        match self {
            ResponseModel::Tabulated(t) => Some(t.range()),
            _ => None,
        }
    }

    pub fn is_vacuum(&self) -> bool {
        matches!(self, ResponseModel::Vacuum)
    }

    pub fn is_parametric(&self) -> bool {
        !matches!(self, ResponseModel::Tabulated(_))
    }

    /// True when the model has no loss by construction (vacuum or `γ = 0`).
    pub fn is_lossless(&self) -> bool {
        match self.oscillator() {
            Some(o) => o.damping == 0.0 || o.plasma == 0.0,
            None => self.is_vacuum(),
        }
    }

    pub fn eval(&self, omega: f64) -> Result<Complex64> {
        if !omega.is_finite() {
            return Err(Error::invalid("omega", "must be finite"));
        }
        match self {
            ResponseModel::Vacuum => Ok(Complex64::new(1.0, 0.0)),
            ResponseModel::Tabulated(t) => t.eval(omega),
            ResponseModel::Drude { .. } if omega == 0.0 => {
                Err(Error::invalid("omega", "Drude response diverges at zero frequency"))
            }
            _ => self.oscillator().expect("parametric").eval(omega),
        }
    }

    /// `dε/dω`: analytic for parametric models, Richardson differences for tables.
    pub fn derivative(&self, omega: f64) -> Result<Complex64> {
        if !omega.is_finite() {
            return Err(Error::invalid("omega", "must be finite"));
        }
        match self {
            ResponseModel::Vacuum => Ok(Complex64::new(0.0, 0.0)),
            ResponseModel::Tabulated(t) => t.derivative(omega),
            ResponseModel::Drude { .. } if omega == 0.0 => {
                Err(Error::invalid("omega", "Drude response diverges at zero frequency"))
            }
            _ => self.oscillator().expect("parametric").derivative(omega),
        }
    }
}

/// Electric and magnetic response of a uniform, isotropic, local medium.
#[derive(Debug, Clone, PartialEq)]
pub struct DispersionModel {
    pub permittivity: ResponseModel,
    pub permeability: ResponseModel,
}

/// Optical quantities at one frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OpticalResponse {
    pub omega: f64,
    pub epsilon: Complex64,
    pub mu: Complex64,
    pub index: RefractiveIndex,
    /// `c / d(ω n_R)/dω`; `None` where that derivative vanishes.
    pub group_velocity: Option<f64>,
}

impl OpticalResponse {
    pub fn n_r(&self) -> f64 {
        self.index.n_r
    }

    pub fn n_i(&self) -> f64 {
        self.index.n_i
    }

    /// Largest of `ε_I/|ε_R|` and `μ_I/|μ_R|`.
    pub fn loss_ratio(&self) -> f64 {
        let ratio = |z: Complex64| {
            if z.im == 0.0 {
                0.0
            } else {
                z.im.abs() / z.re.abs()
            }
        };
        ratio(self.epsilon).max(ratio(self.mu))
    }

    /// Errors when absorption at this frequency is above `threshold`.
    pub fn require_transparent(&self, threshold: f64) -> Result<()> {
        let ratio = self.loss_ratio();
        if ratio > threshold {
            return Err(Error::Absorbing {
                omega: self.omega,
                ratio,
                threshold,
            });
        }
        Ok(())
    }
}

impl DispersionModel {
    pub fn vacuum() -> Self {
        Self {
            permittivity: ResponseModel::Vacuum,
            permeability: ResponseModel::Vacuum,
        }
    }

    pub fn lorentz(plasma: f64, resonance: f64, damping: f64) -> Result<Self> {
        Ok(Self::dielectric(ResponseModel::lorentz(plasma, resonance, damping)?))
    }

    pub fn drude(plasma: f64, damping: f64) -> Result<Self> {
        Ok(Self::dielectric(ResponseModel::drude(plasma, damping)?))
    }

    pub fn tabulated(samples: &[(f64, f64, f64)]) -> Result<Self> {
        Ok(Self::dielectric(ResponseModel::tabulated(samples)?))
    }

    /// Non-magnetic medium (`μ ≡ 1`).
    pub fn dielectric(permittivity: ResponseModel) -> Self {
        Self {
            permittivity,
            permeability: ResponseModel::Vacuum,
        }
    }

    pub fn with_permeability(mut self, permeability: ResponseModel) -> Self {
        self.permeability = permeability;
        self
    }

    pub fn is_magnetic(&self) -> bool {
        !self.permeability.is_vacuum()
    }

    pub fn is_lossless(&self) -> bool {
        self.permittivity.is_lossless() && self.permeability.is_lossless()
    }

    pub fn require_nonmagnetic(&self) -> Result<()> {
        if self.is_magnetic() {
            return Err(Error::invalid("permeability", "this calculation assumes a nonmagnetic medium (μ = 1)"));
        }
        Ok(())
    }

    pub fn epsilon(&self, omega: f64) -> Result<Complex64> {
        self.permittivity.eval(omega)
    }

    pub fn mu(&self, omega: f64) -> Result<Complex64> {
        self.permeability.eval(omega)
    }

    pub fn epsilon_derivative(&self, omega: f64) -> Result<Complex64> {
        self.permittivity.derivative(omega)
    }

    pub fn mu_derivative(&self, omega: f64) -> Result<Complex64> {
        self.permeability.derivative(omega)
    }

    /// Principal root of `εμ`.
    pub fn index(&self, omega: f64) -> Result<RefractiveIndex> {
        refractive_index(self.epsilon(omega)? * self.mu(omega)?)
    }

    /// `dn/dω = (ε'μ + εμ') / 2n`.
    pub fn index_derivative(&self, omega: f64) -> Result<Complex64> {
        let n = self.index(omega)?.complex();
        if n.re == 0.0 && n.im == 0.0 {
            return Err(Error::invalid("omega", "index vanishes; derivative undefined"));
        }
        let (eps, mu) = (self.epsilon(omega)?, self.mu(omega)?);
        let (deps, dmu) = (self.epsilon_derivative(omega)?, self.mu_derivative(omega)?);
        Ok((deps * mu + eps * dmu) / (2.0 * n))
    }

    /// `d(ω ε_R)/dω` from the analytic (or Richardson, for tables) derivative.
    pub fn d_omega_eps_r(&self, omega: f64) -> Result<f64> {
        Ok(self.epsilon(omega)?.re + omega * self.epsilon_derivative(omega)?.re)
    }

    /// `d(ω μ_R)/dω`.
    pub fn d_omega_mu_r(&self, omega: f64) -> Result<f64> {
        Ok(self.mu(omega)?.re + omega * self.mu_derivative(omega)?.re)
    }

    /// `d(ω n_R)/dω` from the analytic index derivative.
    pub fn d_omega_n_r(&self, omega: f64) -> Result<f64> {
        Ok(self.index(omega)?.n_r + omega * self.index_derivative(omega)?.re)
    }

    /// Group velocity `c / d(ω n_R)/dω`, the derivative taken by central
    /// differences with Richardson extrapolation at step `h`.
    pub fn group_velocity(&self, omega: f64, h: f64) -> Result<f64> {
        if !(omega > 0.0) {
            return Err(Error::invalid("omega", "group velocity needs ω > 0"));
        }
        if !(h > 0.0) || omega - h <= 0.0 {
            return Err(Error::invalid("h", "step must satisfy 0 < h < ω"));
        }
        if self.permittivity.is_vacuum() && self.permeability.is_vacuum() {
            return Ok(C);
        }
        let mut failure = None;
        let derivative = richardson_derivative(
            |w| match self.index(w) {
                Ok(n) => w * n.n_r,
                Err(e) => {
                    failure.get_or_insert(e);
                    f64::NAN
                }
            },
            omega,
            h,
        );
        if let Some(e) = failure {
            return Err(e);
        }
        if !(derivative.abs() >= 1e-12) {
            return Err(Error::AnomalousDispersion { omega, derivative });
        }
        Ok(C / derivative)
    }

    /// Default finite-difference step for [`Self::group_velocity`].
    pub fn default_step(omega: f64) -> f64 {
        1e-3 * omega
    }

    /// Bundle `{ε, μ, n, v_g}` at `ω`.
    pub fn response(&self, omega: f64) -> Result<OpticalResponse> {
        let epsilon = self.epsilon(omega)?;
        let mu = self.mu(omega)?;
        let index = refractive_index(epsilon * mu)?;
        let group_velocity = if omega > 0.0 {
            match self.group_velocity(omega, Self::default_step(omega)) {
                Ok(v) => Some(v),
                Err(Error::AnomalousDispersion { .. }) => None,
                // Tables: the stencil may leave the tabulated range.
                Err(Error::OutOfRange { .. }) => None,
                Err(e) => return Err(e),
            }
        } else {
            None
        };
        Ok(OpticalResponse {
            omega,
            epsilon,
            mu,
            index,
            group_velocity,
        })
    }
}
