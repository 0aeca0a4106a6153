//! Energy ledger of a medium of bound charges driven by a uniform field.
//!
//! The oscillators are tracked through `y = x m/e`, which obeys
//! `ÿ + γẏ + ω₀²y = E(t)`. With `ω_p² = 4πNe²/m` the densities become
//! `kinetic = (ω_p²/8π) ẏ²` and `potential = (ω_p²/8π) ω₀² y²`.

use alloc::vec::Vec;

use num_traits::Float;

use crate::dispersion::{DispersionModel, Oscillator};
use crate::math::DampedPropagator;
use crate::units::PI;
use crate::{Error, Result};

/// Minimum time steps per period of the drive and of the free oscillation.
pub const MIN_STEPS_PER_PERIOD: f64 = 40.0;

/// Smooth switch-on `½[1 + erf((t - center)/width)]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ramp {
    pub width: f64,
    pub center: f64,
}

impl Ramp {
    /// Ramp centred at four widths, fully on after about eight.
    pub fn new(width: f64) -> Self {
        Self {
            width,
            center: 4.0 * width,
        }
    }

    pub fn value(&self, t: f64) -> f64 {
        0.5 * (1.0 + libm::erf((t - self.center) / self.width))
    }

    /// Time after which the ramp differs from one by less than `1e-16`.
    pub fn settled(&self) -> f64 {
        self.center + 6.0 * self.width
    }
}

/// Uniform drive `E(t) = r(t) E_ω cos ωt`, `H(t) = r(t) H_ω cos ωt`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Drive {
    pub e_amplitude: f64,
    pub h_amplitude: f64,
    pub frequency: f64,
    /// Without a ramp the drive starts abruptly at `t = 0`.
    pub ramp: Option<Ramp>,
}

impl Drive {
    pub fn new(e_amplitude: f64, h_amplitude: f64, frequency: f64) -> Self {
        Self {
            e_amplitude,
            h_amplitude,
            frequency,
            ramp: None,
        }
    }

    /// Plane wave in `model`: `H_ω = n_R(ω) E_ω`.
    pub fn plane_wave(model: &DispersionModel, e_amplitude: f64, frequency: f64) -> Result<Self> {
        let n = model.index(frequency)?;
        Ok(Self::new(e_amplitude, n.n_r * e_amplitude, frequency))
    }

    pub fn with_ramp(mut self, ramp: Ramp) -> Self {
        self.ramp = Some(ramp);
        self
    }

    fn envelope(&self, t: f64) -> f64 {
        self.ramp.map_or(1.0, |r| r.value(t))
    }

    pub fn e(&self, t: f64) -> f64 {
        self.envelope(t) * self.e_amplitude * (self.frequency * t).cos()
    }

    pub fn h(&self, t: f64) -> f64 {
        self.envelope(t) * self.h_amplitude * (self.frequency * t).cos()
    }

    pub fn period(&self) -> f64 {
        2.0 * PI / self.frequency
    }
}

/// Ledger entries at one instant, all per unit volume.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LedgerSample {
    pub t: f64,
    pub kinetic: f64,
    pub potential: f64,
    /// `(E² + H²)/8π`.
    pub field: f64,
    /// `γ ω_p² ẏ² / 4π`, twice the damping rate times the kinetic density.
    pub dissipated_rate: f64,
    /// Work done by the drive on the charges, `ω_p² E ẏ / 4π`.
    pub drive_power: f64,
}

impl LedgerSample {
    pub fn mechanical(&self) -> f64 {
        self.kinetic + self.potential
    }

    pub fn total(&self) -> f64 {
        self.kinetic + self.potential + self.field
    }
}

/// Integrate the driven oscillators from rest over `[0, t_end]` with step
/// `dt`, returning one sample per step (including `t = 0`).
pub fn simulate_ledger(oscillator: &Oscillator, drive: &Drive, t_end: f64, dt: f64) -> Result<Vec<LedgerSample>> {
    let (w0, gamma, wp) = (oscillator.resonance, oscillator.damping, oscillator.plasma);
    if !(drive.frequency > 0.0 && drive.frequency.is_finite()) {
        return Err(Error::invalid("frequency", "drive frequency must be positive"));
    }
    if !(drive.e_amplitude.is_finite() && drive.h_amplitude.is_finite()) {
        return Err(Error::invalid("amplitude", "must be finite"));
    }
    if gamma == 0.0 && drive.frequency == w0 {
        return Err(Error::invalid("frequency", "lossless oscillator driven on resonance has no steady state"));
    }
    if !(t_end > 0.0 && t_end.is_finite()) {
        return Err(Error::invalid("t_end", "must be positive"));
    }
    let fastest = drive.frequency.max(w0);
    if !(dt > 0.0) || 2.0 * PI / fastest / dt < MIN_STEPS_PER_PERIOD {
        return Err(Error::invalid("dt", "needs at least 40 steps per period of the drive and the resonance"));
    }
    let propagator = DampedPropagator::new(w0, gamma, dt)?;
    let steps = (t_end / dt).round() as usize;
    let scale = wp * wp / (8.0 * PI);
    let record = |t: f64, y: f64, v: f64| {
        let (e, h) = (drive.e(t), drive.h(t));
        LedgerSample {
            t,
            kinetic: scale * v * v,
            potential: scale * w0 * w0 * y * y,
            field: (e * e + h * h) / (8.0 * PI),
            dissipated_rate: 2.0 * gamma * scale * v * v,
            drive_power: 2.0 * scale * e * v,
        }
    };
    let mut out = Vec::with_capacity(steps + 1);
    let (mut y, mut v) = (0.0, 0.0);
    out.push(record(0.0, y, v));
    for i in 0..steps {
        let t = i as f64 * dt;
        (y, v) = propagator.step(y, v, t, |s| drive.e(s));
        out.push(record((i + 1) as f64 * dt, y, v));
    }
    Ok(out)
}

/// Means of the ledger entries over a window.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LedgerAverage {
    pub kinetic: f64,
    pub potential: f64,
    pub field: f64,
    pub dissipated_rate: f64,
    pub drive_power: f64,
}

impl LedgerAverage {
    pub fn total(&self) -> f64 {
        self.kinetic + self.potential + self.field
    }
}

/// Average over the last `periods` whole periods of the samples.
///
/// Uses the rectangle rule on one endpoint, which is exact for the
/// trigonometric polynomials of a steady state when the step divides the
/// period evenly.
pub fn cycle_average(samples: &[LedgerSample], period: f64, periods: usize) -> Result<LedgerAverage> {
    if samples.len() < 2 || periods == 0 {
        return Err(Error::invalid("samples", "need a time series and at least one period"));
    }
    let dt = samples[1].t - samples[0].t;
    let count = (periods as f64 * period / dt).round() as usize;
    if count == 0 || count >= samples.len() {
        return Err(Error::invalid("periods", "averaging window longer than the run"));
    }
    let window = &samples[samples.len() - count..];
    let mut avg = LedgerAverage::default();
    for s in window {
        avg.kinetic += s.kinetic;
        avg.potential += s.potential;
        avg.field += s.field;
        avg.dissipated_rate += s.dissipated_rate;
        avg.drive_power += s.drive_power;
    }
    let n = count as f64;
    avg.kinetic /= n;
    avg.potential /= n;
    avg.field /= n;
    avg.dissipated_rate /= n;
    avg.drive_power /= n;
    Ok(avg)
}
