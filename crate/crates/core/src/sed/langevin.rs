//! Langevin trajectories driven by spectrally synthesized colored noise.
//!
//! Each Cartesian force component is a random Fourier series
//! `F(t) = Σ_k a_k cos ω_k t + b_k sin ω_k t` with `a_k, b_k ~ N(0, S_F(ω_k) Δω)`.
//! The comb `ω_k = (k + u) Δω` carries a random offset `u ∈ [0, 1)` drawn
//! per trajectory, so the expected energy is the integral over the spectrum
//! rather than a Riemann sum on a fixed comb. The series is evaluated on the
//! time grid with one inverse FFT, then held piecewise linear between
//! samples while the propagator advances the oscillator exactly.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{stream_rng, ForceSpectrum, OscillatorParams};
use crate::math::fft::FftPlan;
use crate::math::{DampedPropagator, RunningStats};
use crate::units::PI;
use crate::{Error, Result};

/// Time grid and randomness for a Langevin run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationConfig {
    pub dt: f64,
    /// Steps after `t = 0`; a trajectory holds `n_steps + 1` samples.
    pub n_steps: usize,
    pub seed: u64,
    /// Discarded initial interval; `None` means `10/γ`.
    pub burn_in: Option<f64>,
    /// Lag, in steps, of the two autocorrelation probes.
    pub lag_steps: usize,
}

impl SimulationConfig {
    pub fn new(dt: f64, n_steps: usize, seed: u64) -> Self {
        Self {
            dt,
            n_steps,
            seed,
            burn_in: None,
            lag_steps: 0,
        }
    }

    pub fn with_burn_in(mut self, burn_in: f64) -> Self {
        self.burn_in = Some(burn_in);
        self
    }

    pub fn with_lag_steps(mut self, lag_steps: usize) -> Self {
        self.lag_steps = lag_steps;
        self
    }

    fn burn_in_steps(&self, params: &OscillatorParams) -> usize {
        let burn = self.burn_in.unwrap_or(if params.gamma > 0.0 { 10.0 / params.gamma } else { 0.0 });
        (burn / self.dt).ceil() as usize
    }
}

/// Full time series of one trajectory, three components per sample.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub dt: f64,
    pub position: Vec<[f64; 3]>,
    pub velocity: Vec<[f64; 3]>,
    pub force: Vec<[f64; 3]>,
}

/// Time averages of one trajectory after burn-in, summed over components.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TrajectorySummary {
    /// `⟨½ m ẋ²⟩`.
    pub kinetic: f64,
    /// `⟨½ m ω₀² x²⟩`.
    pub potential: f64,
    /// `⟨m γ ẋ²⟩`, power lost to damping.
    pub dissipated_power: f64,
    /// `⟨F_L · ẋ⟩`, power injected by the random force.
    pub injected_power: f64,
    /// `x(t_a)·x(t_a + τ)` at the first sample after burn-in.
    pub correlation_early: f64,
    /// `x(t_b)·x(t_b + τ)` with `t_b + τ` the last sample.
    pub correlation_late: f64,
}

impl TrajectorySummary {
    pub fn energy(&self) -> f64 {
        self.kinetic + self.potential
    }
}

/// Reusable generator of trajectories for one parameter set. Shareable
/// across threads; trajectory `i` depends only on `(seed, i)`.
#[derive(Debug, Clone)]
pub struct LangevinSampler {
    params: OscillatorParams,
    spectrum: ForceSpectrum,
    config: SimulationConfig,
    plan: FftPlan,
    propagator: DampedPropagator,
    burn_steps: usize,
}

impl LangevinSampler {
    pub fn new(params: &OscillatorParams, spectrum: &ForceSpectrum, config: &SimulationConfig) -> Result<Self> {
        params.validate()?;
        if !(config.dt > 0.0 && config.dt.is_finite()) {
            return Err(Error::invalid("dt", "must be positive"));
        }
        if !(config.dt * params.cutoff < 0.5) {
            return Err(Error::invalid("dt", "need dt·ω_c < 0.5 to resolve the noise band"));
        }
        if config.n_steps == 0 {
            return Err(Error::invalid("steps", "need at least one step"));
        }
        if params.gamma == 0.0 && !matches!(spectrum, ForceSpectrum::Silent) {
            return Err(Error::invalid("gamma", "undamped oscillator under noise has no stationary state"));
        }
        let burn_steps = config.burn_in_steps(params);
        if burn_steps + config.lag_steps >= config.n_steps {
            return Err(Error::invalid("steps", "run shorter than burn-in plus correlation lag"));
        }
        let plan = FftPlan::new((config.n_steps + 1).next_power_of_two());
        let propagator = DampedPropagator::new(params.omega0, params.gamma, config.dt)?;
        Ok(Self {
            params: *params,
            spectrum: *spectrum,
            config: *config,
            plan,
            propagator,
            burn_steps,
        })
    }

    pub fn config(&self) -> &SimulationConfig {
        &self.config
    }

    /// Index of the first sample used in averages.
    pub fn burn_in_steps(&self) -> usize {
        self.burn_steps
    }

    /// Force samples `F(j dt)`, `j = 0..=n_steps`, for one component.
    fn synthesize(&self, rng: &mut ChaCha8Rng, buffer: &mut [Complex64], out: &mut [f64]) {
        let n = self.plan.len();
        let dt = self.config.dt;
        let d_omega = 2.0 * PI / (n as f64 * dt);
        let shift: f64 = rng.random();
        buffer.iter_mut().for_each(|c| *c = Complex64::new(0.0, 0.0));
        let mut any = false;
        for (k, slot) in buffer.iter_mut().enumerate() {
            let omega = (k as f64 + shift) * d_omega;
            if omega >= self.params.cutoff {
                break;
            }
            let sigma = (self.spectrum.density(&self.params, omega) * d_omega).sqrt();
            let a: f64 = rng.sample(StandardNormal);
            let b: f64 = rng.sample(StandardNormal);
            *slot = Complex64::new(sigma * a, -sigma * b);
            any |= sigma > 0.0;
        }
        if !any {
            out.iter_mut().for_each(|f| *f = 0.0);
            return;
        }
        self.plan.inverse_unnormalized(buffer);
        for (j, f) in out.iter_mut().enumerate() {
            let phase = shift * d_omega * j as f64 * dt;
            *f = (buffer[j] * Complex64::new(phase.cos(), phase.sin())).re;
        }
    }

    fn forces(&self, index: u64) -> [Vec<f64>; 3] {
        let mut rng = stream_rng(self.config.seed, index);
        let mut buffer = vec![Complex64::new(0.0, 0.0); self.plan.len()];
        let samples = self.config.n_steps + 1;
        let mut out = [vec![0.0; samples], vec![0.0; samples], vec![0.0; samples]];
        for component in out.iter_mut() {
            self.synthesize(&mut rng, &mut buffer, component);
        }
        out
    }

    /// Integrate trajectory `index` from rest, visiting every sample.
    fn run<F: FnMut(usize, [f64; 3], [f64; 3], [f64; 3])>(&self, index: u64, mut visit: F) {
        let force = self.forces(index);
        let inv_m = 1.0 / self.params.mass;
        let mut x = [0.0; 3];
        let mut v = [0.0; 3];
        let f_at = |j: usize| [force[0][j], force[1][j], force[2][j]];
        visit(0, x, v, f_at(0));
        for j in 0..self.config.n_steps {
            for c in 0..3 {
                (x[c], v[c]) = self
                    .propagator
                    .step_linear(x[c], v[c], force[c][j] * inv_m, force[c][j + 1] * inv_m);
            }
            visit(j + 1, x, v, f_at(j + 1));
        }
    }

    /// Full time series of trajectory `index`.
    pub fn trajectory(&self, index: u64) -> Trajectory {
        let samples = self.config.n_steps + 1;
        let mut out = Trajectory {
            dt: self.config.dt,
            position: Vec::with_capacity(samples),
            velocity: Vec::with_capacity(samples),
            force: Vec::with_capacity(samples),
        };
        self.run(index, |_, x, v, f| {
            out.position.push(x);
            out.velocity.push(v);
            out.force.push(f);
        });
        out
    }

    /// Post-burn-in averages of trajectory `index` without storing it.
    pub fn summary(&self, index: u64) -> TrajectorySummary {
        let (m, w02, g) = (self.params.mass, self.params.omega0.powi(2), self.params.gamma);
        let start = self.burn_steps;
        let lag = self.config.lag_steps;
        let late = self.config.n_steps - lag;
        let mut sums = [0.0; 4];
        let mut early_x = [0.0; 3];
        let mut late_x = [0.0; 3];
        let mut out = TrajectorySummary::default();
        let dot = |a: [f64; 3], b: [f64; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
        self.run(index, |j, x, v, f| {
            if j < start {
                return;
            }
            let v2 = dot(v, v);
            sums[0] += 0.5 * m * v2;
            sums[1] += 0.5 * m * w02 * dot(x, x);
            sums[2] += m * g * v2;
            sums[3] += dot(f, v);
            if j == start {
                early_x = x;
            }
            if j == start + lag {
                out.correlation_early = dot(early_x, x);
            }
            if j == late {
                late_x = x;
            }
            if j == late + lag {
                out.correlation_late = dot(late_x, x);
            }
        });
        let count = (self.config.n_steps - start + 1) as f64;
        out.kinetic = sums[0] / count;
        out.potential = sums[1] / count;
        out.dissipated_power = sums[2] / count;
        out.injected_power = sums[3] / count;
        out
    }
}

/// Full time series of trajectory `index` of the ensemble defined by `seed`.
pub fn simulate_trajectory(
    params: &OscillatorParams,
    spectrum: &ForceSpectrum,
    config: &SimulationConfig,
    index: u64,
) -> Result<Trajectory> {
    Ok(LangevinSampler::new(params, spectrum, config)?.trajectory(index))
}

/// Post-burn-in averages of one trajectory.
pub fn summarize_trajectory(
    params: &OscillatorParams,
    spectrum: &ForceSpectrum,
    config: &SimulationConfig,
    index: u64,
) -> Result<TrajectorySummary> {
    Ok(LangevinSampler::new(params, spectrum, config)?.summary(index))
}

/// Monte-Carlo estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub value: f64,
    pub std_error: f64,
    pub n: u64,
}

impl McEstimate {
    /// Distance from `target` in standard errors.
    pub fn sigmas_from(&self, target: f64) -> f64 {
        (self.value - target).abs() / self.std_error
    }
}

impl From<RunningStats> for McEstimate {
    fn from(s: RunningStats) -> Self {
        Self {
            value: s.mean(),
            std_error: s.std_error(),
            n: s.count(),
        }
    }
}

/// Per-trajectory summaries; each trajectory is one batch for error bars.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TrajectoryEnsemble {
    pub summaries: Vec<TrajectorySummary>,
}

impl TrajectoryEnsemble {
    pub fn from_summaries(summaries: Vec<TrajectorySummary>) -> Self {
        Self { summaries }
    }

    pub fn len(&self) -> usize {
        self.summaries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summaries.is_empty()
    }

    pub fn estimate<F: Fn(&TrajectorySummary) -> f64>(&self, f: F) -> McEstimate {
        self.summaries.iter().map(f).collect::<RunningStats>().into()
    }

    pub fn energy(&self) -> McEstimate {
        self.estimate(TrajectorySummary::energy)
    }

    pub fn kinetic(&self) -> McEstimate {
        self.estimate(|s| s.kinetic)
    }

    pub fn potential(&self) -> McEstimate {
        self.estimate(|s| s.potential)
    }

    pub fn dissipated_power(&self) -> McEstimate {
        self.estimate(|s| s.dissipated_power)
    }

    pub fn injected_power(&self) -> McEstimate {
        self.estimate(|s| s.injected_power)
    }

    /// Injected minus dissipated power; zero in a stationary state.
    pub fn power_balance(&self) -> McEstimate {
        self.estimate(|s| s.injected_power - s.dissipated_power)
    }

    /// Late minus early autocorrelation probe; zero when stationary.
    pub fn stationarity(&self) -> McEstimate {
        self.estimate(|s| s.correlation_late - s.correlation_early)
    }
}

/// Run `n_traj` trajectories (indices `0..n_traj`) sequentially.
pub fn simulate_oscillator(
    params: &OscillatorParams,
    spectrum: &ForceSpectrum,
    config: &SimulationConfig,
    n_traj: usize,
) -> Result<TrajectoryEnsemble> {
    if n_traj == 0 {
        return Err(Error::invalid("traj", "need at least one trajectory"));
    }
    let sampler = LangevinSampler::new(params, spectrum, config)?;
    Ok(TrajectoryEnsemble::from_summaries(
        (0..n_traj as u64).map(|i| sampler.summary(i)).collect(),
    ))
}
