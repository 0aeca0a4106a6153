//! Exact step propagator for `ÿ + γẏ + ω₀²y = f(t)`.
//!
//! The homogeneous part is advanced with the closed-form solution, so a step
//! loses no accuracy to damping or stiffness. The forcing enters through its
//! convolution with the impulse response, taken by Gauss-Legendre quadrature
//! over the step (for smooth forcing) or exactly for piecewise-linear forcing.

// Node and weight tables keep their published digits.
#![allow(clippy::excessive_precision)]

use num_traits::Float;

use crate::{Error, Result};

const GL_NODES: [f64; 8] = [
    -0.960_289_856_497_536_2,
    -0.796_666_477_413_626_7,
    -0.525_532_409_916_329_0,
    -0.183_434_642_495_649_8,
    0.183_434_642_495_649_8,
    0.525_532_409_916_329_0,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_2,
];
const GL_WEIGHTS: [f64; 8] = [
    0.101_228_536_290_376_26,
    0.222_381_034_453_374_47,
    0.313_706_645_877_887_3,
    0.362_683_783_378_362_0,
    0.362_683_783_378_362_0,
    0.313_706_645_877_887_3,
    0.222_381_034_453_374_47,
    0.101_228_536_290_376_26,
];

/// Impulse response `g(s)` (with `g(0) = 0`, `ġ(0) = 1`) and its derivative.
fn impulse(omega0: f64, gamma: f64, s: f64) -> (f64, f64) {
    let half = 0.5 * gamma;
    let w2 = omega0 * omega0 - half * half;
    let x = w2 * s * s;
    // sin(ωs)/ω and cos(ωs), continued through ω² < 0 as sinh/cosh.
    let (sinc, cosine) = if x.abs() < 1e-6 {
        (s * (1.0 - x / 6.0 + x * x / 120.0), 1.0 - x / 2.0 + x * x / 24.0)
    } else if w2 > 0.0 {
        let w = w2.sqrt();
        ((w * s).sin() / w, (w * s).cos())
    } else {
        let k = (-w2).sqrt();
        ((k * s).sinh() / k, (k * s).cosh())
    };
    let decay = (-half * s).exp();
    (decay * sinc, decay * (cosine - half * sinc))
}

/// One-step propagator for a fixed `(ω₀, γ, dt)`.
#[derive(Debug, Clone)]
pub struct DampedPropagator {
    dt: f64,
    // Homogeneous map [[yy, yv], [vy, vv]].
    yy: f64,
    yv: f64,
    vy: f64,
    vv: f64,
    // Response at the quadrature nodes: g(dt - s_j) and ġ(dt - s_j), weighted.
    node_offsets: [f64; 8],
    node_g: [f64; 8],
    node_dg: [f64; 8],
    // Exact weights for forcing linear between the step's end points.
    lin_y: (f64, f64),
    lin_v: (f64, f64),
}

impl DampedPropagator {
    pub fn new(omega0: f64, gamma: f64, dt: f64) -> Result<Self> {
        if !(omega0 >= 0.0 && omega0.is_finite()) {
            return Err(Error::invalid("omega_0", "must be finite and non-negative"));
        }
        if !(gamma >= 0.0 && gamma.is_finite()) {
            return Err(Error::invalid("gamma", "must be finite and non-negative"));
        }
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::invalid("dt", "must be positive"));
        }
        let (g, dg) = impulse(omega0, gamma, dt);
        let mut node_offsets = [0.0; 8];
        let mut node_g = [0.0; 8];
        let mut node_dg = [0.0; 8];
        let mut lin_y = (0.0, 0.0);
        let mut lin_v = (0.0, 0.0);
        for j in 0..8 {
            let s = 0.5 * dt * (GL_NODES[j] + 1.0);
            let w = 0.5 * dt * GL_WEIGHTS[j];
            let (gj, dgj) = impulse(omega0, gamma, dt - s);
            node_offsets[j] = s;
            node_g[j] = w * gj;
            node_dg[j] = w * dgj;
            let frac = s / dt;
            lin_y.0 += w * gj * (1.0 - frac);
            lin_y.1 += w * gj * frac;
            lin_v.0 += w * dgj * (1.0 - frac);
            lin_v.1 += w * dgj * frac;
        }
        Ok(Self {
            dt,
            yy: dg + gamma * g,
            yv: g,
            vy: -omega0 * omega0 * g,
            vv: dg,
            node_offsets,
            node_g,
            node_dg,
            lin_y,
            lin_v,
        })
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// Free evolution over one step.
    pub fn free(&self, y: f64, v: f64) -> (f64, f64) {
        (self.yy * y + self.yv * v, self.vy * y + self.vv * v)
    }

    /// Advance `(y, v)` from `t` to `t + dt` under forcing `f`.
    pub fn step<F: FnMut(f64) -> f64>(&self, y: f64, v: f64, t: f64, mut f: F) -> (f64, f64) {
        let (mut y1, mut v1) = self.free(y, v);
        for j in 0..8 {
            let fj = f(t + self.node_offsets[j]);
            y1 += self.node_g[j] * fj;
            v1 += self.node_dg[j] * fj;
        }
        (y1, v1)
    }

    /// Advance one step with forcing linear from `f0` (start) to `f1` (end).
    pub fn step_linear(&self, y: f64, v: f64, f0: f64, f1: f64) -> (f64, f64) {
        let (y1, v1) = self.free(y, v);
        (
            y1 + self.lin_y.0 * f0 + self.lin_y.1 * f1,
            v1 + self.lin_v.0 * f0 + self.lin_v.1 * f1,
        )
    }
}
