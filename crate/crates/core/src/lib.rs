//! Electromagnetic energy densities in uniform, dispersive and absorbing
//! dielectrics in thermal equilibrium.
//!
//! The crate is `no_std` (it needs `alloc`) and works in natural units
//! `ħ = c = k_B = 1`: frequencies, temperatures and energies share one scale.
//! IO, configuration and parallel sweeps live in the companion `dispersive`
//! crate.
//!
//! Layout:
//! - [`dispersion`]: permittivity/permeability models, refractive index,
//!   group velocity, Kramers-Kronig diagnostics.
//! - [`classical`]: Poynting kernel, Brillouin and quasi-monochromatic
//!   densities, uncorrelated-frequency ensembles, the driven-oscillator ledger.
//! - [`qed`]: zero-point amplitudes and the spectral energy density of a
//!   transparent medium.
//! - [`absorbing`]: regularized k-integrals, field spectra and the W₁/W₂
//!   decomposition of the total energy density of an absorbing medium.
//! - [`sed`]: quantum-Langevin oscillator ensembles and noise-polarization
//!   field sampling.

#![no_std]
// `num_traits::Float` supplies the float methods without std; whenever std is
// linked (tests, hosted dependents) inherent methods shadow it.
#![allow(unused_imports)]
// `!(x > 0.0)` is used throughout so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(any(test, feature = "std"))]
extern crate std;

pub mod absorbing;
pub mod classical;
pub mod dispersion;
mod error;
pub mod math;
pub mod qed;
pub mod sed;
pub mod thermal;
pub mod units;

pub use error::{Error, Result};

pub use num_complex::Complex64;
