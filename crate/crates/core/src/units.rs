//! Natural units. Every formula in the crate is written with these constants
//! spelled out so that the powers of `ħ` and `c` stay visible.

/// Reduced Planck constant.
pub const HBAR: f64 = 1.0;
/// Speed of light.
pub const C: f64 = 1.0;
/// Boltzmann constant.
pub const K_B: f64 = 1.0;

/// Number of transverse polarizations summed over in an isotropic medium.
pub const POLARIZATIONS: f64 = 2.0;

pub use core::f64::consts::PI;
