//! Permittivity and permeability models and the optical quantities derived
//! from them.
//!
//! Parametric models satisfy `ε(-ω) = ε*(ω)` exactly. The Lorentz form is
//! `ε(ω) = 1 - ω_p² / (ω² - ω₀² + iγω)`; Drude is the `ω₀ = 0` case.

mod index;
mod kramers_kronig;
mod model;

pub use index::{refractive_index, RefractiveIndex};
pub use kramers_kronig::{kramers_kronig_check, kramers_kronig_residual, KramersKronigReport, DEFAULT_TOLERANCE as KRAMERS_KRONIG_TOLERANCE};
pub use model::{DispersionModel, OpticalResponse, Oscillator, ResponseModel, TabulatedResponse};
