use num_complex::Complex64;
use num_traits::Float;

use crate::{Error, Result};

/// Principal-branch refractive index `n = n_R + i n_I` with `n_R ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RefractiveIndex {
    pub n_r: f64,
    pub n_i: f64,
    /// Set when `ε` lies on the negative real axis: the wave is purely
    /// evanescent and `n_R = 0`.
    pub evanescent: bool,
}

impl RefractiveIndex {
    pub fn complex(&self) -> Complex64 {
        Complex64::new(self.n_r, self.n_i)
    }
}

/// Square root of a complex permittivity (or `εμ`) on the branch `n_R ≥ 0`.
///
/// Both parts are formed without cancellation, so `n_R² - n_I² = ε_R` and
/// `2 n_R n_I = ε_I` hold to rounding.
pub fn refractive_index(eps: Complex64) -> Result<RefractiveIndex> {
    if !(eps.re.is_finite() && eps.im.is_finite()) {
        return Err(Error::invalid("permittivity", "must be finite"));
    }
    if eps.re == 0.0 && eps.im == 0.0 {
        return Err(Error::invalid("permittivity", "ε = 0 has no refractive index"));
    }
    if eps.im == 0.0 && eps.re < 0.0 {
        return Ok(RefractiveIndex {
            n_r: 0.0,
            n_i: (-eps.re).sqrt(),
            evanescent: true,
        });
    }
    let modulus = eps.re.hypot(eps.im);
    let t = (0.5 * (modulus + eps.re.abs())).sqrt();
    let (n_r, n_i) = if eps.re >= 0.0 {
        (t, eps.im / (2.0 * t))
    } else {
        (eps.im.abs() / (2.0 * t), t.copysign(eps.im))
    };
    Ok(RefractiveIndex {
        n_r,
        n_i,
        evanescent: false,
    })
}
