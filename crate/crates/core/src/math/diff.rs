//! Central differences with Richardson extrapolation.

/// Derivative of `f` at `x` from central differences at steps `h`, `h/2`,
/// `h/4`, extrapolated to remove the `h²` and `h⁴` error terms.
pub fn richardson_derivative<F: FnMut(f64) -> f64>(mut f: F, x: f64, h: f64) -> f64 {
    let mut central = |step: f64| (f(x + step) - f(x - step)) / (2.0 * step);
    let d1 = central(h);
    let d2 = central(h / 2.0);
    let d4 = central(h / 4.0);
    let r1 = (4.0 * d2 - d1) / 3.0;
    let r2 = (4.0 * d4 - d2) / 3.0;
    (16.0 * r2 - r1) / 15.0
}
