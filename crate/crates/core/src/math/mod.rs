//! Numerical building blocks shared by the physics modules.

pub mod diff;
pub mod fft;
pub mod interp;
pub mod propagator;
pub mod quadrature;
pub mod stats;

pub use propagator::DampedPropagator;
pub use quadrature::{Estimate, QuadValue, Quadrature};
pub use stats::RunningStats;

/// `n` points spaced uniformly in `ln ω` over `[lo, hi]`, endpoints included.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> alloc::vec::Vec<f64> {
    use num_traits::Float;
    assert!(n >= 2 && lo > 0.0 && hi > lo, "log_grid needs 0 < lo < hi and n >= 2");
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| {
            if i == 0 {
                lo
            } else if i == n - 1 {
                hi
            } else {
                (a + (b - a) * i as f64 / (n - 1) as f64).exp()
            }
        })
        .collect()
}

/// `n` points spaced uniformly over `[lo, hi]`, endpoints included.
pub fn linear_grid(lo: f64, hi: f64, n: usize) -> alloc::vec::Vec<f64> {
    assert!(n >= 2 && hi > lo, "linear_grid needs lo < hi and n >= 2");
    (0..n)
        .map(|i| {
            if i == n - 1 {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (n - 1) as f64
            }
        })
        .collect()
}
