use alloc::string::String;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid {field}: {reason}")]
    Validation { field: &'static str, reason: String },

    #[error("frequency {omega} outside tabulated range [{min}, {max}]")]
    OutOfRange { omega: f64, min: f64, max: f64 },

    #[error("medium absorbs at omega = {omega} (loss ratio {ratio:.3e} above {threshold:.1e}); use the absorbing-medium energy instead")]
    Absorbing {
        omega: f64,
        ratio: f64,
        threshold: f64,
    },

    #[error("anomalous dispersion at omega = {omega}: d(omega n_R)/d omega = {derivative:.3e}")]
    AnomalousDispersion { omega: f64, derivative: f64 },

    #[error("integral diverges: {0}")]
    Divergent(&'static str),

    #[error("quadrature did not converge: estimate {value:.6e}, error {error:.3e}")]
    Tolerance { value: f64, error: f64 },
}

pub type Result<T> = core::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> Self {
        Error::Validation {
            field,
            reason: reason.into(),
        }
    }
}
