use freqkal::motion::CoreError;
use freqkal::synth::SynthError;
use thiserror::Error;

/// Exit-code contract: 0 ok, 2 usage, 3 I/O or parse, 4 numerical
/// (non-finite produced by computation), 5 shape mismatch between inputs.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Numerical(String),
    #[error("{0}")]
    Shape(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
            CliError::Numerical(_) => 4,
            CliError::Shape(_) => 5,
        }
    }

    pub fn io(context: &str, err: impl std::fmt::Display) -> CliError {
        CliError::Io(format!("{context}: {err}"))
    }
}

/// Errors raised while a computation runs on already-loaded inputs.
/// Shape-class problems map to 5, everything numeric to 4.
pub fn computation_error(context: &str, err: impl Into<ComputeKind>) -> CliError {
    match err.into() {
        ComputeKind::Shape(msg) => CliError::Shape(format!("{context}: {msg}")),
        ComputeKind::Numerical(msg) => CliError::Numerical(format!("{context}: {msg}")),
    }
}

pub enum ComputeKind {
    Shape(String),
    Numerical(String),
}

impl From<CoreError> for ComputeKind {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::NonFinite { .. } => ComputeKind::Numerical(e.to_string()),
            _ => ComputeKind::Shape(e.to_string()),
        }
    }
}

impl From<freqkal::metrics::MetricsError> for ComputeKind {
    fn from(e: freqkal::metrics::MetricsError) -> Self {
        ComputeKind::Shape(e.to_string())
    }
}

impl From<SynthError> for ComputeKind {
    fn from(e: SynthError) -> Self {
        match e {
            SynthError::Motion(CoreError::NonFinite { .. }) => {
                ComputeKind::Numerical(e.to_string())
            }
            _ => ComputeKind::Shape(e.to_string()),
        }
    }
}

/// Refinement failures: bad knob values are usage errors, non-finite values
/// mid-computation are numerical, everything else is a shape problem.
pub fn kalman_error(context: &str, e: freqkal::kalman::KalmanError) -> CliError {
    use freqkal::kalman::KalmanError as K;
    use freqkal::spectral::SpectralError;
    match e {
        K::Config(_) | K::NonPositiveVariance { .. } | K::CutoffOutOfRange { .. } => {
            CliError::Usage(format!("{context}: {e}"))
        }
        K::Motion(CoreError::NonFinite { .. })
        | K::Spectral(SpectralError::NonFinite { .. }) => {
            CliError::Numerical(format!("{context}: {e}"))
        }
        other => CliError::Shape(format!("{context}: {other}")),
    }
}
