use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: expected {expected:?}, found {found:?}")]
    DimensionMismatch { expected: Vec<usize>, found: Vec<usize> },

    #[error("subsystem index {index} out of range for {len} subsystems")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("constrained steady-state system is singular: {0}")]
    SingularSystem(String),

    #[error("steady state is not unique (alternative solve differs by trace distance {distance:e})")]
    NonUniqueSteadyState { distance: f64 },

    #[error("time integration failed: {0}")]
    IntegrationFailure(String),

    #[error("Fock cutoff not converged by the cap {cap} (last relative change {last_change:e})")]
    CutoffExhausted { cap: usize, last_change: f64 },

    #[error("single-atom reference is dark (<a^dag a>_1 = {n1:e}); radiance witness undefined")]
    ReferenceDark { n1: f64 },

    #[error("semiclassical field is singular (denominator modulus {modulus:e})")]
    SemiclassicalSingularity { modulus: f64 },

    #[error("configuration error:\n  {}", .0.join("\n  "))]
    Config(Vec<String>),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Short token used to label failed sweep rows.
    pub fn label(&self) -> &'static str {
        match self {
            Error::InvalidArgument(_) => "invalid-argument",
            Error::DimensionMismatch { .. } => "dimension-mismatch",
            Error::IndexOutOfRange { .. } => "index-out-of-range",
            Error::SingularSystem(_) => "singular-system",
            Error::NonUniqueSteadyState { .. } => "non-unique-steady-state",
            Error::IntegrationFailure(_) => "integration-failure",
            Error::CutoffExhausted { .. } => "cutoff-exhausted",
            Error::ReferenceDark { .. } => "reference-dark",
            Error::SemiclassicalSingularity { .. } => "semiclassical-singularity",
            Error::Config(_) => "config",
            Error::Io { .. } => "io",
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
