use thiserror::Error;

/// Errors raised by state construction, parsing and the entanglement routes.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("at offset {offset}: expected {expected}, found {found}")]
    Syntax {
        offset: usize,
        expected: String,
        found: String,
    },

    #[error("{0}")]
    DimensionMismatch(String),

    #[error("state has zero norm")]
    ZeroState,

    #[error("amplitudes are not finite")]
    NonFinite,

    #[error("expected {expected} amplitudes, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("invalid dimensions: {0}")]
    InvalidDims(String),

    #[error("invalid subset: {0}")]
    BadSubset(String),

    #[error("dimension {dim} exceeds the cap {cap} for {what}")]
    DimTooLarge {
        what: &'static str,
        dim: usize,
        cap: usize,
    },

    #[error(
        "Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})"
    )]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("unsupported parameters: {0}")]
    UnsupportedParams(String),

    #[error("expected two qubits, got dims {0:?}")]
    WrongDims(Vec<usize>),

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("state file line {line}: {message}")]
    StateFile { line: usize, message: String },

    #[error("routes disagree: {0}")]
    RouteMismatch(String),
}

impl Error {
    /// Short machine-readable tag, used by the CLI's `error: <code>: <message>` line.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "syntax",
            Error::DimensionMismatch(_) => "dimension_mismatch",
            Error::ZeroState => "zero_state",
            Error::NonFinite => "non_finite",
            Error::LengthMismatch { .. } => "length_mismatch",
            Error::InvalidDims(_) => "invalid_dims",
            Error::BadSubset(_) => "bad_subset",
            Error::DimTooLarge { .. } => "dim_too_large",
            Error::NoConvergence { .. } => "no_convergence",
            Error::UnsupportedParams(_) => "unsupported_params",
            Error::WrongDims(_) => "wrong_dims",
            Error::InvalidDensity(_) => "invalid_density",
            Error::InvalidConfig(_) => "invalid_config",
            Error::StateFile { .. } => "state_file",
            Error::RouteMismatch(_) => "route_mismatch",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
