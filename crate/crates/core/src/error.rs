use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{what}: {requested} exceeds the configured cap of {cap}")]
    Capacity {
        what: &'static str,
        requested: usize,
        cap: usize,
    },

    #[error("no eigenvalue has a negligible imaginary part (smallest |Im| = {min_imag:e}); the spectrum is not real")]
    NoRealSpectrum { min_imag: f64 },

    #[error("operator norm {norm:.6} of the scaled Hamiltonian exceeds 1/2; rescale with a larger effective one-norm")]
    RescaleRequired { norm: f64 },

    #[error("linear system is singular to working precision (estimated condition number {condition:e})")]
    SingularSystem { condition: f64 },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("bound violated: {0}")]
    BoundViolated(String),

    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for errors caused by user input rather than by this library.
    pub fn is_user_error(&self) -> bool {
        !matches!(self, Error::Numerical(_) | Error::BoundViolated(_))
    }
}
