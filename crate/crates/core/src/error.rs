use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the analysis, simulation and experiment layers.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter is outside its legal domain.
    #[error("invalid parameter `{name}`: {reason}")]
    Parameter { name: String, reason: String },

    /// The primary queue is not stable (λ ≥ μ2), so stationary quantities do not exist.
    #[error("unstable primary queue: arrival rate {lambda} is not below the saturated service rate {mu2}")]
    Unstable { lambda: f64, mu2: f64 },

    /// The model is well-formed but the queue analysis is undefined.
    #[error("degenerate model: {0}")]
    Degenerate(String),

    /// A numerical routine failed to reach its accuracy target.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// A configuration file could not be parsed.
    #[error("{}: {message}", path.display())]
    Parse { path: PathBuf, message: String },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn param(name: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Parameter {
            name: name.into(),
            reason: reason.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Checks that `value` is a probability in `[0, 1]`.
pub(crate) fn check_probability(name: &str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::param(name, format!("{value} is not in [0, 1]")))
    }
}
