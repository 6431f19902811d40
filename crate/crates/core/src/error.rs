use thiserror::Error;

/// Errors raised by state construction, the numerical routes and the sweep driver.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A physical parameter is outside the normalizable domain.
    #[error("domain error: {param} = {value} ({reason})")]
    Domain {
        param: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// Fock truncation too small to carry the operator algebra.
    #[error("dimension error: truncation dimension {dim} is below the minimum {min}")]
    Dimension { dim: usize, min: usize },

    /// A numerical route failed to reach its tolerance.
    #[error("convergence error in {route}: estimated error {estimate:e} exceeds tolerance {tolerance:e}")]
    Convergence {
        route: &'static str,
        estimate: f64,
        tolerance: f64,
    },

    /// Invalid sweep configuration; `field` names the offending key.
    #[error("configuration error in `{field}`: {message}")]
    Config { field: String, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn config(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            field: field.into(),
            message: message.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
