use thiserror::Error;

/// Errors raised by the numerical routines and the command-line front end.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the function.
    #[error("domain error: {0}")]
    Domain(String),

    /// Incompatible options, e.g. an averaged centering requested for GOE.
    #[error("usage error: {0}")]
    Usage(String),

    /// A quadrature or determinant did not reach the requested accuracy.
    #[error("accuracy error: {0}")]
    Accuracy(String),

    /// A computation produced a value that cannot be interpreted,
    /// such as a clearly negative GOE determinant.
    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
