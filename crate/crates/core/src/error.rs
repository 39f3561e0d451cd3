use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole of the gamma function at {0}")]
    Pole(f64),
    #[error("series did not converge within {terms} terms: {context}")]
    Convergence { terms: usize, context: String },
    #[error("argument {re}{im:+}i lies on the branch cut: {context}")]
    Cut { re: f64, im: f64, context: String },
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("quadrature did not reach tolerance (estimate {estimate:.3e}, nodes {nodes})")]
    Quadrature { estimate: f64, nodes: usize },
    #[error("point {re}{im:+}i is within {distance:.3e} of the support of {measure}")]
    Support {
        re: f64,
        im: f64,
        distance: f64,
        measure: String,
    },
    #[error("root selection is ambiguous near a branch point: {0}")]
    Branch(String),
    #[error("hypergeometric root formula disagrees with direct root finding by {discrepancy:.3e}")]
    Sector { discrepancy: f64 },
    #[error("division by zero: {0}")]
    Zero(String),
    #[error("non-finite value produced by {0}")]
    NonFinite(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parameter(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn cut(z: num_complex::Complex64, context: impl Into<String>) -> Self {
        Error::Cut {
            re: z.re,
            im: z.im,
            context: context.into(),
        }
    }
}
