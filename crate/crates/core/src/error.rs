use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// Adaptive quadrature ran out of subdivisions. `estimate` is the best
    /// value reached, `residual` the summed local error estimate.
    #[error("quadrature did not converge: estimate {estimate}, residual {residual}")]
    Convergence { estimate: f64, residual: f64 },

    #[error("root finding did not converge: {0}")]
    RootFinding(String),

    #[error("unsupported subgraph order {k} (supported: 3..={max})")]
    UnsupportedOrder { k: usize, max: usize },

    #[error("Wishart matrix is singular: d = {d} < n = {n}")]
    SingularWishart { n: usize, d: usize },

    #[error("malformed input: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn params(msg: impl Into<String>) -> Self {
        Error::InvalidParams(msg.into())
    }

    /// Short machine-readable tag for the error class.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::InvalidParams(_) => "invalid-params",
            Error::Convergence { .. } => "convergence",
            Error::RootFinding(_) => "root-finding",
            Error::UnsupportedOrder { .. } => "unsupported-order",
            Error::SingularWishart { .. } => "singular-wishart",
            Error::Format(_) => "format",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
