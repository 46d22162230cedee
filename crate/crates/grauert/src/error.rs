use thiserror::Error;

/// Error taxonomy for the whole crate.
///
/// `Domain` covers arguments outside a function's mathematical domain
/// (non-positive radii, points on the deleted set, tangent dimension
/// mismatches). `Quadrature` and `Search` carry enough context to tell
/// how far a numeric routine got before giving up.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("quadrature did not converge: achieved {achieved:.3e}, requested {requested:.3e}")]
    Quadrature { achieved: f64, requested: f64 },

    #[error("search failed: {0}")]
    Search(String),

    #[error("numeric error: {0}")]
    Numeric(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Malformed or out-of-domain input.
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Numerical breakdown (overflow, failed factorization, lost
    /// positivity) on otherwise valid input.
    pub fn numeric(msg: impl Into<String>) -> Self {
        Error::Numeric(msg.into())
    }
}
