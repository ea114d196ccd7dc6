use thiserror::Error;

/// Errors raised by the geometric engine.
#[derive(Debug, Error)]
pub enum GeomError {
    /// Malformed input data (asymmetric Gram, dimension mismatch, singular metric).
    #[error("structural error: {0}")]
    Structural(String),
    /// Out-of-range parameter (non-positive tolerance, bad count).
    #[error("parameter error: {0}")]
    Parameter(String),
    /// A construction hit a degenerate configuration (null pivot, no transversal).
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    /// A point does not lie on the hypersurface, or the constraint differential vanishes.
    #[error("point rejected: {0}")]
    OffSurface(String),
    /// An internal consistency invariant failed; indicates a bug, not bad input.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, GeomError>;
