use thiserror::Error;

/// Errors raised by the curve computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or out-of-contract input (set literals, curve data, parameters).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The saturation search for a Macaulayfication slice was still growing at its bound.
    #[error("saturation incomplete in degree {degree} at shift bound {m_max}")]
    SaturationIncomplete { degree: usize, m_max: u64 },

    /// A criterion or formula was asked about an instance outside its hypotheses.
    #[error("inapplicable: {0}")]
    Inapplicable(String),

    /// Two routes that are proven equal disagreed, or a proven bound was exceeded.
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
