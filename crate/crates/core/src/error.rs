//! Error taxonomy shared across the library.
//!
//! The split mirrors how callers must react: `Domain` and `Usage` are caller
//! bugs, `Regime` is a refused configuration (the message names the violated
//! inequality so the CLI can surface it verbatim), `Resolution` asks for a
//! finer driver sample, and `Numerical` covers runtime failures of the
//! algorithms themselves (e.g. an indefinite circulant embedding).

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A mathematical precondition on the arguments failed (e.g. t < 0,
    /// unordered simplex tuple, exponent out of range).
    #[error("domain error: {0}")]
    Domain(String),

    /// The call mixes incompatible objects (e.g. an element from a different
    /// scale model) or otherwise misuses the API.
    #[error("usage error: {0}")]
    Usage(String),

    /// A regime inequality required by the theory does not hold. The message
    /// always names the inequality, e.g. "eta > 2*alpha - theta".
    #[error("regime violation: {0}")]
    Regime(String),

    /// The driver path is not sampled finely enough for the requested
    /// computation; the message states the required resolution level.
    #[error("insufficient path resolution: {0}")]
    Resolution(String),

    /// The algorithm itself failed at runtime (indefinite embedding,
    /// nonpositive data in a log fit, Picard divergence, ...).
    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
