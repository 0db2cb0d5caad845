use thiserror::Error;

/// Errors from model construction and diagnostics.
#[derive(Debug, Error)]
pub enum SoficError {
    /// Generator image is not a permutation of `{0..n-1}`.
    #[error("generator {gen}: {detail}")]
    BadPermutation { gen: u8, detail: String },
    /// Two models must act on the same vertex count.
    #[error("vertex counts differ: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    /// Two models must share a rank.
    #[error("ranks differ: {left} vs {right}")]
    RankMismatch { left: u8, right: u8 },
    /// Trace and multiplicativity windows must not contain the identity.
    #[error("window contains the identity word")]
    WindowContainsIdentity,
    /// Sequences list models with strictly increasing vertex counts.
    #[error("vertex counts must strictly increase: {previous} then {next}")]
    NonIncreasingSizes { previous: usize, next: usize },
    /// An imported word table has no entry for a required word.
    #[error("imported table has no entry for word `{word}`")]
    MissingWordEntry { word: String },
    /// Malformed inputs that fit no other variant.
    #[error("{0}")]
    BadSpec(String),
}
