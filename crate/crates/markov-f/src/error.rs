use entropy_core::EntropyError;
use group_core::WindowError;
use thiserror::Error;

/// Errors from chain validation and marginal computation.
#[derive(Debug, Error)]
pub enum MarkovError {
    #[error(transparent)]
    Entropy(#[from] EntropyError),
    #[error(transparent)]
    Window(#[from] WindowError),
    #[error("measure has rank {measure} but window has rank {window}")]
    RankMismatch { measure: u8, window: u8 },
    #[error("pattern space of {patterns} entries exceeds the cap of {cap}")]
    WindowTooLarge { patterns: u128, cap: u64 },
    #[error(
        "edge law for generator {generator}: {side} marginal deviates from pi \
         by {deviation:.3e} at symbol {symbol}"
    )]
    MarginalInconsistent {
        generator: u8,
        side: &'static str,
        symbol: usize,
        deviation: f64,
    },
    #[error("invalid specification: {0}")]
    BadSpec(String),
    #[error("coordinates must be distinct reduced words")]
    DuplicateCoordinate,
    #[error("window is empty")]
    EmptyWindow,
}
