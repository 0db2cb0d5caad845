use group_core::WindowError;
use markov_f::MarkovError;
use thiserror::Error;

/// Errors from window-map construction and exhaustive pushforward runs.
#[derive(Debug, Error)]
pub enum FactorError {
    /// The source window does not fit the 64-bit pattern representation.
    #[error("source window has {sites} sites; patterns are limited to 64 bits")]
    SourceTooLarge { sites: usize },
    /// A linear rule references a source bit past the end of the window.
    #[error("rule for output bit {output} references source bit {bit}, but the source has {sites} sites")]
    RuleOutOfRange {
        output: usize,
        bit: usize,
        sites: usize,
    },
    /// The number of rows does not match the target window.
    #[error("{rows} rows supplied, target window needs {expected}")]
    RowCountMismatch { rows: usize, expected: usize },
    /// The exhaustive enumeration would exceed the pattern cap.
    #[error("enumeration needs 2^{needed_log2} patterns, cap is 2^{cap_log2}")]
    CapExceeded { needed_log2: u32, cap_log2: u32 },
    /// A radius outside the supported range for this construction.
    #[error("radius {radius} out of supported range 0..={max}")]
    RadiusOutOfRange { radius: u32, max: u32 },
    /// Window construction failed.
    #[error(transparent)]
    Window(#[from] WindowError),
    /// The Markov-chain cross-check failed to build or evaluate.
    #[error(transparent)]
    Markov(#[from] MarkovError),
}
