use entropy_core::EntropyError;
use group_core::{WindowError, WordError};
use markov_f::MarkovError;
use sofic::SoficError;
use thiserror::Error;

/// Errors from microstate queries, counting, and the annealed formula.
#[derive(Debug, Error)]
pub enum MicrostateError {
    #[error("delta {0} outside the total-variation range (0, 2]")]
    BadDelta(f64),
    #[error("target rank {target} does not match model rank {model}")]
    RankMismatch { target: u8, model: u8 },
    #[error("labeling has {labels} values for {vertices} vertices")]
    LabelingSizeMismatch { labels: usize, vertices: usize },
    #[error("label {label} outside alphabet of size {alphabet}")]
    LabelOutOfRange { label: u8, alphabet: usize },
    #[error("vertex {vertex} outside model of size {vertices}")]
    VertexOutOfRange { vertex: usize, vertices: usize },
    #[error("alphabet size {0} not supported (need 1..=256)")]
    BadAlphabet(usize),
    #[error("enumeration needs {needed} labelings, cap is {cap}")]
    CapExceeded { needed: u128, cap: u64 },
    #[error("need at least one sample")]
    NoSamples,
    #[error("counts are not integers at this n ({detail}); nearest feasible n: {}",
        suggestion.map_or("none found nearby".to_string(), |m| m.to_string()))]
    InfeasibleCounts {
        detail: String,
        suggestion: Option<u64>,
    },
    #[error(transparent)]
    Entropy(#[from] EntropyError),
    #[error(transparent)]
    Markov(#[from] MarkovError),
    #[error(transparent)]
    Sofic(#[from] SoficError),
    #[error(transparent)]
    Window(#[from] WindowError),
    #[error(transparent)]
    Word(#[from] WordError),
}
