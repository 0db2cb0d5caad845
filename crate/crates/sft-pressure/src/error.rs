use entropy_core::EntropyError;
use markov_f::MarkovError;
use sofic::SoficError;
use thiserror::Error;

/// Errors from subshift specs, partition functions, and the optimizer.
#[derive(Debug, Error)]
pub enum PressureError {
    #[error("bad spec: {0}")]
    BadSpec(String),
    #[error("rank {got} does not match model rank {model}")]
    RankMismatch { model: u8, got: u8 },
    #[error("alphabet size {got} does not match {expected}")]
    AlphabetMismatch { expected: usize, got: usize },
    #[error("label {label} outside alphabet of size {alphabet}")]
    LabelOutOfRange { label: u8, alphabet: usize },
    #[error("labeling has {labels} values for {vertices} vertices")]
    LabelingSizeMismatch { labels: usize, vertices: usize },
    #[error("enumeration needs {needed} labelings, cap is {cap}")]
    CapExceeded { needed: u128, cap: u64 },
    #[error("distribution has {got} weights, expected {expected}")]
    DistributionSizeMismatch { expected: u128, got: usize },
    #[error("weights are not a probability distribution: {0}")]
    BadDistribution(String),
    #[error("optimizer found no feasible stationary chain: {0}")]
    Infeasible(String),
    #[error(transparent)]
    Entropy(#[from] EntropyError),
    #[error(transparent)]
    Markov(#[from] MarkovError),
    #[error(transparent)]
    Sofic(#[from] SoficError),
}
