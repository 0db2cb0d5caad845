//! Microstate counting on finite models: a microstate for a target process
//! is a vertex labeling `φ: V → K` whose empirical pullback statistics on
//! the window `B(r)` lie within total variation `δ` of the target's
//! marginal, and the normalized log-count of microstates is the finite-n
//! shadow of sofic entropy.
//!
//! Counts come three ways: exact enumeration below a cap, seeded
//! Monte-Carlo estimation with a binomial confidence half-width, and the
//! closed-form annealed expectation over uniformly random permutation
//! models, whose per-vertex logarithm recovers the f-invariant.

mod annealed;
mod count;
mod error;
mod pullback;
mod query;
mod table;

pub use annealed::{annealed_count, AnnealedCount};
pub use count::{
    count_microstates_exact, estimate_microstates_mc, is_microstate, McEstimate, DEFAULT_ENUM_CAP,
};
pub use error::MicrostateError;
pub use pullback::{empirical_distribution, pullback_name, total_variation};
pub use query::{Labeling, MicrostateQuery};
pub use table::{sofic_entropy_estimate, CountMethod, EntropyRow, EntropyTable};
