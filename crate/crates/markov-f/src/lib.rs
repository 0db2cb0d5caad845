//! Stationary Markov chains over free groups and exact evaluation of the
//! f-invariant `F(X) = −(r−1)H(X_e) + Σ_i H(X_e | X_{s_i})`.
//!
//! The window functional `F_window` evaluates F on the refined partition
//! `P^W = ⋁_{w∈W} w⁻¹P`; for a Markov chain it is constant (equal to
//! `f_markov`) on every connected window containing the identity, and it
//! is non-increasing along increasing connected windows for projected
//! (hidden-Markov) sources.
//!
//! Joint laws on arbitrary finite coordinate sets are computed exactly by
//! filling in the Steiner hull of the coordinates in the Cayley tree and
//! eliminating the interior nodes.

mod chain;
mod error;
mod finv;
mod hull;
mod measure;
pub mod models;

pub use chain::{MarkovChainSpec, MARGINAL_TOLERANCE};
pub use error::MarkovError;
pub use finv::{
    f_markov, f_mixture, f_trivial, f_window, naive_window_rate, window_marginal, PATTERN_CAP,
};
pub use measure::{FrozenMixture, HiddenMarkov, IidMeasure, PatternMeasure};
