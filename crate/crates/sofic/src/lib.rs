//! Finite models of free groups and their quality diagnostics.
//!
//! A `SoficMap` stores one permutation of `{0..n-1}` per positive generator
//! and extends to reduced words by composition, so it is a homomorphism
//! `F_r → Sym(n)` by construction. Diagnostics measure how well such a
//! model approximates the group: `check_trace` (almost-freeness),
//! `check_multiplicative` (exercised on imported near-homomorphisms),
//! `bs_local_fraction` (how many vertices see an exact Cayley-tree ball),
//! `edit_distance` between models, and `expander_witness` (spectral gap of
//! the underlying `2r`-regular walk).

mod diagnostics;
mod error;
mod map;
mod spectral;
mod table;

pub use diagnostics::{
    bs_local_fraction, check_multiplicative, check_trace, edit_distance, MultiplicativeReport,
    TraceReport,
};
pub use error::SoficError;
pub use map::{
    amplify, cyclic_model, disjoint_union, random_free_model, SoficMap, SoficSequence,
};
pub use spectral::{expander_witness, ExpanderWitness};
pub use table::{ImportedWordTable, WordAction};
