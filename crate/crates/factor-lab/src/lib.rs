//! Finite-window verification of GF(2) factor maps on the free group `F_2`.
//!
//! Two constructions are checked by exhaustive pattern enumeration: the
//! doubling map `x ↦ (x_g + x_{ga}, x_g + x_{gb})_g` from the binary full
//! shift onto the 4-symbol full shift, and the map `x ↦ (x_g + x_{gb})_g`
//! from the `<a>`-coset-constant system (f-invariant 0) onto the binary
//! full shift. Each check pushes the uniform measure on source window
//! patterns through the map and reports fiber sizes and GF(2) rank.
//!
//! Every result is window-level evidence about restrictions to finite
//! balls, never a proof about the infinite systems.

mod error;
mod map;
mod pushforward;
mod variant;

pub use error::FactorError;
pub use map::{gf2_rank, ow_window_map, WindowMap};
pub use pushforward::{pushforward_uniform, FiberReport, OUTPUT_CAP_LOG2, PATTERN_CAP_LOG2};
pub use variant::{variant_factor_check, variant_window_map, VariantReport, VARIANT_CAP_LOG2};
