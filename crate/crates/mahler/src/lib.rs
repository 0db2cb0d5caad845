//! Entropy of principal algebraic `Z^d`-actions via the log-Mahler
//! measure `∫_{T^d} ln|f(e^{2πiθ})| dθ`.
//!
//! `LaurentPoly` holds an integer Laurent polynomial in up to four
//! variables, readable from text like `x^2 - x - 1`. Two independent
//! routes compute its measure: `log_mahler_quadrature` averages `ln|f|`
//! over a half-cell-offset midpoint grid for any `d`, and
//! `log_mahler_roots` evaluates the exact `d = 1` formula
//! `ln|c_s| + Σ max(0, ln|r_i|)` with companion-matrix eigenvalues.
//! `multiplicativity_check` confirms `M(fg) = M(f) + M(g)`, the shape the
//! addition formula for algebraic actions takes here.

mod error;
mod poly;
mod quadrature;
mod roots;

pub use error::MahlerError;
pub use poly::{LaurentPoly, MAX_VARS};
pub use quadrature::{log_mahler_quadrature, Quadrature, QUADRATURE_CAP, SINGULAR_FLOOR};
pub use roots::{
    log_mahler_roots, multiplicativity_check, seeded_integer_quadratics, RootsReport,
    UNIT_BAND,
};
