use thiserror::Error;

/// Errors from polynomial construction, parsing, and entropy queries.
#[derive(Debug, Error)]
pub enum MahlerError {
    /// Entropy queries need a nonzero polynomial.
    #[error("the zero polynomial has no log-Mahler measure")]
    ZeroPolynomial,
    /// The root formula only applies to one variable.
    #[error("root formula needs one variable, polynomial has {vars}")]
    NotUnivariate { vars: usize },
    /// Quadrature grids below 16 points per axis resolve nothing.
    #[error("grid {grid} is below the minimum of 16 points per axis")]
    BadGrid { grid: usize },
    /// Total grid size `grid^d` is capped to keep evaluation bounded.
    #[error("grid needs {points} evaluations, cap is {cap}")]
    GridTooLarge { points: u128, cap: u64 },
    /// Integer coefficients overflowed during a product or power.
    #[error("coefficient overflow: {0}")]
    Overflow(String),
    /// Unreadable polynomial text.
    #[error("parse error at byte {at}: {detail}")]
    Parse { at: usize, detail: String },
    /// Malformed polynomials that fit no other variant.
    #[error("{0}")]
    BadPoly(String),
}
