use nalgebra::{Complex, DMatrix};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::MahlerError;
use crate::poly::LaurentPoly;

/// Seeded quadratics reject roots with modulus in this open band around
/// the unit circle, where quadrature convergence degrades.
pub const UNIT_BAND: (f64, f64) = (0.990, 1.0101);

/// The exact one-variable log-Mahler measure and its root data.
#[derive(Debug, Clone)]
pub struct RootsReport {
    /// `ln|c_s| + Σ_i max(0, ln|r_i|)`.
    pub value: f64,
    pub log_leading: f64,
    /// Companion-matrix eigenvalues of the monomial-cleared polynomial.
    pub roots: Vec<Complex<f64>>,
    /// `|f(r_i)|` per root, a direct check on the eigensolver.
    pub residuals: Vec<f64>,
}

/// Computes `ln|c_s| + Σ max(0, ln|r_i|)` for a one-variable polynomial;
/// monomial factors `x^k` are cleared first, which changes nothing.
pub fn log_mahler_roots(f: &LaurentPoly) -> Result<RootsReport, MahlerError> {
    let coeffs = f.univariate_coefficients()?;
    let degree = coeffs.len() - 1;
    let leading = coeffs[degree] as f64;
    let log_leading = leading.abs().ln();
    if degree == 0 {
        return Ok(RootsReport {
            value: log_leading,
            log_leading,
            roots: Vec::new(),
            residuals: Vec::new(),
        });
    }
    let companion = DMatrix::from_fn(degree, degree, |i, j| {
        if j == degree - 1 {
            -(coeffs[i] as f64) / leading
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    let roots: Vec<Complex<f64>> = companion.complex_eigenvalues().iter().copied().collect();
    let residuals = roots.iter().map(|&r| evaluate(&coeffs, r).norm()).collect();
    let value = log_leading
        + roots.iter().map(|r| r.norm().ln().max(0.0)).sum::<f64>();
    Ok(RootsReport {
        value,
        log_leading,
        roots,
        residuals,
    })
}

/// `|M(fg) - M(f) - M(g)|` through the root formula; zero in exact
/// arithmetic, so the residual measures root-finding error only.
pub fn multiplicativity_check(
    f: &LaurentPoly,
    g: &LaurentPoly,
) -> Result<f64, MahlerError> {
    let total = log_mahler_roots(&f.mul(g)?)?.value;
    let parts = log_mahler_roots(f)?.value + log_mahler_roots(g)?.value;
    Ok((total - parts).abs())
}

/// `count` integer quadratics `a x^2 + b x + c` with `1 ≤ a ≤ 5`,
/// `|b|, |c| ≤ 9`, `c ≠ 0`, and no root with modulus inside `UNIT_BAND`;
/// deterministic in the seed.
pub fn seeded_integer_quadratics(count: usize, seed: u64) -> Vec<LaurentPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let a = 1 + (rng.next_u64() % 5) as i64;
        let b = (rng.next_u64() % 19) as i64 - 9;
        let c = (rng.next_u64() % 19) as i64 - 9;
        if c == 0 {
            continue;
        }
        let poly = quadratic(a, b, c);
        let report = log_mahler_roots(&poly).expect("quadratic is univariate");
        let near_circle = report.roots.iter().any(|r| {
            let modulus = r.norm();
            modulus > UNIT_BAND.0 && modulus < UNIT_BAND.1
        });
        if !near_circle {
            out.push(poly);
        }
    }
    out
}

fn quadratic(a: i64, b: i64, c: i64) -> LaurentPoly {
    let mut terms = std::collections::BTreeMap::new();
    terms.insert(vec![2], a);
    terms.insert(vec![1], b);
    terms.insert(vec![0], c);
    LaurentPoly::new(1, terms).expect("quadratic shape")
}

/// Horner evaluation of the dense integer polynomial at a complex point.
fn evaluate(coeffs: &[i64], at: Complex<f64>) -> Complex<f64> {
    let mut value = Complex::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        value = value * at + Complex::new(c as f64, 0.0);
    }
    value
}
