use rayon::prelude::*;

use crate::error::MahlerError;
use crate::poly::LaurentPoly;

/// Total grid evaluations are capped at `2^26`.
pub const QUADRATURE_CAP: u64 = 1 << 26;

/// Grid points where `|f|` falls below this floor are excluded as
/// numerically singular and counted instead.
pub const SINGULAR_FLOOR: f64 = 1e-14;

// Chunk of the flattened grid each worker sums; chunk partials are merged
// in a fixed pairwise tree, so the value is independent of thread count.
const CHUNK: u64 = 1 << 12;

// Excluding more than this share of points flags the estimate.
const LOW_CONFIDENCE_SHARE: f64 = 1e-3;

/// A midpoint-rule estimate of `∫_{T^d} ln|f(e^{2πiθ})| dθ`.
#[derive(Debug, Clone)]
pub struct Quadrature {
    pub value: f64,
    /// Points skipped because `|f| < SINGULAR_FLOOR`.
    pub excluded: u64,
    pub total_points: u64,
    /// Set when over 0.1% of points were excluded: `f` vanishes on or
    /// near the torus and the midpoint rule converges slowly there.
    pub low_confidence: bool,
}

/// Averages `ln|f|` over the uniform grid `θ_j = (j + 1/2)/grid` per axis;
/// the half-cell offset keeps roots of unity off the sample set.
pub fn log_mahler_quadrature(
    f: &LaurentPoly,
    grid: usize,
) -> Result<Quadrature, MahlerError> {
    if f.is_zero() {
        return Err(MahlerError::ZeroPolynomial);
    }
    if grid < 16 {
        return Err(MahlerError::BadGrid { grid });
    }
    let d = f.vars();
    let wide = (grid as u128).pow(d as u32);
    if wide > u128::from(QUADRATURE_CAP) {
        return Err(MahlerError::GridTooLarge {
            points: wide,
            cap: QUADRATURE_CAP,
        });
    }
    let total_points = wide as u64;

    let chunks = total_points.div_ceil(CHUNK);
    let partials: Vec<(f64, u64)> = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let start = chunk * CHUNK;
            let stop = (start + CHUNK).min(total_points);
            let mut theta = vec![0.0; d];
            let mut sum = 0.0;
            let mut compensation = 0.0;
            let mut excluded = 0u64;
            for index in start..stop {
                decode_theta(index, grid, &mut theta);
                let magnitude = f
                    .eval_torus(&theta)
                    .expect("grid point matches variable count")
                    .norm();
                if magnitude < SINGULAR_FLOOR {
                    excluded += 1;
                    continue;
                }
                let term = magnitude.ln();
                let fused = sum + term;
                compensation += if sum.abs() >= term.abs() {
                    (sum - fused) + term
                } else {
                    (term - fused) + sum
                };
                sum = fused;
            }
            (sum + compensation, excluded)
        })
        .collect();

    let excluded: u64 = partials.iter().map(|&(_, e)| e).sum();
    let included = total_points - excluded;
    if included == 0 {
        return Err(MahlerError::BadPoly(
            "every grid point fell below the singular floor".into(),
        ));
    }
    let value = tree_sum(partials.iter().map(|&(s, _)| s).collect()) / included as f64;
    Ok(Quadrature {
        value,
        excluded,
        total_points,
        low_confidence: excluded as f64 > LOW_CONFIDENCE_SHARE * total_points as f64,
    })
}

/// Mixed-radix digits of `index`, first variable most significant, each
/// mapped to the midpoint `(digit + 1/2)/grid`.
fn decode_theta(index: u64, grid: usize, theta: &mut [f64]) {
    let mut rest = index;
    for slot in theta.iter_mut().rev() {
        let digit = rest % grid as u64;
        rest /= grid as u64;
        *slot = (digit as f64 + 0.5) / grid as f64;
    }
}

/// Sums adjacent pairs until one value remains; a fixed reduction shape
/// regardless of how the partials were produced.
fn tree_sum(mut level: Vec<f64>) -> f64 {
    while level.len() > 1 {
        level = level.chunks(2).map(|pair| pair.iter().sum()).collect();
    }
    level.first().copied().unwrap_or(0.0)
}
