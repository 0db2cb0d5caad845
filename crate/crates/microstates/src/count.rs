use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::MicrostateError;
use crate::query::{decode_index, Labeling, MicrostateQuery, PreparedQuery};

/// Default bound on `|K|^n` for exhaustive enumeration.
pub const DEFAULT_ENUM_CAP: u64 = 1 << 24;

// Work unit for both enumeration and sampling; also the per-chunk RNG
// stream index, which makes results independent of the thread count.
const CHUNK: u64 = 1 << 12;

// Acceptance slack on the TV comparison so that exactly-on-the-boundary
// instances do not flip on the last rounding error.
const TV_SLACK: f64 = 1e-12;

/// Exact number of `(radius, delta)`-microstates of the query, by
/// enumeration of all `|K|^n` labelings (error above `cap`).
pub fn count_microstates_exact(
    query: &MicrostateQuery,
    cap: u64,
) -> Result<u64, MicrostateError> {
    let prepared = query.prepare()?;
    let total = (prepared.k as u128).pow(prepared.n as u32);
    if total > cap as u128 {
        return Err(MicrostateError::CapExceeded { needed: total, cap });
    }
    let total = total as u64;
    let chunks: Vec<(u64, u64)> = (0..total.div_ceil(CHUNK))
        .map(|c| (c * CHUNK, total.min((c + 1) * CHUNK)))
        .collect();
    let count = chunks
        .par_iter()
        .map(|&(start, stop)| {
            let mut values = vec![0u8; prepared.n];
            let mut counts = vec![0u32; prepared.pattern_count()];
            let mut hits = 0u64;
            for index in start..stop {
                decode_index(index, prepared.k as u64, &mut values);
                if prepared.empirical_tv(&values, &mut counts) <= prepared.delta + TV_SLACK {
                    hits += 1;
                }
            }
            hits
        })
        .sum();
    Ok(count)
}

/// Membership test for a single labeling.
pub fn is_microstate(query: &MicrostateQuery, phi: &Labeling) -> Result<bool, MicrostateError> {
    let prepared = query.prepare()?;
    if phi.len() != prepared.n {
        return Err(MicrostateError::LabelingSizeMismatch {
            labels: phi.len(),
            vertices: prepared.n,
        });
    }
    if let Some(&label) = phi.values().iter().find(|&&l| (l as usize) >= prepared.k) {
        return Err(MicrostateError::LabelOutOfRange {
            label,
            alphabet: prepared.k,
        });
    }
    let mut counts = vec![0u32; prepared.pattern_count()];
    Ok(prepared.empirical_tv(phi.values(), &mut counts) <= prepared.delta + TV_SLACK)
}

/// A Monte-Carlo log-count: either no sampled labeling was a microstate,
/// or an estimate with a 95% binomial confidence half-width.
#[derive(Debug, Clone, PartialEq)]
pub enum McEstimate {
    /// Zero hits: the log-count is reported as empty, never as `-inf`.
    NoHits { samples: u64 },
    Estimate {
        /// `n·ln|K| + ln(hits/samples)`.
        log_count: f64,
        /// Delta-method half-width `1.96·sqrt((1-p̂)/hits)` of `log_count`.
        halfwidth: f64,
        hits: u64,
        samples: u64,
    },
}

/// Estimates the log microstate count by uniform sampling of labelings.
///
/// Sampling is chunked with one deterministic RNG stream per chunk, so
/// the result depends only on `seed` and `samples`, not on thread count.
pub fn estimate_microstates_mc(
    query: &MicrostateQuery,
    samples: u64,
    seed: u64,
) -> Result<McEstimate, MicrostateError> {
    if samples == 0 {
        return Err(MicrostateError::NoSamples);
    }
    let prepared = query.prepare()?;
    let chunks: Vec<(u64, u64, u64)> = (0..samples.div_ceil(CHUNK))
        .map(|c| (c, c * CHUNK, samples.min((c + 1) * CHUNK)))
        .collect();
    let hits: u64 = chunks
        .par_iter()
        .map(|&(stream, start, stop)| sample_chunk(&prepared, seed, stream, stop - start))
        .sum();
    if hits == 0 {
        return Ok(McEstimate::NoHits { samples });
    }
    let p_hat = hits as f64 / samples as f64;
    let log_count = prepared.n as f64 * (prepared.k as f64).ln() + p_hat.ln();
    let halfwidth = 1.96 * ((1.0 - p_hat) / hits as f64).sqrt();
    Ok(McEstimate::Estimate {
        log_count,
        halfwidth,
        hits,
        samples,
    })
}

fn sample_chunk(prepared: &PreparedQuery, seed: u64, stream: u64, draws: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut values = vec![0u8; prepared.n];
    let mut counts = vec![0u32; prepared.pattern_count()];
    let mut hits = 0u64;
    for _ in 0..draws {
        for slot in values.iter_mut() {
            // Modulo bias is far below sampling noise for k <= 256.
            *slot = (rng.next_u64() % prepared.k as u64) as u8;
        }
        if prepared.empirical_tv(&values, &mut counts) <= prepared.delta + TV_SLACK {
            hits += 1;
        }
    }
    hits
}
