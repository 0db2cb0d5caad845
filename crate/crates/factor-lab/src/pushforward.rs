//! Exhaustive pushforward of the uniform pattern measure through a window
//! map, with fiber-size and GF(2)-rank reporting.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::FactorError;
use crate::map::{gf2_rank, WindowMap};

/// Largest admissible `log2` of the source pattern space.
pub const PATTERN_CAP_LOG2: u32 = 24;

/// Largest admissible `log2` of the output pattern space; the fiber table
/// is dense, so this bounds memory rather than work.
pub const OUTPUT_CAP_LOG2: u32 = 20;

/// Patterns per parallel chunk.
const CHUNK_LOG2: u32 = 14;

/// What the uniform measure on source patterns looks like after the map.
#[derive(Debug, Clone, Serialize)]
pub struct FiberReport {
    /// Dimension of the image subspace.
    pub gf2_rank: usize,
    /// Number of distinct output patterns hit.
    pub image_size: u64,
    /// Fiber size -> number of image points with that fiber size.
    pub fiber_histogram: BTreeMap<u64, u64>,
    /// All nonempty fibers have the same size.
    pub is_uniform_on_image: bool,
    /// Every output pattern is hit.
    pub surjective: bool,
}

/// Pushes the uniform distribution on source patterns through the map by
/// full enumeration and reports fiber structure alongside the linear rank.
pub fn pushforward_uniform(m: &WindowMap) -> Result<FiberReport, FactorError> {
    let counts = count_images(m.rows(), m.source_bits(), PATTERN_CAP_LOG2)?;
    let mut fiber_histogram = BTreeMap::new();
    for &c in counts.iter().filter(|&&c| c > 0) {
        *fiber_histogram.entry(c).or_insert(0u64) += 1;
    }
    let image_size: u64 = fiber_histogram.values().sum();
    Ok(FiberReport {
        gf2_rank: gf2_rank(m.rows()),
        image_size,
        is_uniform_on_image: fiber_histogram.len() == 1,
        surjective: image_size == counts.len() as u64,
        fiber_histogram,
    })
}

/// XOR-parity application of mask rows to one source pattern.
pub(crate) fn apply_rows(rows: &[u64], pattern: u64) -> u64 {
    let mut out = 0u64;
    for (t, &row) in rows.iter().enumerate() {
        out |= (((row & pattern).count_ones() as u64) & 1) << t;
    }
    out
}

/// Counts how many of the `2^src_bits` source patterns land on each output
/// pattern. Chunked in parallel; integer merges make the result independent
/// of scheduling.
pub(crate) fn count_images(
    rows: &[u64],
    src_bits: usize,
    src_cap_log2: u32,
) -> Result<Vec<u64>, FactorError> {
    if src_bits as u32 > src_cap_log2 {
        return Err(FactorError::CapExceeded {
            needed_log2: src_bits as u32,
            cap_log2: src_cap_log2,
        });
    }
    let out_bits = rows.len() as u32;
    if out_bits > OUTPUT_CAP_LOG2 {
        return Err(FactorError::CapExceeded {
            needed_log2: out_bits,
            cap_log2: OUTPUT_CAP_LOG2,
        });
    }
    let total = 1u64 << src_bits;
    let slots = 1usize << out_bits;
    let chunks = total.div_ceil(1 << CHUNK_LOG2);
    // Column masks: flipping source bit `i` XORs `cols[i]` into the output.
    let cols: Vec<u64> = (0..src_bits)
        .map(|i| {
            rows.iter()
                .enumerate()
                .map(|(t, &row)| ((row >> i) & 1) << t)
                .fold(0, |acc, b| acc | b)
        })
        .collect();
    // Gray-code order visits every pattern once while flipping a single bit
    // per step, so each image costs one XOR; counts are order-independent.
    // `fold` keeps one dense table per work-stealing run, so merge cost
    // stays far below enumeration cost even with many chunks.
    let counts = (0..chunks)
        .into_par_iter()
        .fold(
            || vec![0u64; slots],
            |mut local, c| {
                let lo = c << CHUNK_LOG2;
                let hi = total.min(lo + (1 << CHUNK_LOG2));
                let mut out = apply_rows(rows, lo ^ (lo >> 1));
                local[out as usize] += 1;
                for p in lo + 1..hi {
                    out ^= cols[p.trailing_zeros() as usize];
                    local[out as usize] += 1;
                }
                local
            },
        )
        .reduce(
            || vec![0u64; slots],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    Ok(counts)
}
