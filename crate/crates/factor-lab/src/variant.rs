//! Window check of the zero-f-invariant system that factors 2-to-1 onto
//! the binary Bernoulli shift.
//!
//! The source system consists of binary configurations constant on left
//! cosets of `<a>`; the factor map is `Φ(x)_g = x_g + x_{gb}`. On a window
//! the degrees of freedom are the coset segments meeting it, so the uniform
//! source measure is uniform over segment assignments, and the check pushes
//! it through `Φ` exhaustively.

use std::collections::BTreeMap;

use group_core::{ball, FreeGroupWord, Letter, Window};
use markov_f::{f_markov, models::copy_uniform_chain};
use serde::Serialize;

use crate::error::FactorError;
use crate::map::WindowMap;
use crate::pushforward::count_images;

/// Largest admissible `log2` of the segment-assignment space; `B(3)` meets
/// 27 coset segments, so radius 2 needs `2^27` patterns.
pub const VARIANT_CAP_LOG2: u32 = 27;

/// Exhaustive evidence that the coset-constant system factors onto the
/// uniform binary shift at window level.
#[derive(Debug, Clone, Serialize)]
pub struct VariantReport {
    /// Target window radius; the source ball is one larger.
    pub radius: u32,
    /// Degrees of freedom: `<a>`-coset segments meeting the source ball.
    pub coset_segments: usize,
    /// Rank of the segment-space linear map.
    pub gf2_rank: usize,
    /// Fiber size -> number of target patterns with that fiber size.
    pub fiber_histogram: BTreeMap<u64, u64>,
    /// The pushforward is the full uniform measure on target patterns.
    pub uniform_on_target: bool,
    /// f-invariant of the source system's defining Markov chain.
    pub f_value: f64,
    /// What the numbers certify.
    pub scope: &'static str,
}

/// The map `Φ(x)_g = x_g + x_{gb}` on target ball `B(r)`, written in
/// segment coordinates: the source window holds one representative per
/// `<a>`-coset segment meeting `B(r+1)`, and each source bit assigns that
/// whole segment.
pub fn variant_window_map(r: u32) -> Result<WindowMap, FactorError> {
    if r > 2 {
        return Err(FactorError::RadiusOutOfRange { radius: r, max: 2 });
    }
    let ambient = ball(r + 1, 2)?;
    let target = ball(r, 2)?;
    let reps: Vec<FreeGroupWord> = ambient.words().iter().map(strip_trailing_a).collect();
    let source = Window::new(2, reps)?;
    let gen_b = FreeGroupWord::from_letters([Letter {
        gen: 2,
        inverse: false,
    }]);
    // The two segments always differ because gb lies in a different
    // <a>-coset than g, so every row has exactly two bits.
    let rows = target
        .words()
        .iter()
        .map(|g| {
            let here = source
                .position(&strip_trailing_a(g))
                .expect("segment of a B(r) site meets B(r+1)");
            let step = source
                .position(&strip_trailing_a(&g.multiply(&gen_b)))
                .expect("segment one b-step out meets B(r+1)");
            (1u64 << here) | (1u64 << step)
        })
        .collect();
    WindowMap::new(source, target, 1, rows)
}

/// Checks the variant factor map on target ball `B(r)` for `r <= 2`.
///
/// The source chain copies its symbol across `a`-edges and resamples
/// uniformly across `b`-edges; its f-invariant is exactly 0, which the
/// report carries alongside the pushforward evidence.
pub fn variant_factor_check(r: u32) -> Result<VariantReport, FactorError> {
    let m = variant_window_map(r)?;
    let counts = count_images(m.rows(), m.source_bits(), VARIANT_CAP_LOG2)?;
    let mut fiber_histogram = BTreeMap::new();
    for &c in counts.iter().filter(|&&c| c > 0) {
        *fiber_histogram.entry(c).or_insert(0u64) += 1;
    }
    let image_size: u64 = fiber_histogram.values().sum();
    let uniform_on_target = fiber_histogram.len() == 1 && image_size == counts.len() as u64;
    let f_value = f_markov(&copy_uniform_chain())?;
    Ok(VariantReport {
        radius: r,
        coset_segments: m.source_bits(),
        gf2_rank: m.gf2_rank(),
        fiber_histogram,
        uniform_on_target,
        f_value,
        scope: "window-level evidence",
    })
}

/// Representative of the `<a>`-coset segment through `w`: the word with all
/// trailing `a`-letters removed.
fn strip_trailing_a(w: &FreeGroupWord) -> FreeGroupWord {
    let letters = w.letters();
    let keep = letters
        .iter()
        .rposition(|l| l.gen != 1)
        .map_or(0, |i| i + 1);
    FreeGroupWord::from_letters(letters[..keep].iter().copied())
}
