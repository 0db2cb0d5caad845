//! GF(2)-linear maps between pattern spaces on finite windows of `F_2`.
//!
//! A pattern on a window `W` is a `u64` whose bit `i` is the binary symbol
//! at `W.words()[i]`. A `WindowMap` sends source patterns to target
//! patterns; each output bit is the XOR of a fixed set of source bits, so
//! the map is linear over `GF(2)` by construction.

use group_core::{ball, FreeGroupWord, Letter, Window};

use crate::error::FactorError;

/// A GF(2)-linear map from patterns on a source window to `bits_per_site`
/// output bits at every site of a target window.
#[derive(Debug, Clone)]
pub struct WindowMap {
    source: Window,
    target: Window,
    bits_per_site: usize,
    /// `rows[s * bits_per_site + b]` masks the source bits XORed into
    /// output bit `b` at target site `s`.
    rows: Vec<u64>,
}

impl WindowMap {
    /// Builds a map from explicit XOR masks, one row per output bit.
    ///
    /// Rows are grouped per target site, `bits_per_site` at a time, in
    /// target word order.
    pub fn new(
        source: Window,
        target: Window,
        bits_per_site: usize,
        rows: Vec<u64>,
    ) -> Result<Self, FactorError> {
        let sites = source.len();
        if sites > 64 {
            return Err(FactorError::SourceTooLarge { sites });
        }
        if rows.len() != target.len() * bits_per_site {
            return Err(FactorError::RowCountMismatch {
                rows: rows.len(),
                expected: target.len() * bits_per_site,
            });
        }
        for (output, &row) in rows.iter().enumerate() {
            if sites < 64 && row >> sites != 0 {
                let bit = 63 - row.leading_zeros() as usize;
                return Err(FactorError::RuleOutOfRange { output, bit, sites });
            }
        }
        Ok(WindowMap {
            source,
            target,
            bits_per_site,
            rows,
        })
    }

    /// The source window.
    pub fn source(&self) -> &Window {
        &self.source
    }

    /// The target window.
    pub fn target(&self) -> &Window {
        &self.target
    }

    /// Output bits produced at each target site.
    pub fn bits_per_site(&self) -> usize {
        self.bits_per_site
    }

    /// Number of input bits, `|W_src|`.
    pub fn source_bits(&self) -> usize {
        self.source.len()
    }

    /// Number of output bits, `bits_per_site * |W_tgt|`.
    pub fn output_bits(&self) -> usize {
        self.rows.len()
    }

    /// The XOR masks, one per output bit.
    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    /// Applies the map; bits of `pattern` beyond the source window are
    /// ignored.
    pub fn apply(&self, pattern: u64) -> u64 {
        let mut out = 0u64;
        for (t, &row) in self.rows.iter().enumerate() {
            out |= (((row & pattern).count_ones() as u64) & 1) << t;
        }
        out
    }

    /// Dimension of the image as a GF(2) subspace.
    pub fn gf2_rank(&self) -> usize {
        gf2_rank(&self.rows)
    }

    /// Whether a source pattern maps to the all-zero target pattern.
    pub fn kernel_contains(&self, pattern: u64) -> bool {
        self.apply(pattern) == 0
    }
}

/// Rank of a set of `u64` XOR masks over GF(2) by bit-packed elimination.
pub fn gf2_rank(rows: &[u64]) -> usize {
    let mut basis = [0u64; 64];
    let mut rank = 0;
    for &row in rows {
        let mut r = row;
        while r != 0 {
            let lead = 63 - r.leading_zeros() as usize;
            if basis[lead] == 0 {
                basis[lead] = r;
                rank += 1;
                break;
            }
            r ^= basis[lead];
        }
    }
    rank
}

/// The Ornstein-Weiss doubling map on finite windows: at every target site
/// `g` of `B(r)` the output is the pair `(x_g + x_{ga}, x_g + x_{gb})`,
/// read from the source ball `B(r+1)`.
///
/// Supported for `r <= 2`; the source ball `B(3)` has 53 sites and `B(4)`
/// no longer fits a 64-bit pattern.
pub fn ow_window_map(r: u32) -> Result<WindowMap, FactorError> {
    if r > 2 {
        return Err(FactorError::RadiusOutOfRange { radius: r, max: 2 });
    }
    let source = ball(r + 1, 2)?;
    let target = ball(r, 2)?;
    let gen_a = FreeGroupWord::from_letters([Letter {
        gen: 1,
        inverse: false,
    }]);
    let gen_b = FreeGroupWord::from_letters([Letter {
        gen: 2,
        inverse: false,
    }]);
    let mut rows = Vec::with_capacity(target.len() * 2);
    for g in target.words() {
        let here = source
            .position(g)
            .expect("target ball is inside the source ball");
        for step in [&gen_a, &gen_b] {
            let shifted = source
                .position(&g.multiply(step))
                .expect("one-step neighbors of B(r) lie in B(r+1)");
            rows.push((1u64 << here) | (1u64 << shifted));
        }
    }
    WindowMap::new(source, target, 2, rows)
}
