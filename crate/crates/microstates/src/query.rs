use group_core::{ball, FreeGroupWord, Window};
use markov_f::PatternMeasure;
use sofic::{SoficMap, WordAction};

use crate::error::MicrostateError;

/// A vertex labeling `φ: V → K`, symbols stored as `u8`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    values: Vec<u8>,
}

impl Labeling {
    pub fn new(values: Vec<u8>) -> Self {
        Labeling { values }
    }

    /// Constant labeling with one symbol everywhere.
    pub fn constant(n: usize, symbol: u8) -> Self {
        Labeling {
            values: vec![symbol; n],
        }
    }

    /// Decodes `index` as `n` base-`k` digits, first vertex most
    /// significant; the enumeration order of exact counting.
    pub fn from_index(index: u64, n: usize, k: usize) -> Self {
        let mut values = vec![0u8; n];
        decode_index(index, k as u64, &mut values);
        Labeling { values }
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

pub(crate) fn decode_index(mut index: u64, k: u64, out: &mut [u8]) {
    for slot in out.iter_mut().rev() {
        *slot = (index % k) as u8;
        index /= k;
    }
}

/// One microstate-counting instance: which labelings of `sigma`'s vertices
/// have empirical `B(radius)` statistics within total variation `delta`
/// of the target process.
pub struct MicrostateQuery<'a> {
    pub target: &'a dyn PatternMeasure,
    pub radius: u32,
    pub delta: f64,
    pub sigma: &'a SoficMap,
}

impl<'a> MicrostateQuery<'a> {
    pub fn new(
        target: &'a dyn PatternMeasure,
        radius: u32,
        delta: f64,
        sigma: &'a SoficMap,
    ) -> Result<Self, MicrostateError> {
        if !(delta > 0.0 && delta <= 2.0) {
            return Err(MicrostateError::BadDelta(delta));
        }
        if target.rank() != sigma.rank() {
            return Err(MicrostateError::RankMismatch {
                target: target.rank(),
                model: sigma.rank(),
            });
        }
        let k = target.alphabet_size();
        if k == 0 || k > 256 {
            return Err(MicrostateError::BadAlphabet(k));
        }
        Ok(MicrostateQuery {
            target,
            radius,
            delta,
            sigma,
        })
    }

    /// The window `B(radius)` the statistics are collected on.
    pub fn window(&self) -> Result<Window, MicrostateError> {
        Ok(ball(self.radius, self.sigma.rank())?)
    }

    /// Resolves the query into flat lookup tables for the counting loops.
    pub(crate) fn prepare(&self) -> Result<PreparedQuery, MicrostateError> {
        let window = self.window()?;
        let k = self.target.alphabet_size();
        let marginal = self.target.coords_marginal(window.words())?;
        let inverse_actions = inverse_actions(self.sigma, window.words())?;
        Ok(PreparedQuery {
            n: self.sigma.vertex_count(),
            k,
            delta: self.delta,
            target_table: marginal.table().to_vec(),
            inverse_actions,
        })
    }
}

// Per window word `w`, the full image array of `σ(w⁻¹)`, so the pullback
// digit of vertex `v` at coordinate `j` is `φ(inverse_actions[j][v])`.
pub(crate) fn inverse_actions(
    sigma: &SoficMap,
    words: &[FreeGroupWord],
) -> Result<Vec<Vec<usize>>, MicrostateError> {
    words
        .iter()
        .map(|w| Ok(sigma.word_permutation(&w.inverse())?))
        .collect()
}

/// The flattened instance: everything the hot loops index into.
pub(crate) struct PreparedQuery {
    pub n: usize,
    pub k: usize,
    pub delta: f64,
    pub target_table: Vec<f64>,
    pub inverse_actions: Vec<Vec<usize>>,
}

impl PreparedQuery {
    /// Total-variation distance between the labeling's empirical pattern
    /// histogram and the target table; `counts` is scratch of the table
    /// size.
    pub fn empirical_tv(&self, values: &[u8], counts: &mut [u32]) -> f64 {
        counts.fill(0);
        for v in 0..self.n {
            let mut flat = 0usize;
            for action in &self.inverse_actions {
                flat = flat * self.k + values[action[v]] as usize;
            }
            counts[flat] += 1;
        }
        let n = self.n as f64;
        counts
            .iter()
            .zip(&self.target_table)
            .map(|(&c, &t)| (c as f64 / n - t).abs())
            .sum()
    }

    pub fn pattern_count(&self) -> usize {
        self.target_table.len()
    }
}
