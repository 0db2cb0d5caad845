use entropy_core::JointDist;
use group_core::FreeGroupWord;

use crate::chain::{renormalize, MarkovChainSpec};
use crate::error::MarkovError;
use crate::finv::PATTERN_CAP;
use crate::hull::coords_marginal_markov;

/// A stationary process described by its exact finite-window marginals.
///
/// `coords_marginal` returns the joint law of `(X_g)` for an arbitrary
/// duplicate-free list of reduced words, with axes in the order given.
pub trait PatternMeasure {
    fn rank(&self) -> u8;
    fn alphabet_size(&self) -> usize;
    fn coords_marginal(&self, coords: &[FreeGroupWord]) -> Result<JointDist, MarkovError>;
}

pub(crate) fn check_coords(coords: &[FreeGroupWord], k: usize) -> Result<(), MarkovError> {
    if coords.is_empty() {
        return Err(MarkovError::EmptyWindow);
    }
    let mut sorted: Vec<&FreeGroupWord> = coords.iter().collect();
    sorted.sort();
    if sorted.windows(2).any(|p| p[0] == p[1]) {
        return Err(MarkovError::DuplicateCoordinate);
    }
    let patterns = (k as u128).pow(coords.len() as u32);
    if patterns > PATTERN_CAP as u128 {
        return Err(MarkovError::WindowTooLarge {
            patterns,
            cap: PATTERN_CAP as u64,
        });
    }
    Ok(())
}

impl PatternMeasure for MarkovChainSpec {
    fn rank(&self) -> u8 {
        MarkovChainSpec::rank(self)
    }

    fn alphabet_size(&self) -> usize {
        MarkovChainSpec::alphabet_size(self)
    }

    fn coords_marginal(&self, coords: &[FreeGroupWord]) -> Result<JointDist, MarkovError> {
        let k = self.alphabet_size();
        check_coords(coords, k)?;
        let mut table = coords_marginal_markov(self, coords)?;
        renormalize(&mut table);
        Ok(JointDist::new(vec![k; coords.len()], table)?)
    }
}

/// An i.i.d. (Bernoulli) process: every coordinate independent with law `p`.
#[derive(Debug, Clone)]
pub struct IidMeasure {
    rank: u8,
    base: Vec<f64>,
}

impl IidMeasure {
    pub fn new(rank: u8, base: Vec<f64>) -> Result<Self, MarkovError> {
        entropy_core::ProbVector::new(base.clone())?;
        if rank == 0 {
            return Err(MarkovError::BadSpec("rank must be at least 1".into()));
        }
        Ok(IidMeasure { rank, base })
    }

    pub fn base(&self) -> &[f64] {
        &self.base
    }
}

impl PatternMeasure for IidMeasure {
    fn rank(&self) -> u8 {
        self.rank
    }

    fn alphabet_size(&self) -> usize {
        self.base.len()
    }

    fn coords_marginal(&self, coords: &[FreeGroupWord]) -> Result<JointDist, MarkovError> {
        let k = self.base.len();
        check_coords(coords, k)?;
        let m = coords.len();
        let mut table = vec![1.0; k.pow(m as u32)];
        let mut digits = vec![0usize; m];
        for slot in table.iter_mut() {
            let mut p = 1.0;
            for &d in &digits {
                p *= self.base[d];
            }
            *slot = p;
            for d in (0..m).rev() {
                digits[d] += 1;
                if digits[d] < k {
                    break;
                }
                digits[d] = 0;
            }
        }
        renormalize(&mut table);
        Ok(JointDist::new(vec![k; m], table)?)
    }
}

/// The trivial action's process: a mixture of frozen constant
/// configurations, one atom per symbol, with mixture weights `weights`.
#[derive(Debug, Clone)]
pub struct FrozenMixture {
    rank: u8,
    weights: Vec<f64>,
}

impl FrozenMixture {
    pub fn new(rank: u8, weights: Vec<f64>) -> Result<Self, MarkovError> {
        entropy_core::ProbVector::new(weights.clone())?;
        if rank == 0 {
            return Err(MarkovError::BadSpec("rank must be at least 1".into()));
        }
        Ok(FrozenMixture { rank, weights })
    }
}

impl PatternMeasure for FrozenMixture {
    fn rank(&self) -> u8 {
        self.rank
    }

    fn alphabet_size(&self) -> usize {
        self.weights.len()
    }

    fn coords_marginal(&self, coords: &[FreeGroupWord]) -> Result<JointDist, MarkovError> {
        let k = self.weights.len();
        check_coords(coords, k)?;
        let m = coords.len() as u32;
        let mut table = vec![0.0; k.pow(m)];
        for (symbol, &w) in self.weights.iter().enumerate() {
            // Constant pattern: every digit equals `symbol`.
            let mut flat = 0usize;
            for _ in 0..m {
                flat = flat * k + symbol;
            }
            table[flat] = w;
        }
        Ok(JointDist::new(vec![k; m as usize], table)?)
    }
}

/// A function of a Markov chain: marginals are computed on the hidden chain
/// and pushed forward through a per-symbol label map.
#[derive(Debug, Clone)]
pub struct HiddenMarkov {
    chain: MarkovChainSpec,
    label_map: Vec<usize>,
    output_size: usize,
}

impl HiddenMarkov {
    pub fn new(
        chain: MarkovChainSpec,
        label_map: Vec<usize>,
        output_size: usize,
    ) -> Result<Self, MarkovError> {
        if label_map.len() != chain.alphabet_size() {
            return Err(MarkovError::BadSpec(format!(
                "label map has {} entries for {} hidden symbols",
                label_map.len(),
                chain.alphabet_size()
            )));
        }
        if output_size == 0 || label_map.iter().any(|&l| l >= output_size) {
            return Err(MarkovError::BadSpec(
                "label map targets must lie below the output alphabet size".into(),
            ));
        }
        Ok(HiddenMarkov {
            chain,
            label_map,
            output_size,
        })
    }

    pub fn hidden_chain(&self) -> &MarkovChainSpec {
        &self.chain
    }
}

impl PatternMeasure for HiddenMarkov {
    fn rank(&self) -> u8 {
        self.chain.rank()
    }

    fn alphabet_size(&self) -> usize {
        self.output_size
    }

    fn coords_marginal(&self, coords: &[FreeGroupWord]) -> Result<JointDist, MarkovError> {
        // The hidden pattern space must also fit the cap.
        check_coords(coords, self.chain.alphabet_size())?;
        check_coords(coords, self.output_size)?;
        let hidden = coords_marginal_markov(&self.chain, coords)?;
        let hk = self.chain.alphabet_size();
        let ok = self.output_size;
        let m = coords.len();
        let mut table = vec![0.0; ok.pow(m as u32)];
        let mut digits = vec![0usize; m];
        for &p in &hidden {
            let mut flat = 0usize;
            for &d in &digits {
                flat = flat * ok + self.label_map[d];
            }
            table[flat] += p;
            for d in (0..m).rev() {
                digits[d] += 1;
                if digits[d] < hk {
                    break;
                }
                digits[d] = 0;
            }
        }
        renormalize(&mut table);
        Ok(JointDist::new(vec![ok; m], table)?)
    }
}
