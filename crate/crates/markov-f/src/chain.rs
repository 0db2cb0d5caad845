use std::collections::BTreeMap;

use entropy_core::{compensated_sum, JointDist, ProbVector};
use serde::{Deserialize, Serialize};

use crate::error::MarkovError;

/// Both marginals of every edge law must match `pi` within this tolerance.
pub const MARGINAL_TOLERANCE: f64 = 1e-10;

/// A stationary Markov chain over `F_r`: the law of `X_e` plus, for each
/// positive generator `s`, the joint law of `(X_e, X_s)`.
///
/// The law of `(X_e, X_{s⁻¹})` is the transpose of the stored edge law;
/// it is never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct MarkovChainSpec {
    rank: u8,
    alphabet: Vec<String>,
    pi: Vec<f64>,
    /// One `k×k` row-major joint table per positive generator.
    edge_laws: Vec<Vec<f64>>,
}

impl MarkovChainSpec {
    /// Validates normalization and the stationarity condition: both
    /// marginals of every edge law equal `pi` within `MARGINAL_TOLERANCE`.
    pub fn new(
        rank: u8,
        alphabet: Vec<String>,
        pi: Vec<f64>,
        edge_laws: Vec<Vec<f64>>,
    ) -> Result<Self, MarkovError> {
        if rank == 0 {
            return Err(MarkovError::BadSpec("rank must be at least 1".into()));
        }
        let k = alphabet.len();
        ProbVector::with_labels(pi.clone(), alphabet.clone())?;
        if edge_laws.len() != rank as usize {
            return Err(MarkovError::BadSpec(format!(
                "expected {} edge laws, got {}",
                rank,
                edge_laws.len()
            )));
        }
        for (i, law) in edge_laws.iter().enumerate() {
            let generator = (i + 1) as u8;
            let joint = JointDist::new(vec![k, k], law.clone())?;
            for (side, axis) in [("left", 0usize), ("right", 1usize)] {
                let marg = joint.marginal_weights(axis)?;
                for (symbol, (&m, &p)) in marg.iter().zip(&pi).enumerate() {
                    let deviation = (m - p).abs();
                    if deviation > MARGINAL_TOLERANCE {
                        return Err(MarkovError::MarginalInconsistent {
                            generator,
                            side,
                            symbol,
                            deviation,
                        });
                    }
                }
            }
        }
        Ok(MarkovChainSpec {
            rank,
            alphabet,
            pi,
            edge_laws,
        })
    }

    pub fn rank(&self) -> u8 {
        self.rank
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet.len()
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn pi(&self) -> &[f64] {
        &self.pi
    }

    /// Row-major joint law of `(X_e, X_s)` for positive generator `s`
    /// (1-based).
    pub fn edge_law(&self, s: u8) -> &[f64] {
        &self.edge_laws[(s - 1) as usize]
    }

    /// The stored edge law as a 2-axis `JointDist`.
    pub fn edge_law_joint(&self, s: u8) -> JointDist {
        JointDist::new(
            vec![self.alphabet.len(), self.alphabet.len()],
            self.edge_law(s).to_vec(),
        )
        .expect("edge law validated at construction")
    }

    /// Parses the serialized form `{rank, alphabet, pi, edges: {s1:..}}`.
    pub fn from_json_str(json: &str) -> Result<Self, MarkovError> {
        let file: ChainFile =
            serde_json::from_str(json).map_err(|e| MarkovError::BadSpec(e.to_string()))?;
        file.into_spec()
    }

    /// Serializes to the `{rank, alphabet, pi, edges: {s1:..}}` form.
    pub fn to_json_string(&self) -> String {
        let k = self.alphabet.len();
        let edges: BTreeMap<String, Vec<Vec<f64>>> = (0..self.rank as usize)
            .map(|i| {
                let rows: Vec<Vec<f64>> = (0..k)
                    .map(|row| self.edge_laws[i][row * k..(row + 1) * k].to_vec())
                    .collect();
                (format!("s{}", i + 1), rows)
            })
            .collect();
        let file = ChainFile {
            rank: self.rank,
            alphabet: self.alphabet.clone(),
            pi: self.pi.clone(),
            edges,
        };
        serde_json::to_string_pretty(&file).expect("chain serialization")
    }
}

/// On-disk form: `{rank, alphabet, pi, edges: {"s1": [[..],..], ...}}` with
/// row-major `K×K` tables.
#[derive(Debug, Serialize, Deserialize)]
pub struct ChainFile {
    pub rank: u8,
    pub alphabet: Vec<String>,
    pub pi: Vec<f64>,
    pub edges: BTreeMap<String, Vec<Vec<f64>>>,
}

impl ChainFile {
    pub fn into_spec(self) -> Result<MarkovChainSpec, MarkovError> {
        let k = self.alphabet.len();
        let mut edge_laws = Vec::with_capacity(self.rank as usize);
        for s in 1..=self.rank {
            let key = format!("s{s}");
            let rows = self
                .edges
                .get(&key)
                .ok_or_else(|| MarkovError::BadSpec(format!("missing edge table {key:?}")))?;
            if rows.len() != k || rows.iter().any(|r| r.len() != k) {
                return Err(MarkovError::BadSpec(format!(
                    "edge table {key:?} is not {k}x{k}"
                )));
            }
            edge_laws.push(rows.iter().flatten().copied().collect());
        }
        MarkovChainSpec::new(self.rank, self.alphabet, self.pi, edge_laws)
    }
}

/// Renormalizes a near-normalized table in place (guards against drift from
/// long compensated sums when building product tables).
pub(crate) fn renormalize(table: &mut [f64]) {
    let sum = compensated_sum(table.iter().copied());
    if sum > 0.0 {
        for v in table.iter_mut() {
            *v /= sum;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models;

    #[test]
    fn rejects_marginal_mismatch() {
        // Rows sum to (0.6, 0.4) but pi is uniform.
        let bad = MarkovChainSpec::new(
            1,
            vec!["0".into(), "1".into()],
            vec![0.5, 0.5],
            vec![vec![0.6, 0.0, 0.0, 0.4]],
        );
        assert!(matches!(
            bad,
            Err(MarkovError::MarginalInconsistent { .. })
        ));
    }

    #[test]
    fn json_roundtrip() {
        let chain = models::ising_chain(2, 0.1).unwrap();
        let json = chain.to_json_string();
        let back = MarkovChainSpec::from_json_str(&json).unwrap();
        assert_eq!(chain, back);
    }
}
