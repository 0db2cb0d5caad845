//! Shannon-entropy primitives over finite distributions: entropy,
//! conditional entropy, marginals, and the Rokhlin distance
//! `H(P|Q) + H(Q|P)`.
//!
//! All entropies are in nats. Atom weights below `1e-15` are treated as
//! exact zeros inside entropy sums; distributions must sum to 1 within
//! `1e-12` (sums are compensated, so the tolerance is meaningful even for
//! large tables).

use thiserror::Error;

/// Normalization tolerance for probability vectors and joint tables.
pub const SUM_TOLERANCE: f64 = 1e-12;

/// Weights below this are exact zeros inside entropy sums.
pub const ATOM_CUTOFF: f64 = 1e-15;

/// Errors from constructing or querying distributions.
#[derive(Debug, Error, PartialEq)]
pub enum EntropyError {
    #[error("weights sum to {sum}, not 1 within {SUM_TOLERANCE}")]
    NotNormalized { sum: f64 },
    #[error("weight {value} at index {index} is negative")]
    NegativeWeight { index: usize, value: f64 },
    #[error("table length {actual} does not match shape product {expected}")]
    ShapeMismatch { expected: usize, actual: usize },
    #[error("axis {axis} out of range for arity {arity}")]
    AxisOutOfRange { axis: usize, arity: usize },
    #[error("operation requires a 2-axis joint distribution, got arity {arity}")]
    NotTwoAxis { arity: usize },
    #[error("{count} labels for {atoms} atoms")]
    LabelCountMismatch { count: usize, atoms: usize },
    #[error("distribution has no atoms")]
    Empty,
    #[error("marginal axes must be distinct")]
    DuplicateAxis,
}

/// Neumaier compensated sum; keeps normalization checks honest on tables
/// with millions of entries.
pub fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// `−Σ w ln w` with the `0·ln 0 = 0` convention, in nats.
///
/// Assumes the slice is a valid sub-probability vector; weights below
/// `ATOM_CUTOFF` contribute zero.
pub fn shannon_weights(weights: &[f64]) -> f64 {
    let terms = weights.iter().filter_map(|&w| {
        if w > ATOM_CUTOFF {
            Some(-w * w.ln())
        } else {
            None
        }
    });
    compensated_sum(terms)
}

fn validate_weights(weights: &[f64]) -> Result<(), EntropyError> {
    if weights.is_empty() {
        return Err(EntropyError::Empty);
    }
    for (index, &value) in weights.iter().enumerate() {
        if value < 0.0 {
            return Err(EntropyError::NegativeWeight { index, value });
        }
    }
    let sum = compensated_sum(weights.iter().copied());
    if (sum - 1.0).abs() > SUM_TOLERANCE {
        return Err(EntropyError::NotNormalized { sum });
    }
    Ok(())
}

/// A probability vector over labelled atoms.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbVector {
    weights: Vec<f64>,
    labels: Vec<String>,
}

impl ProbVector {
    /// Validates weights; labels default to `"0".."k-1"`.
    pub fn new(weights: Vec<f64>) -> Result<Self, EntropyError> {
        validate_weights(&weights)?;
        let labels = (0..weights.len()).map(|i| i.to_string()).collect();
        Ok(ProbVector { weights, labels })
    }

    /// Validates weights with caller-supplied atom labels.
    pub fn with_labels(weights: Vec<f64>, labels: Vec<String>) -> Result<Self, EntropyError> {
        if labels.len() != weights.len() {
            return Err(EntropyError::LabelCountMismatch {
                count: labels.len(),
                atoms: weights.len(),
            });
        }
        validate_weights(&weights)?;
        Ok(ProbVector { weights, labels })
    }

    /// Uniform distribution on `k` atoms.
    pub fn uniform(k: usize) -> Result<Self, EntropyError> {
        if k == 0 {
            return Err(EntropyError::Empty);
        }
        ProbVector::new(vec![1.0 / k as f64; k])
    }

    /// Point mass at `atom` among `k` atoms.
    pub fn dirac(k: usize, atom: usize) -> Result<Self, EntropyError> {
        if atom >= k {
            return Err(EntropyError::AxisOutOfRange { axis: atom, arity: k });
        }
        let mut w = vec![0.0; k];
        w[atom] = 1.0;
        ProbVector::new(w)
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Shannon entropy in nats; lies in `[0, ln(#atoms)]`.
    pub fn shannon(&self) -> f64 {
        shannon_weights(&self.weights)
    }
}

/// Shannon entropy of a validated probability vector.
pub fn shannon(p: &ProbVector) -> f64 {
    p.shannon()
}

/// A joint distribution over a product of finite axes, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDist {
    shape: Vec<usize>,
    table: Vec<f64>,
}

impl JointDist {
    /// Validates the table against the shape and normalization.
    pub fn new(shape: Vec<usize>, table: Vec<f64>) -> Result<Self, EntropyError> {
        let expected: usize = shape.iter().product();
        if shape.is_empty() || expected == 0 {
            return Err(EntropyError::Empty);
        }
        if table.len() != expected {
            return Err(EntropyError::ShapeMismatch {
                expected,
                actual: table.len(),
            });
        }
        validate_weights(&table)?;
        Ok(JointDist { shape, table })
    }

    /// 2-axis table from rows.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, EntropyError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut table = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(EntropyError::ShapeMismatch {
                    expected: c,
                    actual: row.len(),
                });
            }
            table.extend_from_slice(row);
        }
        JointDist::new(vec![r, c], table)
    }

    /// Independent product of two probability vectors.
    pub fn product(p: &ProbVector, q: &ProbVector) -> Self {
        let mut table = Vec::with_capacity(p.len() * q.len());
        for &a in p.weights() {
            for &b in q.weights() {
                table.push(a * b);
            }
        }
        JointDist {
            shape: vec![p.len(), q.len()],
            table,
        }
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn arity(&self) -> usize {
        self.shape.len()
    }

    pub fn table(&self) -> &[f64] {
        &self.table
    }

    /// Joint Shannon entropy in nats.
    pub fn entropy(&self) -> f64 {
        shannon_weights(&self.table)
    }

    /// Marginal onto `keep`, in the order given (also serves as an axis
    /// permutation when `keep` lists every axis).
    pub fn marginal(&self, keep: &[usize]) -> Result<JointDist, EntropyError> {
        let arity = self.arity();
        for &axis in keep {
            if axis >= arity {
                return Err(EntropyError::AxisOutOfRange { axis, arity });
            }
        }
        let mut seen = vec![false; arity];
        for &axis in keep {
            if seen[axis] {
                return Err(EntropyError::DuplicateAxis);
            }
            seen[axis] = true;
        }
        if keep.is_empty() {
            return Err(EntropyError::Empty);
        }

        let in_strides = row_major_strides(&self.shape);
        let out_shape: Vec<usize> = keep.iter().map(|&a| self.shape[a]).collect();
        let out_strides = row_major_strides(&out_shape);
        let mut out = vec![0.0; out_shape.iter().product()];
        let mut comp = vec![0.0; out.len()];

        let mut index = vec![0usize; arity];
        for (flat, &value) in self.table.iter().enumerate() {
            let mut rem = flat;
            for (axis, stride) in in_strides.iter().enumerate() {
                index[axis] = rem / stride;
                rem %= stride;
            }
            let mut out_flat = 0;
            for (pos, &axis) in keep.iter().enumerate() {
                out_flat += index[axis] * out_strides[pos];
            }
            // Neumaier accumulation per cell.
            let s = out[out_flat];
            let t = s + value;
            comp[out_flat] += if s.abs() >= value.abs() {
                (s - t) + value
            } else {
                (value - t) + s
            };
            out[out_flat] = t;
        }
        for (o, c) in out.iter_mut().zip(&comp) {
            *o += c;
        }
        Ok(JointDist {
            shape: out_shape,
            table: out,
        })
    }

    /// Marginal weights of a single axis.
    pub fn marginal_weights(&self, axis: usize) -> Result<Vec<f64>, EntropyError> {
        Ok(self.marginal(&[axis])?.table)
    }

    /// `H(X,Y) − H(Y)` where Y is the `given` axis of a 2-axis joint;
    /// non-negative and at most `H(X)`.
    pub fn conditional_entropy(&self, given: usize) -> Result<f64, EntropyError> {
        if self.arity() != 2 {
            return Err(EntropyError::NotTwoAxis { arity: self.arity() });
        }
        if given > 1 {
            return Err(EntropyError::AxisOutOfRange {
                axis: given,
                arity: 2,
            });
        }
        let h_given = shannon_weights(&self.marginal_weights(given)?);
        Ok(self.entropy() - h_given)
    }

    /// Rokhlin distance `H(P|Q) + H(Q|P) = 2H(P,Q) − H(P) − H(Q)` of a
    /// 2-axis coupling; zero iff the coupling is an atom bijection up to
    /// measure zero.
    pub fn rokhlin_distance(&self) -> Result<f64, EntropyError> {
        if self.arity() != 2 {
            return Err(EntropyError::NotTwoAxis { arity: self.arity() });
        }
        let h = self.entropy();
        let hp = shannon_weights(&self.marginal_weights(0)?);
        let hq = shannon_weights(&self.marginal_weights(1)?);
        Ok(2.0 * h - hp - hq)
    }

    /// Transpose of a 2-axis joint.
    pub fn transpose(&self) -> Result<JointDist, EntropyError> {
        self.marginal(&[1, 0])
    }
}

/// Row-major strides for a shape.
pub fn row_major_strides(shape: &[usize]) -> Vec<usize> {
    let mut strides = vec![1usize; shape.len()];
    for i in (0..shape.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * shape[i + 1];
    }
    strides
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shannon_golden_values() {
        let u4 = ProbVector::uniform(4).unwrap();
        assert!((u4.shannon() - 4f64.ln()).abs() < 1e-15);

        let point = ProbVector::new(vec![1.0, 0.0, 0.0]).unwrap();
        assert_eq!(point.shannon(), 0.0);

        let skew = ProbVector::new(vec![0.9, 0.1]).unwrap();
        assert!((skew.shannon() - 0.3250829733914482).abs() < 1e-12);
    }

    #[test]
    fn conditional_entropy_examples() {
        let p = ProbVector::new(vec![0.9, 0.1]).unwrap();
        let q = ProbVector::new(vec![0.25, 0.75]).unwrap();
        let prod = JointDist::product(&p, &q);
        assert!((prod.conditional_entropy(1).unwrap() - p.shannon()).abs() < 1e-12);

        let diag = JointDist::from_rows(&[vec![0.5, 0.0], vec![0.0, 0.5]]).unwrap();
        assert!(diag.conditional_entropy(0).unwrap().abs() < 1e-12);

        // Ising edge law at ε=0.1: H(pair) − ln 2 = h(0.1).
        let e = 0.1;
        let ising = JointDist::from_rows(&[
            vec![(1.0 - e) / 2.0, e / 2.0],
            vec![e / 2.0, (1.0 - e) / 2.0],
        ])
        .unwrap();
        assert!((ising.conditional_entropy(1).unwrap() - 0.3250829733914482).abs() < 1e-12);
    }

    #[test]
    fn rokhlin_examples() {
        let diag = JointDist::from_rows(&[vec![0.5, 0.0], vec![0.0, 0.5]]).unwrap();
        assert!(diag.rokhlin_distance().unwrap().abs() < 1e-12);

        let indep = JointDist::from_rows(&[vec![0.25, 0.25], vec![0.25, 0.25]]).unwrap();
        assert!((indep.rokhlin_distance().unwrap() - 2.0 * 2f64.ln()).abs() < 1e-12);

        // ε-perturbed identity coupling: distance 2·h(ε).
        let e = 0.05;
        let perturbed = JointDist::from_rows(&[
            vec![(1.0 - e) / 2.0, e / 2.0],
            vec![e / 2.0, (1.0 - e) / 2.0],
        ])
        .unwrap();
        let h_eps = -(e * e.ln() + (1.0 - e) * (1.0 - e).ln());
        assert!((perturbed.rokhlin_distance().unwrap() - 2.0 * h_eps).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            ProbVector::new(vec![0.5, 0.6]),
            Err(EntropyError::NotNormalized { .. })
        ));
        assert!(matches!(
            ProbVector::new(vec![1.5, -0.5]),
            Err(EntropyError::NegativeWeight { .. })
        ));
        assert!(matches!(
            JointDist::new(vec![2, 2], vec![1.0]),
            Err(EntropyError::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn marginal_permutes_axes() {
        let j = JointDist::from_rows(&[vec![0.1, 0.2], vec![0.3, 0.4]]).unwrap();
        let t = j.marginal(&[1, 0]).unwrap();
        assert_eq!(t.table(), &[0.1, 0.3, 0.2, 0.4]);
        assert_eq!(j.transpose().unwrap(), t);
    }
}
