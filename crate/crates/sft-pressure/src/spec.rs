use crate::error::PressureError;
use sofic::SoficMap;

/// A nearest-neighbor subshift of finite type over `F_r`: one allowed-pair
/// predicate per positive generator, read in the `(x_e, x_s)` orientation.
///
/// On a finite model the `s`-pair at vertex `v` is `(φ(v), φ(σ(s)⁻¹v))`,
/// so a labeling lies in the subshift exactly when every pullback name
/// satisfies every generator predicate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SftSpec {
    alphabet: usize,
    /// One `k×k` row-major indicator table per positive generator.
    allowed: Vec<Vec<bool>>,
}

impl SftSpec {
    /// Validates that every symbol has a legal successor and predecessor
    /// under every generator, so a bi-infinite legal configuration exists.
    pub fn new(alphabet: usize, allowed: Vec<Vec<bool>>) -> Result<Self, PressureError> {
        if alphabet == 0 || alphabet > 256 {
            return Err(PressureError::BadSpec(format!(
                "alphabet size {alphabet} not in 1..=256"
            )));
        }
        if allowed.is_empty() || allowed.len() > 26 {
            return Err(PressureError::BadSpec(format!(
                "need 1..=26 generator tables, got {}",
                allowed.len()
            )));
        }
        for (i, table) in allowed.iter().enumerate() {
            if table.len() != alphabet * alphabet {
                return Err(PressureError::BadSpec(format!(
                    "generator {} table has {} cells, expected {}",
                    i + 1,
                    table.len(),
                    alphabet * alphabet
                )));
            }
            for symbol in 0..alphabet {
                let has_successor = (0..alphabet).any(|l| table[symbol * alphabet + l]);
                let has_predecessor = (0..alphabet).any(|k| table[k * alphabet + symbol]);
                if !has_successor || !has_predecessor {
                    return Err(PressureError::BadSpec(format!(
                        "symbol {symbol} has no legal {} under generator {}",
                        if has_successor { "predecessor" } else { "successor" },
                        i + 1
                    )));
                }
            }
        }
        Ok(SftSpec { alphabet, allowed })
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet
    }

    pub fn rank(&self) -> u8 {
        self.allowed.len() as u8
    }

    /// Whether the pair `(x_e, x_s) = (from, to)` is legal for positive
    /// generator `s` (1-based).
    pub fn is_allowed(&self, s: u8, from: usize, to: usize) -> bool {
        self.allowed[(s - 1) as usize][from * self.alphabet + to]
    }

    /// The indicator table of generator `s` (1-based), row-major `k×k`.
    pub fn table(&self, s: u8) -> &[bool] {
        &self.allowed[(s - 1) as usize]
    }

    /// Whether every `s`-pair of the labeling is legal on the model.
    pub fn admits(&self, sigma: &SoficMap, values: &[u8]) -> Result<bool, PressureError> {
        check_rank(self.rank(), sigma)?;
        check_labeling(self.alphabet, sigma.vertex_count(), values)?;
        for s in 1..=self.rank() {
            let inverse = sigma.inv_perm(s);
            for (v, &label) in values.iter().enumerate() {
                if !self.is_allowed(s, label as usize, values[inverse[v]] as usize) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Whether the symbol rotation `k ↦ k+1 mod |K|` preserves every
    /// generator predicate. Such specs are optimized in closed form.
    pub fn has_cyclic_symbol_symmetry(&self) -> bool {
        let k = self.alphabet;
        self.allowed.iter().all(|table| {
            (0..k).all(|from| {
                (0..k).all(|to| {
                    table[from * k + to] == table[((from + 1) % k) * k + ((to + 1) % k)]
                })
            })
        })
    }

    /// Allowed successor offsets of symbol 0: `{d : (0, d) legal}` for
    /// generator `s`. Under cyclic symmetry these generate every row.
    pub fn offsets(&self, s: u8) -> Vec<usize> {
        (0..self.alphabet)
            .filter(|&d| self.is_allowed(s, 0, d))
            .collect()
    }
}

/// The successor subshift on `Z_n`: per generator, `x_s` must equal `x_e`
/// or `x_e + 1 mod n`. Rank 2.
pub fn mod_n_sft(n: usize) -> Result<SftSpec, PressureError> {
    let mut table = vec![false; n * n];
    for k in 0..n {
        table[k * n + k] = true;
        table[k * n + (k + 1) % n] = true;
    }
    SftSpec::new(n, vec![table.clone(), table])
}

/// The unconstrained full shift on `k` symbols.
pub fn full_shift(k: usize, rank: u8) -> Result<SftSpec, PressureError> {
    if rank == 0 {
        return Err(PressureError::BadSpec("rank must be at least 1".into()));
    }
    let table = vec![true; k * k];
    SftSpec::new(k, vec![table; rank as usize])
}

pub(crate) fn check_rank(rank: u8, sigma: &SoficMap) -> Result<(), PressureError> {
    if sigma.rank() != rank {
        return Err(PressureError::RankMismatch {
            model: sigma.rank(),
            got: rank,
        });
    }
    Ok(())
}

pub(crate) fn check_labeling(
    alphabet: usize,
    vertices: usize,
    values: &[u8],
) -> Result<(), PressureError> {
    if values.len() != vertices {
        return Err(PressureError::LabelingSizeMismatch {
            labels: values.len(),
            vertices,
        });
    }
    if let Some(&label) = values.iter().find(|&&l| (l as usize) >= alphabet) {
        return Err(PressureError::LabelOutOfRange { label, alphabet });
    }
    Ok(())
}
