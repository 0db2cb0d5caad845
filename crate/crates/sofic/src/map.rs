use group_core::{FreeGroupWord, Letter};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::SoficError;

/// A homomorphism `F_r → Sym({0..n-1})`: one permutation per positive
/// generator, stored as a 0-based image array; inverses are derived.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SoficMap {
    n: usize,
    rank: u8,
    perms: Vec<Vec<usize>>,
    inv_perms: Vec<Vec<usize>>,
}

impl SoficMap {
    /// Validates that every generator image is a bijection on a common
    /// vertex set.
    pub fn new(rank: u8, perms: Vec<Vec<usize>>) -> Result<Self, SoficError> {
        if rank == 0 || rank > 26 {
            return Err(SoficError::BadSpec(format!("rank {rank} outside 1..=26")));
        }
        if perms.len() != rank as usize {
            return Err(SoficError::BadSpec(format!(
                "expected {rank} permutations, got {}",
                perms.len()
            )));
        }
        let n = perms[0].len();
        if n == 0 {
            return Err(SoficError::BadSpec("vertex set is empty".into()));
        }
        let mut inv_perms = Vec::with_capacity(perms.len());
        for (g, p) in perms.iter().enumerate() {
            let gen = g as u8 + 1;
            if p.len() != n {
                return Err(SoficError::BadPermutation {
                    gen,
                    detail: format!("length {} differs from vertex count {n}", p.len()),
                });
            }
            let mut inv = vec![usize::MAX; n];
            for (i, &j) in p.iter().enumerate() {
                if j >= n {
                    return Err(SoficError::BadPermutation {
                        gen,
                        detail: format!("image {j} out of range at {i}"),
                    });
                }
                if inv[j] != usize::MAX {
                    return Err(SoficError::BadPermutation {
                        gen,
                        detail: format!("image {j} repeated"),
                    });
                }
                inv[j] = i;
            }
            inv_perms.push(inv);
        }
        Ok(SoficMap {
            n,
            rank,
            perms,
            inv_perms,
        })
    }

    /// Number of vertices `n`.
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Rank of the modeled free group.
    pub fn rank(&self) -> u8 {
        self.rank
    }

    /// Image array of a positive generator (1-based).
    pub fn perm(&self, s: u8) -> &[usize] {
        &self.perms[(s - 1) as usize]
    }

    /// Image array of the inverse of a positive generator (1-based).
    pub fn inv_perm(&self, s: u8) -> &[usize] {
        &self.inv_perms[(s - 1) as usize]
    }

    /// `σ(l)v` for a single letter.
    pub fn apply_letter(&self, l: Letter, v: usize) -> usize {
        let table = if l.inverse {
            &self.inv_perms[(l.gen - 1) as usize]
        } else {
            &self.perms[(l.gen - 1) as usize]
        };
        table[v]
    }

    /// `σ(w)v`; letters act right-to-left so `σ(uv) = σ(u)∘σ(v)`.
    pub fn apply_word(&self, w: &FreeGroupWord, v: usize) -> usize {
        let mut v = v;
        for &l in w.letters().iter().rev() {
            v = self.apply_letter(l, v);
        }
        v
    }

    /// Validates that every word of the map fits the rank.
    pub fn check_word_rank(&self, w: &FreeGroupWord) -> Result<(), SoficError> {
        if w.max_generator() > self.rank {
            return Err(SoficError::BadSpec(format!(
                "word `{w}` uses generators beyond rank {}",
                self.rank
            )));
        }
        Ok(())
    }

    /// Parses the JSON model format `{rank, n, perms}`.
    pub fn from_json_str(json: &str) -> Result<Self, SoficError> {
        let file: SoficMapFile =
            serde_json::from_str(json).map_err(|e| SoficError::BadSpec(e.to_string()))?;
        if file.perms.iter().map(Vec::len).any(|l| l != file.n) {
            return Err(SoficError::BadSpec(format!(
                "permutation lengths disagree with n = {}",
                file.n
            )));
        }
        SoficMap::new(file.rank, file.perms)
    }

    /// Serializes to the JSON model format `{rank, n, perms}`.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&SoficMapFile {
            rank: self.rank,
            n: self.n,
            perms: self.perms.clone(),
        })
        .expect("model serialization cannot fail")
    }
}

#[derive(Serialize, Deserialize)]
struct SoficMapFile {
    rank: u8,
    n: usize,
    perms: Vec<Vec<usize>>,
}

/// A finite run of models of a fixed rank with strictly growing vertex
/// counts, the desk-scale stand-in for a sofic approximation sequence.
#[derive(Debug, Clone)]
pub struct SoficSequence {
    rank: u8,
    maps: Vec<SoficMap>,
}

impl SoficSequence {
    pub fn new(rank: u8, maps: Vec<SoficMap>) -> Result<Self, SoficError> {
        let mut previous = 0usize;
        for m in &maps {
            if m.rank() != rank {
                return Err(SoficError::RankMismatch {
                    left: rank,
                    right: m.rank(),
                });
            }
            if m.vertex_count() <= previous {
                return Err(SoficError::NonIncreasingSizes {
                    previous,
                    next: m.vertex_count(),
                });
            }
            previous = m.vertex_count();
        }
        Ok(SoficSequence { rank, maps })
    }

    /// Builds the sequence by calling `make` on each requested size.
    pub fn from_fn(
        rank: u8,
        sizes: &[usize],
        mut make: impl FnMut(usize) -> Result<SoficMap, SoficError>,
    ) -> Result<Self, SoficError> {
        let maps: Result<Vec<_>, _> = sizes.iter().map(|&n| make(n)).collect();
        SoficSequence::new(rank, maps?)
    }

    pub fn rank(&self) -> u8 {
        self.rank
    }

    pub fn maps(&self) -> &[SoficMap] {
        &self.maps
    }
}

/// The n-cycle model of `Z`: one generator acting as `i ↦ i+1 mod n`.
pub fn cyclic_model(n: usize) -> Result<SoficMap, SoficError> {
    if n == 0 {
        return Err(SoficError::BadSpec("vertex set is empty".into()));
    }
    SoficMap::new(1, vec![(0..n).map(|i| (i + 1) % n).collect()])
}

/// `r` independent uniform permutations of `{0..n-1}` from a seeded
/// deterministic generator; identical across runs and platforms.
pub fn random_free_model(rank: u8, n: usize, seed: u64) -> Result<SoficMap, SoficError> {
    if n == 0 {
        return Err(SoficError::BadSpec("vertex set is empty".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let perms = (0..rank).map(|_| shuffled_identity(n, &mut rng)).collect();
    SoficMap::new(rank, perms)
}

// Fisher-Yates with explicit `next_u64` arithmetic; the tiny modulo bias is
// irrelevant here and keeps the stream stable across rand releases.
fn shuffled_identity(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = (rng.next_u64() % (i as u64 + 1)) as usize;
        p.swap(i, j);
    }
    p
}

/// `p` disjoint copies of the model: vertex `(v, k)` is stored as
/// `v + n·k` and every generator acts within its copy.
pub fn amplify(sigma: &SoficMap, p: usize) -> Result<SoficMap, SoficError> {
    if p == 0 {
        return Err(SoficError::BadSpec("amplification factor must be ≥ 1".into()));
    }
    let n = sigma.vertex_count();
    let perms = (1..=sigma.rank())
        .map(|s| {
            let base = sigma.perm(s);
            let mut big = Vec::with_capacity(n * p);
            for k in 0..p {
                big.extend(base.iter().map(|&image| image + n * k));
            }
            big
        })
        .collect();
    SoficMap::new(sigma.rank(), perms)
}

/// Disjoint union of two models of the same rank.
pub fn disjoint_union(a: &SoficMap, b: &SoficMap) -> Result<SoficMap, SoficError> {
    if a.rank() != b.rank() {
        return Err(SoficError::RankMismatch {
            left: a.rank(),
            right: b.rank(),
        });
    }
    let n = a.vertex_count();
    let perms = (1..=a.rank())
        .map(|s| {
            let mut big = Vec::with_capacity(n + b.vertex_count());
            big.extend_from_slice(a.perm(s));
            big.extend(b.perm(s).iter().map(|&image| image + n));
            big
        })
        .collect();
    SoficMap::new(a.rank(), perms)
}
