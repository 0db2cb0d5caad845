use std::collections::{HashSet, VecDeque};

use thiserror::Error;

use crate::word::{FreeGroupWord, Letter};

/// Errors from window construction and window-level operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum WindowError {
    /// A word uses a generator beyond the declared rank.
    #[error("word {word:?} uses generators beyond rank {rank}")]
    RankExceeded { word: String, rank: u8 },
    /// Two windows of different ambient rank were combined.
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(u8, u8),
    /// Rank must be in `1..=26`.
    #[error("rank {0} out of range 1..=26")]
    BadRank(u8),
    /// Operation requires a non-empty window.
    #[error("window is empty")]
    Empty,
    /// Operation requires connectivity but the flag was never verified.
    #[error("window connectivity has not been verified; call verify_connectivity first")]
    UnverifiedConnectivity,
    /// Operation requires a connected window.
    #[error("window is not connected in the Cayley graph")]
    Disconnected,
}

/// A finite duplicate-free set of words in `F_r`, canonically ordered, with
/// a verified-connectivity flag for the induced subgraph of `Cay(F_r, S)`.
///
/// The flag starts unset; operations that are only valid on connected
/// windows fail fast until `verify_connectivity` has been run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window {
    rank: u8,
    words: Vec<FreeGroupWord>,
    connected: Option<bool>,
}

impl Window {
    /// Builds a window from words, sorting canonically and removing
    /// duplicates. The connectivity flag starts unverified.
    pub fn new(rank: u8, words: Vec<FreeGroupWord>) -> Result<Self, WindowError> {
        if rank == 0 || rank > 26 {
            return Err(WindowError::BadRank(rank));
        }
        for w in &words {
            if w.max_generator() > rank {
                return Err(WindowError::RankExceeded {
                    word: w.to_string(),
                    rank,
                });
            }
        }
        let mut words = words;
        words.sort();
        words.dedup();
        Ok(Window {
            rank,
            words,
            connected: None,
        })
    }

    /// Parses a window from string-form words.
    pub fn parse(rank: u8, words: &[&str]) -> Result<Self, WindowError> {
        let parsed: Result<Vec<_>, _> = words.iter().map(|s| FreeGroupWord::parse(s)).collect();
        let parsed = parsed.map_err(|e| WindowError::RankExceeded {
            word: format!("{e}"),
            rank,
        })?;
        Window::new(rank, parsed)
    }

    /// Ambient rank `r`.
    pub fn rank(&self) -> u8 {
        self.rank
    }

    /// The words, in canonical `(length, lex)` order.
    pub fn words(&self) -> &[FreeGroupWord] {
        &self.words
    }

    /// Number of elements.
    pub fn len(&self) -> usize {
        self.words.len()
    }

    /// True when the window has no elements.
    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Membership test (binary search over the canonical order).
    pub fn contains(&self, w: &FreeGroupWord) -> bool {
        self.words.binary_search(w).is_ok()
    }

    /// Position of a word in the canonical order.
    pub fn position(&self, w: &FreeGroupWord) -> Option<usize> {
        self.words.binary_search(w).ok()
    }

    /// Runs the BFS connectivity check over one-letter neighbors within the
    /// set, records the result in the flag, and returns it.
    ///
    /// `u` and `v` are adjacent iff `u⁻¹v` has length 1.
    pub fn verify_connectivity(&mut self) -> bool {
        let result = self.compute_connectivity();
        self.connected = Some(result);
        result
    }

    /// Consuming convenience: verify and require connectivity.
    pub fn into_connected(mut self) -> Result<Self, WindowError> {
        if self.verify_connectivity() {
            Ok(self)
        } else {
            Err(WindowError::Disconnected)
        }
    }

    /// The verified flag: `None` until `verify_connectivity` has run.
    pub fn connectivity_flag(&self) -> Option<bool> {
        self.connected
    }

    /// Fail-fast guard for operations that need a connected window.
    pub fn require_connected(&self) -> Result<(), WindowError> {
        match self.connected {
            Some(true) => Ok(()),
            Some(false) => Err(WindowError::Disconnected),
            None => Err(WindowError::UnverifiedConnectivity),
        }
    }

    fn compute_connectivity(&self) -> bool {
        if self.words.len() <= 1 {
            return true;
        }
        let set: HashSet<&FreeGroupWord> = self.words.iter().collect();
        let mut seen: HashSet<&FreeGroupWord> = HashSet::with_capacity(set.len());
        let mut queue = VecDeque::new();
        queue.push_back(&self.words[0]);
        seen.insert(&self.words[0]);
        while let Some(u) = queue.pop_front() {
            for gen in 1..=self.rank {
                for inverse in [false, true] {
                    let v = u.append(Letter { gen, inverse });
                    if let Some(&found) = set.get(&v) {
                        if seen.insert(found) {
                            queue.push_back(found);
                        }
                    }
                }
            }
        }
        seen.len() == set.len()
    }

    /// Set product `self · other = {u·v}`, deduplicated, flag unverified.
    pub fn set_product(&self, other: &Window) -> Result<Window, WindowError> {
        if self.rank != other.rank {
            return Err(WindowError::RankMismatch(self.rank, other.rank));
        }
        let mut words = Vec::with_capacity(self.words.len() * other.words.len());
        for u in &self.words {
            for v in &other.words {
                words.push(u.multiply(v));
            }
        }
        Window::new(self.rank, words)
    }

    /// Elementwise inverse `{w⁻¹}`; preserves connectivity of nothing, so
    /// the flag resets to unverified.
    pub fn inverse(&self) -> Window {
        let words = self.words.iter().map(|w| w.inverse()).collect();
        Window {
            rank: self.rank,
            words: {
                let mut v: Vec<FreeGroupWord> = words;
                v.sort();
                v
            },
            connected: None,
        }
    }
}

/// Ball of radius `radius` in `F_rank`: all reduced words of length ≤ radius.
///
/// `|B(n)| = 1 + 2r·((2r−1)^n − 1)/(2r−2)` for `r ≥ 2`; the connectivity
/// flag is verified on construction.
pub fn ball(radius: u32, rank: u8) -> Result<Window, WindowError> {
    if rank == 0 || rank > 26 {
        return Err(WindowError::BadRank(rank));
    }
    let mut words = vec![FreeGroupWord::identity()];
    let mut frontier = vec![FreeGroupWord::identity()];
    for _ in 0..radius {
        let mut next = Vec::with_capacity(frontier.len() * (2 * rank as usize));
        for w in &frontier {
            let last = w.letters().last().copied();
            for gen in 1..=rank {
                for inverse in [false, true] {
                    let l = Letter { gen, inverse };
                    // Skipping the cancelling letter keeps every word reduced
                    // and enumerates each sphere exactly once.
                    if last.is_some_and(|t| t.gen == l.gen && t.inverse != l.inverse) {
                        continue;
                    }
                    next.push(w.append(l));
                }
            }
        }
        words.extend(next.iter().cloned());
        frontier = next;
    }
    let mut window = Window::new(rank, words)?;
    window.verify_connectivity();
    Ok(window)
}

/// `|W·F| / |F|` for the set product `W·F`.
pub fn growth_ratio(w: &Window, f: &Window) -> Result<f64, WindowError> {
    if f.is_empty() {
        return Err(WindowError::Empty);
    }
    let product = w.set_product(f)?;
    Ok(product.len() as f64 / f.len() as f64)
}

/// Enumerates every connected window containing `e` with at most `max_size`
/// elements, each with its connectivity flag verified.
///
/// Grows sets by attaching Cayley-graph neighbors level by level, so sizes
/// for rank 2 run 1, 4, 18, ... windows per size.
pub fn connected_windows_containing_identity(
    rank: u8,
    max_size: usize,
) -> Result<Vec<Window>, WindowError> {
    if rank == 0 || rank > 26 {
        return Err(WindowError::BadRank(rank));
    }
    let mut all: Vec<Vec<FreeGroupWord>> = Vec::new();
    let mut level: HashSet<Vec<FreeGroupWord>> = HashSet::new();
    level.insert(vec![FreeGroupWord::identity()]);
    for _ in 0..max_size {
        all.extend(level.iter().cloned());
        let mut next: HashSet<Vec<FreeGroupWord>> = HashSet::new();
        for set in &level {
            for u in set {
                for gen in 1..=rank {
                    for inverse in [false, true] {
                        let v = u.append(Letter { gen, inverse });
                        if set.contains(&v) {
                            continue;
                        }
                        let mut grown = set.clone();
                        grown.push(v);
                        grown.sort();
                        next.insert(grown);
                    }
                }
            }
        }
        level = next;
    }
    let mut windows = Vec::with_capacity(all.len());
    all.sort();
    for words in all {
        let mut w = Window::new(rank, words)?;
        w.verify_connectivity();
        debug_assert_eq!(w.connectivity_flag(), Some(true));
        windows.push(w);
    }
    Ok(windows)
}
