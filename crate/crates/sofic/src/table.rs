use std::collections::BTreeMap;

use group_core::FreeGroupWord;
use serde::Deserialize;

use crate::error::SoficError;
use crate::map::SoficMap;

/// Word-indexed access to a finite model's action, so diagnostics can run
/// both on genuine homomorphisms and on imported near-homomorphisms.
pub trait WordAction {
    fn vertex_count(&self) -> usize;
    fn rank(&self) -> u8;
    /// Full image array of `σ(w)`.
    fn word_permutation(&self, w: &FreeGroupWord) -> Result<Vec<usize>, SoficError>;
}

impl WordAction for SoficMap {
    fn vertex_count(&self) -> usize {
        SoficMap::vertex_count(self)
    }

    fn rank(&self) -> u8 {
        SoficMap::rank(self)
    }

    fn word_permutation(&self, w: &FreeGroupWord) -> Result<Vec<usize>, SoficError> {
        self.check_word_rank(w)?;
        Ok((0..self.vertex_count()).map(|v| self.apply_word(w, v)).collect())
    }
}

/// A read-only table `word ↦ image array`, imported from JSON.
///
/// Unlike `SoficMap` it need not be consistent under composition, which is
/// exactly what `check_multiplicative` measures on it. Missing words are
/// an error, never recomputed, so imported defects stay visible.
#[derive(Debug, Clone)]
pub struct ImportedWordTable {
    n: usize,
    rank: u8,
    entries: BTreeMap<FreeGroupWord, Vec<usize>>,
}

impl ImportedWordTable {
    pub fn new(
        rank: u8,
        n: usize,
        entries: BTreeMap<FreeGroupWord, Vec<usize>>,
    ) -> Result<Self, SoficError> {
        if rank == 0 || rank > 26 {
            return Err(SoficError::BadSpec(format!("rank {rank} outside 1..=26")));
        }
        for (word, images) in &entries {
            if word.max_generator() > rank {
                return Err(SoficError::BadSpec(format!(
                    "word `{word}` uses generators beyond rank {rank}"
                )));
            }
            if images.len() != n || images.iter().any(|&v| v >= n) {
                return Err(SoficError::BadSpec(format!(
                    "entry for `{word}` is not a map on {n} vertices"
                )));
            }
        }
        Ok(ImportedWordTable { n, rank, entries })
    }

    /// Records every word of `window` evaluated through a genuine model;
    /// the starting point for controlled corruption in tests.
    pub fn from_model(sigma: &SoficMap, words: &[FreeGroupWord]) -> Result<Self, SoficError> {
        let mut entries = BTreeMap::new();
        for w in words {
            entries.insert(w.clone(), sigma.word_permutation(w)?);
        }
        ImportedWordTable::new(sigma.rank(), sigma.vertex_count(), entries)
    }

    /// Replaces the image of `v` under `word`, bypassing bijectivity; the
    /// table stays a function but stops being a homomorphism.
    pub fn corrupt(&mut self, word: &FreeGroupWord, v: usize, image: usize) -> Result<(), SoficError> {
        if v >= self.n || image >= self.n {
            return Err(SoficError::BadSpec(format!(
                "vertex {v} or image {image} out of range"
            )));
        }
        match self.entries.get_mut(word) {
            Some(images) => {
                images[v] = image;
                Ok(())
            }
            None => Err(SoficError::MissingWordEntry {
                word: word.to_string(),
            }),
        }
    }

    /// Parses the JSON format `{rank, n, words: {"ab": [...], ...}}`.
    pub fn from_json_str(json: &str) -> Result<Self, SoficError> {
        let file: WordTableFile =
            serde_json::from_str(json).map_err(|e| SoficError::BadSpec(e.to_string()))?;
        let mut entries = BTreeMap::new();
        for (text, images) in file.words {
            let word = FreeGroupWord::parse(&text)
                .map_err(|e| SoficError::BadSpec(format!("bad word `{text}`: {e}")))?;
            entries.insert(word, images);
        }
        ImportedWordTable::new(file.rank, file.n, entries)
    }
}

impl WordAction for ImportedWordTable {
    fn vertex_count(&self) -> usize {
        self.n
    }

    fn rank(&self) -> u8 {
        self.rank
    }

    fn word_permutation(&self, w: &FreeGroupWord) -> Result<Vec<usize>, SoficError> {
        self.entries
            .get(w)
            .cloned()
            .ok_or_else(|| SoficError::MissingWordEntry {
                word: w.to_string(),
            })
    }
}

#[derive(Deserialize)]
struct WordTableFile {
    rank: u8,
    n: usize,
    words: BTreeMap<String, Vec<usize>>,
}
