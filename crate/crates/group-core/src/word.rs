use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

/// Errors from parsing or constructing words.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    /// The character does not name a generator or an inverse generator.
    #[error("unexpected character {0:?} in word (expected a-z or A-Z)")]
    BadCharacter(char),
    /// Generator index outside `1..=26`.
    #[error("generator index {0} out of range 1..=26")]
    GeneratorOutOfRange(u16),
}

/// One letter of a reduced word: a 1-based generator index plus a sign.
///
/// Ordered `a < a⁻¹ < b < b⁻¹ < ...` so that word ordering is deterministic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    /// Generator index, `1..=26`.
    pub gen: u8,
    /// True for the inverse of the generator.
    pub inverse: bool,
}

impl Letter {
    /// The letter cancelling `self` in free reduction.
    pub fn inverted(self) -> Letter {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.inverse != other.inverse
    }

    fn to_char(self) -> char {
        let base = if self.inverse { b'A' } else { b'a' };
        (base + self.gen - 1) as char
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.gen, self.inverse).cmp(&(other.gen, other.inverse))
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A reduced word in a free group; the empty word is the identity `e`.
///
/// Words do not carry the ambient rank; rank agreement is enforced where
/// windows are built.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FreeGroupWord {
    letters: Vec<Letter>,
}

impl FreeGroupWord {
    /// The identity element.
    pub fn identity() -> Self {
        FreeGroupWord::default()
    }

    /// The word consisting of the single generator `index` (1-based).
    pub fn generator(index: u8) -> Result<Self, WordError> {
        if index == 0 || index > 26 {
            return Err(WordError::GeneratorOutOfRange(index as u16));
        }
        Ok(FreeGroupWord {
            letters: vec![Letter {
                gen: index,
                inverse: false,
            }],
        })
    }

    /// Builds a word from letters, applying free reduction.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut stack: Vec<Letter> = Vec::new();
        for l in letters {
            if stack.last().is_some_and(|t| t.cancels(l)) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        FreeGroupWord { letters: stack }
    }

    /// The reduced letters of the word.
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Word length `|w|`.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    /// True for the identity.
    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Alias for `is_identity`.
    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Largest generator index used (0 for the identity).
    pub fn max_generator(&self) -> u8 {
        self.letters.iter().map(|l| l.gen).max().unwrap_or(0)
    }

    /// The group inverse (letters reversed and inverted).
    pub fn inverse(&self) -> Self {
        FreeGroupWord {
            letters: self.letters.iter().rev().map(|l| l.inverted()).collect(),
        }
    }

    /// Reduced product `self · other`.
    pub fn multiply(&self, other: &FreeGroupWord) -> FreeGroupWord {
        let mut stack = self.letters.clone();
        for &l in &other.letters {
            if stack.last().is_some_and(|t| t.cancels(l)) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        FreeGroupWord { letters: stack }
    }

    /// Appends a single letter, reducing if it cancels.
    pub fn append(&self, l: Letter) -> FreeGroupWord {
        let mut letters = self.letters.clone();
        if letters.last().is_some_and(|t| t.cancels(l)) {
            letters.pop();
        } else {
            letters.push(l);
        }
        FreeGroupWord { letters }
    }

    /// Parses the string form: lowercase = generator, uppercase = inverse,
    /// e.g. `"abA"` = `a·b·a⁻¹`. The empty string is the identity.
    pub fn parse(s: &str) -> Result<Self, WordError> {
        let mut letters = Vec::with_capacity(s.len());
        for c in s.chars() {
            let l = match c {
                'a'..='z' => Letter {
                    gen: (c as u8) - b'a' + 1,
                    inverse: false,
                },
                'A'..='Z' => Letter {
                    gen: (c as u8) - b'A' + 1,
                    inverse: true,
                },
                _ => return Err(WordError::BadCharacter(c)),
            };
            letters.push(l);
        }
        Ok(FreeGroupWord::from_letters(letters))
    }
}

/// Canonical `(length, lexicographic)` order.
impl Ord for FreeGroupWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for FreeGroupWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FreeGroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

/// Reduced product of two words; never increases length beyond `|a|+|b|`.
pub fn multiply(a: &FreeGroupWord, b: &FreeGroupWord) -> FreeGroupWord {
    a.multiply(b)
}
