//! Reduced-word arithmetic in finitely generated free groups `F_r` and
//! finite observation windows in their Cayley graphs.
//!
//! Words are kept in reduced form at all times; a window is a duplicate-free
//! set of words in canonical `(length, lexicographic)` order together with a
//! lazily verified connectivity flag for the induced subgraph of
//! `Cay(F_r, S)`.

mod window;
mod word;

pub use window::{
    ball, connected_windows_containing_identity, growth_ratio, Window, WindowError,
};
pub use word::{multiply, FreeGroupWord, Letter, WordError};
