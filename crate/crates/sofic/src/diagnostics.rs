use group_core::{FreeGroupWord, Window};

use crate::error::SoficError;
use crate::map::SoficMap;
use crate::table::WordAction;

/// Outcome of the almost-freeness test: per-word fixed-point fractions.
#[derive(Debug, Clone)]
pub struct TraceReport {
    pub pass: bool,
    pub delta: f64,
    /// `(w, |Fix σ(w)| / n)` for every word of the window.
    pub fractions: Vec<(FreeGroupWord, f64)>,
}

/// `(F,δ)`-trace test: passes iff every `w ∈ F` fixes fewer than `δ·n`
/// vertices. `F` must not contain the identity, which fixes everything.
pub fn check_trace<A: WordAction + ?Sized>(
    sigma: &A,
    window: &Window,
    delta: f64,
) -> Result<TraceReport, SoficError> {
    check_window_rank(sigma.rank(), window)?;
    if window.contains(&FreeGroupWord::identity()) {
        return Err(SoficError::WindowContainsIdentity);
    }
    let n = sigma.vertex_count() as f64;
    let mut fractions = Vec::with_capacity(window.len());
    let mut pass = true;
    for w in window.words() {
        let images = sigma.word_permutation(w)?;
        let fixed = images.iter().enumerate().filter(|&(v, &u)| v == u).count();
        let fraction = fixed as f64 / n;
        pass &= fraction < delta;
        fractions.push((w.clone(), fraction));
    }
    Ok(TraceReport {
        pass,
        delta,
        fractions,
    })
}

/// Outcome of the `(F,δ)`-multiplicativity test.
#[derive(Debug, Clone)]
pub struct MultiplicativeReport {
    pub pass: bool,
    pub delta: f64,
    /// Largest per-pair disagreement fraction.
    pub worst: f64,
    /// `(u, w, fraction of v with σ(u)(σ(w)v) ≠ σ(uw)v)` per ordered pair.
    pub pair_fractions: Vec<(FreeGroupWord, FreeGroupWord, f64)>,
}

/// `(F,δ)`-multiplicativity: for every ordered pair `u, w ∈ F`, the
/// composed action must agree with the action of the product on all but a
/// `δ` fraction of vertices. Genuine `SoficMap`s pass with `δ = 0`; the
/// test exists for imported near-homomorphisms.
pub fn check_multiplicative<A: WordAction + ?Sized>(
    sigma: &A,
    window: &Window,
    delta: f64,
) -> Result<MultiplicativeReport, SoficError> {
    check_window_rank(sigma.rank(), window)?;
    let n = sigma.vertex_count();
    let mut pair_fractions = Vec::with_capacity(window.len() * window.len());
    let mut worst = 0.0f64;
    for u in window.words() {
        let outer = sigma.word_permutation(u)?;
        for w in window.words() {
            let inner = sigma.word_permutation(w)?;
            let product = sigma.word_permutation(&u.multiply(w))?;
            let differ = (0..n).filter(|&v| outer[inner[v]] != product[v]).count();
            let fraction = differ as f64 / n as f64;
            worst = worst.max(fraction);
            pair_fractions.push((u.clone(), w.clone(), fraction));
        }
    }
    Ok(MultiplicativeReport {
        pass: worst <= delta,
        delta,
        worst,
        pair_fractions,
    })
}

/// Fraction of vertices whose labeled `radius`-ball in the Schreier graph
/// is isomorphic, rooted and label-preserving, to the Cayley-tree ball.
///
/// A vertex fails iff some nonempty reduced word of length at most
/// `2·radius + 1` fixes it: lengths up to `2·radius` detect vertex
/// collisions inside the ball, length `2·radius + 1` detects extra edges
/// between boundary vertices.
pub fn bs_local_fraction(sigma: &SoficMap, radius: u32) -> Result<f64, SoficError> {
    if radius == 0 {
        return Err(SoficError::BadSpec("radius must be at least 1".into()));
    }
    let n = sigma.vertex_count();
    let max_len = 2 * radius as usize + 1;
    let letters = all_letters(sigma.rank());
    let good = (0..n)
        .filter(|&v| !returns_to_root(sigma, v, v, None, max_len, &letters))
        .count();
    Ok(good as f64 / n as f64)
}

fn all_letters(rank: u8) -> Vec<group_core::Letter> {
    (1..=rank)
        .flat_map(|gen| {
            [false, true]
                .into_iter()
                .map(move |inverse| group_core::Letter { gen, inverse })
        })
        .collect()
}

// Depth-first walk over reduced words grown by prepending letters:
// `σ(l·w)v = σ(l)(σ(w)v)`, and `l` must not cancel the leftmost letter.
fn returns_to_root(
    sigma: &SoficMap,
    root: usize,
    position: usize,
    leftmost: Option<group_core::Letter>,
    budget: usize,
    letters: &[group_core::Letter],
) -> bool {
    if budget == 0 {
        return false;
    }
    for &l in letters {
        if leftmost.is_some_and(|t| l == t.inverted()) {
            continue;
        }
        let next = sigma.apply_letter(l, position);
        if next == root {
            return true;
        }
        if returns_to_root(sigma, root, next, Some(l), budget - 1, letters) {
            return true;
        }
    }
    false
}

/// Fraction of vertices moved differently by the two models under some
/// word of the window: `|V|⁻¹·#{v : ∃ w ∈ F, σ(w)v ≠ σ′(w)v}`.
pub fn edit_distance<A, B>(a: &A, b: &B, window: &Window) -> Result<f64, SoficError>
where
    A: WordAction + ?Sized,
    B: WordAction + ?Sized,
{
    if a.vertex_count() != b.vertex_count() {
        return Err(SoficError::SizeMismatch {
            left: a.vertex_count(),
            right: b.vertex_count(),
        });
    }
    if a.rank() != b.rank() {
        return Err(SoficError::RankMismatch {
            left: a.rank(),
            right: b.rank(),
        });
    }
    check_window_rank(a.rank(), window)?;
    let n = a.vertex_count();
    let mut moved = vec![false; n];
    for w in window.words() {
        let pa = a.word_permutation(w)?;
        let pb = b.word_permutation(w)?;
        for v in 0..n {
            moved[v] |= pa[v] != pb[v];
        }
    }
    Ok(moved.iter().filter(|&&m| m).count() as f64 / n as f64)
}

fn check_window_rank(rank: u8, window: &Window) -> Result<(), SoficError> {
    if window.rank() > rank {
        return Err(SoficError::RankMismatch {
            left: rank,
            right: window.rank(),
        });
    }
    Ok(())
}
