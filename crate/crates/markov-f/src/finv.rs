//! The f-invariant and its window functional.
//!
//! For a stationary process over the rank-`r` free group with generating
//! partition `P`, the functional is
//! `F(P) = -(r-1)·H(X_e) + Σᵢ H(X_e | X_{sᵢ})`; the f-invariant is the
//! infimum of `F` over refinements `P^W` along finite windows `W`. Markov
//! chains attain the infimum already at the singleton window, so `f_markov`
//! is a closed form, while `f_window` evaluates `F(P^W)` exactly from
//! finite marginals for any connected window.

use entropy_core::{compensated_sum, shannon_weights, JointDist, ProbVector};
use group_core::{FreeGroupWord, Letter, Window};

use crate::chain::MarkovChainSpec;
use crate::error::MarkovError;
use crate::measure::PatternMeasure;

/// Hard cap on the number of pattern-space entries a marginal computation
/// may materialize; larger requests are an error, never an approximation.
pub const PATTERN_CAP: u64 = 10_000_000;

/// Exact f-invariant of a Markov chain:
/// `-(r-1)·H(π) + Σᵢ H(X_e | X_{sᵢ})`.
pub fn f_markov(m: &MarkovChainSpec) -> Result<f64, MarkovError> {
    let r = m.rank();
    let h_pi = shannon_weights(m.pi());
    let mut terms = Vec::with_capacity(r as usize + 1);
    terms.push(-(r as f64 - 1.0) * h_pi);
    for s in 1..=r {
        // H(X_e | X_s) conditions on the second axis of the edge law.
        terms.push(m.edge_law_joint(s).conditional_entropy(1)?);
    }
    Ok(compensated_sum(terms))
}

/// f-invariant of an action with trivial dynamics and base entropy `h`:
/// `-(r-1)·h`.
pub fn f_trivial(h: f64, rank: u8) -> Result<f64, MarkovError> {
    if rank == 0 {
        return Err(MarkovError::BadSpec("rank must be at least 1".into()));
    }
    if !h.is_finite() || h < 0.0 {
        return Err(MarkovError::BadSpec(format!(
            "base entropy {h} must be finite and non-negative"
        )));
    }
    Ok(-(rank as f64 - 1.0) * h)
}

/// f-invariant of a mixture from its ergodic decomposition:
/// `Σ wᵢ·fᵢ − (r−1)·H(w)` over components `(wᵢ, fᵢ)`.
pub fn f_mixture(components: &[(f64, f64)], rank: u8) -> Result<f64, MarkovError> {
    if rank == 0 {
        return Err(MarkovError::BadSpec("rank must be at least 1".into()));
    }
    let weights: Vec<f64> = components.iter().map(|c| c.0).collect();
    ProbVector::new(weights.clone())?;
    let mean = compensated_sum(components.iter().map(|&(w, f)| w * f));
    Ok(mean - (rank as f64 - 1.0) * shannon_weights(&weights))
}

/// Exact joint law of `(X_w)_{w ∈ W}` for a connected window, axes in the
/// window's canonical word order.
pub fn window_marginal(m: &MarkovChainSpec, w: &Window) -> Result<JointDist, MarkovError> {
    w.require_connected()?;
    check_rank(m.rank(), w)?;
    m.coords_marginal(w.words())
}

/// The window functional `F(P^W)` evaluated from exact marginals.
///
/// `P^W` classifies the coordinates `W⁻¹`, so with `U = W⁻¹`,
/// `F(P^W) = (1−2r)·H(X_U) + Σ_s H(X_{U ∪ sU})` over positive generators
/// `s`. For a Markov chain this equals `f_markov` on every connected
/// window containing the identity.
pub fn f_window<M: PatternMeasure + ?Sized>(p: &M, w: &Window) -> Result<f64, MarkovError> {
    w.require_connected()?;
    check_rank(p.rank(), w)?;
    let r = p.rank();
    let u: Vec<FreeGroupWord> = {
        let mut inv: Vec<FreeGroupWord> = w.words().iter().map(|x| x.inverse()).collect();
        inv.sort();
        inv
    };
    let h_u = p.coords_marginal(&u)?.entropy();
    let mut terms = Vec::with_capacity(r as usize + 1);
    terms.push((1.0 - 2.0 * r as f64) * h_u);
    for s in 1..=r {
        let gen = FreeGroupWord::from_letters([Letter {
            gen: s,
            inverse: false,
        }]);
        let mut joined = u.clone();
        joined.extend(u.iter().map(|x| gen.multiply(x)));
        joined.sort();
        joined.dedup();
        terms.push(p.coords_marginal(&joined)?.entropy());
    }
    Ok(compensated_sum(terms))
}

/// Naive entropy rate of a window: `H(X_{F⁻¹}) / |F|`.
///
/// Uses the same coordinate convention as `f_window` (`P^F` classifies
/// `F⁻¹`); no connectivity is required.
pub fn naive_window_rate<M: PatternMeasure + ?Sized>(
    p: &M,
    f: &Window,
) -> Result<f64, MarkovError> {
    check_rank(p.rank(), f)?;
    let mut inv: Vec<FreeGroupWord> = f.words().iter().map(|x| x.inverse()).collect();
    inv.sort();
    let h = p.coords_marginal(&inv)?.entropy();
    Ok(h / f.len() as f64)
}

fn check_rank(measure: u8, w: &Window) -> Result<(), MarkovError> {
    if measure != w.rank() {
        return Err(MarkovError::RankMismatch {
            measure,
            window: w.rank(),
        });
    }
    Ok(())
}
