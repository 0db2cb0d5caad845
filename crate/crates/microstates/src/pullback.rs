use entropy_core::JointDist;
use group_core::Window;
use sofic::SoficMap;

use crate::error::MicrostateError;
use crate::query::{inverse_actions, Labeling};

// Empirical tables live on K^W; keep them comfortably in memory.
const EMPIRICAL_PATTERN_CAP: u128 = 1 << 24;

/// The pullback name of `φ` at `v`: the pattern `g ↦ φ(σ(g)⁻¹ v)` read
/// off the window's words in order.
pub fn pullback_name(
    phi: &Labeling,
    v: usize,
    window: &Window,
    sigma: &SoficMap,
) -> Result<Vec<u8>, MicrostateError> {
    let n = sigma.vertex_count();
    check_labeling(phi, n)?;
    if v >= n {
        return Err(MicrostateError::VertexOutOfRange {
            vertex: v,
            vertices: n,
        });
    }
    window
        .words()
        .iter()
        .map(|w| Ok(phi.values()[sigma.apply_word(&w.inverse(), v)]))
        .collect()
}

/// Uniform average over vertices of the Dirac mass at each pullback name:
/// the empirical distribution of `φ` on `K^W`, with `K = {0..k-1}`.
pub fn empirical_distribution(
    phi: &Labeling,
    window: &Window,
    sigma: &SoficMap,
    k: usize,
) -> Result<JointDist, MicrostateError> {
    let n = sigma.vertex_count();
    check_labeling(phi, n)?;
    if k == 0 || k > 256 {
        return Err(MicrostateError::BadAlphabet(k));
    }
    if let Some(&label) = phi.values().iter().find(|&&l| l as usize >= k) {
        return Err(MicrostateError::LabelOutOfRange { label, alphabet: k });
    }
    let m = window.len() as u32;
    let patterns = (k as u128).pow(m);
    if patterns > EMPIRICAL_PATTERN_CAP {
        return Err(MicrostateError::CapExceeded {
            needed: patterns,
            cap: EMPIRICAL_PATTERN_CAP as u64,
        });
    }
    let actions = inverse_actions(sigma, window.words())?;
    let mut table = vec![0.0; patterns as usize];
    let weight = 1.0 / n as f64;
    for v in 0..n {
        let mut flat = 0usize;
        for action in &actions {
            flat = flat * k + phi.values()[action[v]] as usize;
        }
        table[flat] += weight;
    }
    Ok(JointDist::new(vec![k; m as usize], table)?)
}

/// Total-variation distance `Σ |p_i - q_i|` between two equal-shape joint
/// distributions; ranges over [0, 2].
pub fn total_variation(p: &JointDist, q: &JointDist) -> Result<f64, MicrostateError> {
    if p.shape() != q.shape() {
        return Err(MicrostateError::Entropy(
            entropy_core::EntropyError::ShapeMismatch {
                expected: p.table().len(),
                actual: q.table().len(),
            },
        ));
    }
    Ok(p.table()
        .iter()
        .zip(q.table())
        .map(|(a, b)| (a - b).abs())
        .sum())
}

fn check_labeling(phi: &Labeling, n: usize) -> Result<(), MicrostateError> {
    if phi.len() != n {
        return Err(MicrostateError::LabelingSizeMismatch {
            labels: phi.len(),
            vertices: n,
        });
    }
    Ok(())
}
