use entropy_core::{compensated_sum, shannon_weights};

use crate::error::PressureError;
use crate::partition::decode_index;
use crate::potential::Potential;
use crate::spec::check_rank;
use sofic::SoficMap;

/// Hard bound on `|K|^n` for materializing the finite Gibbs measure.
pub const GIBBS_CAP: u64 = 1 << 12;

/// The finite Gibbs measure of a model and the variational identity
/// `ln Z = H(Gibbs) + E_Gibbs[E]`, which holds up to rounding.
#[derive(Debug, Clone)]
pub struct GibbsCheck {
    pub log_z: f64,
    pub entropy: f64,
    pub mean_energy: f64,
    /// `|log_z - entropy - mean_energy|`; pure floating-point residue.
    pub residual: f64,
    /// Probability of each labeling, indexed like `Labeling::from_index`.
    pub gibbs: Vec<f64>,
}

/// Materializes the Gibbs measure `∝ exp(E(φ))` over all `|K|^n`
/// labelings and evaluates the variational identity.
pub fn gibbs_variational_check(
    sigma: &SoficMap,
    psi: &Potential,
) -> Result<GibbsCheck, PressureError> {
    let energies = all_energies(sigma, psi)?;
    let max = energies.iter().fold(f64::NEG_INFINITY, |m, &e| m.max(e));
    let scaled_sum = compensated_sum(energies.iter().map(|&e| (e - max).exp()));
    let log_z = max + scaled_sum.ln();
    let gibbs: Vec<f64> = energies.iter().map(|&e| (e - log_z).exp()).collect();
    let entropy = shannon_weights(&gibbs);
    let mean_energy = compensated_sum(gibbs.iter().zip(&energies).map(|(&p, &e)| p * e));
    Ok(GibbsCheck {
        log_z,
        entropy,
        mean_energy,
        residual: (log_z - entropy - mean_energy).abs(),
        gibbs,
    })
}

/// `H(ν) + E_ν[E]` for an arbitrary distribution over all labelings;
/// by the variational identity this never exceeds `ln Z`, with equality
/// only at the Gibbs measure.
pub fn score_distribution(
    probs: &[f64],
    sigma: &SoficMap,
    psi: &Potential,
) -> Result<f64, PressureError> {
    let energies = all_energies(sigma, psi)?;
    if probs.len() != energies.len() {
        return Err(PressureError::DistributionSizeMismatch {
            expected: energies.len() as u128,
            got: probs.len(),
        });
    }
    if let Some(&bad) = probs.iter().find(|&&p| !(0.0..=1.0).contains(&p)) {
        return Err(PressureError::BadDistribution(format!(
            "weight {bad} outside [0, 1]"
        )));
    }
    let total = compensated_sum(probs.iter().copied());
    if (total - 1.0).abs() > 1e-9 {
        return Err(PressureError::BadDistribution(format!(
            "weights sum to {total}"
        )));
    }
    let mean_energy = compensated_sum(probs.iter().zip(&energies).map(|(&p, &e)| p * e));
    Ok(shannon_weights(probs) + mean_energy)
}

fn all_energies(sigma: &SoficMap, psi: &Potential) -> Result<Vec<f64>, PressureError> {
    check_rank(psi.rank(), sigma)?;
    let n = sigma.vertex_count();
    let k = psi.alphabet_size();
    let needed = (k as u128).pow(n as u32);
    if needed > GIBBS_CAP as u128 {
        return Err(PressureError::CapExceeded {
            needed,
            cap: GIBBS_CAP,
        });
    }
    let mut values = vec![0u8; n];
    let mut energies = Vec::with_capacity(needed as usize);
    for index in 0..needed as u64 {
        decode_index(index, k as u64, &mut values);
        energies.push(psi.energy(sigma, &values)?);
    }
    Ok(energies)
}
