use entropy_core::{compensated_sum, shannon_weights};

use crate::error::PressureError;

/// The unique equilibrium state of a single-site potential, which is a
/// product measure, together with the pressure it attains.
#[derive(Debug, Clone)]
pub struct ProductEquilibrium {
    /// `κ(k) = exp(ψ0(k)) / Σ_l exp(ψ0(l))`.
    pub kappa: Vec<f64>,
    /// `ln Σ_l exp(ψ0(l))`; equals `H(κ) + E_κ[ψ0]` up to rounding.
    pub pressure: f64,
}

/// Evaluates the closed-form equilibrium state of a vertex table.
pub fn equilibrium_product_measure(psi0: &[f64]) -> Result<ProductEquilibrium, PressureError> {
    if psi0.is_empty() {
        return Err(PressureError::BadSpec("empty vertex table".into()));
    }
    if psi0.iter().any(|v| !v.is_finite()) {
        return Err(PressureError::BadSpec("potential values must be finite".into()));
    }
    let top = psi0.iter().fold(f64::NEG_INFINITY, |m, &v| m.max(v));
    let scaled = compensated_sum(psi0.iter().map(|&v| (v - top).exp()));
    let pressure = top + scaled.ln();
    let kappa = psi0.iter().map(|&v| (v - pressure).exp()).collect();
    Ok(ProductEquilibrium { kappa, pressure })
}

/// `H(κ) + E_κ[ψ0]`, the variational score of a product measure against
/// a vertex table; maximized by `equilibrium_product_measure`.
pub fn product_score(kappa: &[f64], psi0: &[f64]) -> Result<f64, PressureError> {
    if kappa.len() != psi0.len() {
        return Err(PressureError::DistributionSizeMismatch {
            expected: psi0.len() as u128,
            got: kappa.len(),
        });
    }
    if let Some(&bad) = kappa.iter().find(|&&p| !(0.0..=1.0).contains(&p)) {
        return Err(PressureError::BadDistribution(format!(
            "weight {bad} outside [0, 1]"
        )));
    }
    let total = compensated_sum(kappa.iter().copied());
    if (total - 1.0).abs() > 1e-9 {
        return Err(PressureError::BadDistribution(format!(
            "weights sum to {total}"
        )));
    }
    let mean = compensated_sum(kappa.iter().zip(psi0).map(|(&p, &v)| p * v));
    Ok(shannon_weights(kappa) + mean)
}
