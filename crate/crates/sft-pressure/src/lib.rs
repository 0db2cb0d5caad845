//! Nearest-neighbor subshifts of finite type over free groups, evaluated
//! on finite models: partition functions and pressure tables, the finite
//! Gibbs variational identity `ln Z = H(Gibbs) + E_Gibbs[E]`, product
//! equilibrium states for single-site potentials, and stationary Markov
//! chains on a subshift maximizing `F = -(2r-1)H(π) + Σ_s H(λ_s)`.
//!
//! Conventions: the `s`-pair at vertex `v` is `(φ(v), φ(σ(s)⁻¹v))`,
//! matching pullback names and the `(X_e, X_s)` orientation of Markov
//! edge laws; energies enter positively, `Z = Σ_φ exp(+E(φ))`.

mod equilibrium;
mod error;
mod gibbs;
mod maxent;
mod partition;
mod potential;
mod spec;

pub use equilibrium::{equilibrium_product_measure, product_score, ProductEquilibrium};
pub use error::PressureError;
pub use gibbs::{gibbs_variational_check, score_distribution, GibbsCheck, GIBBS_CAP};
pub use maxent::{
    dirac_fixed_point_chain, maxent_generic, maxent_markov_on_sft, MaxentReport, VALUE_TIE,
};
pub use partition::{
    partition_function, partition_function_enumerated, pressure_table, PressureRow,
    PressureTable, DEFAULT_ENUM_CAP,
};
pub use potential::Potential;
pub use spec::{full_shift, mod_n_sft, SftSpec};
