use entropy_core::shannon_weights;
use markov_f::{f_markov, models, MarkovChainSpec};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::PressureError;
use crate::spec::SftSpec;

/// Restart optima within this of the best value count as ties.
pub const VALUE_TIE: f64 = 1e-9;

// Multi-start budget of the generic branch; the objective is not concave,
// so a single start certifies nothing.
const RESTARTS: usize = 16;
const RESTART_SEED: u64 = 0x5F7;

// Inner maxent-coupling solve (iterative proportional fitting).
const IPF_TOLERANCE: f64 = 1e-13;
const IPF_MAX_ROUNDS: usize = 20_000;

// Outer mirror ascent on the vertex marginal.
const OUTER_MAX_STEPS: usize = 2_000;
const OUTER_GAIN: f64 = 1e-12;
const LINE_SEARCH_HALVINGS: usize = 60;

// Parameter distance below which two chains count as the same optimum.
const CHAIN_MERGE_DISTANCE: f64 = 1e-6;

/// A stationary Markov chain on the subshift maximizing
/// `F = -(2r-1)·H(π) + Σ_s H(λ_s)` over its search class, with the value.
#[derive(Debug, Clone)]
pub struct MaxentReport {
    pub chain: MarkovChainSpec,
    pub value: f64,
    /// Closed form within the symbol-rotation symmetry class; `false`
    /// means seeded multi-start coordinate ascent over all chains.
    pub symmetric_branch: bool,
    /// Distinct restart optima tying the best value within `VALUE_TIE`;
    /// never silently collapsed.
    pub ties: Vec<MarkovChainSpec>,
}

/// Maximizes `F` over stationary Markov chains supported on the subshift.
///
/// Symbol-rotation-symmetric specs are solved in closed form within the
/// symmetric class (uniform marginal, per-row maxent over allowed
/// offsets); `F` is not concave, so chains outside that class can still
/// exceed the returned value (a Dirac fixed point reaches `F = 0`).
/// Other specs go through `maxent_generic`.
pub fn maxent_markov_on_sft(spec: &SftSpec) -> Result<MaxentReport, PressureError> {
    if spec.has_cyclic_symbol_symmetry() {
        return symmetric_maximizer(spec);
    }
    maxent_generic(spec, RESTARTS, RESTART_SEED)
}

/// Multi-start coordinate ascent: per-generator maxent couplings by
/// iterative proportional fitting inside, mirror ascent on the vertex
/// marginal outside. Reports the best local optimum and any ties.
pub fn maxent_generic(
    spec: &SftSpec,
    restarts: usize,
    seed: u64,
) -> Result<MaxentReport, PressureError> {
    if restarts == 0 {
        return Err(PressureError::BadSpec("need at least one restart".into()));
    }
    let k = spec.alphabet_size();
    // Restart 0 always starts at the uniform marginal; the rest draw
    // flat-Dirichlet marginals from per-restart RNG streams.
    let candidates: Vec<Option<Candidate>> = (0..restarts)
        .into_par_iter()
        .map(|restart| {
            let start = if restart == 0 {
                vec![1.0 / k as f64; k]
            } else {
                dirichlet_start(k, seed, restart as u64)
            };
            ascend_from(spec, start)
        })
        .collect();
    let mut best: Option<&Candidate> = None;
    for candidate in candidates.iter().flatten() {
        if best.is_none_or(|b| candidate.value > b.value) {
            best = Some(candidate);
        }
    }
    let best = best.ok_or_else(|| {
        PressureError::Infeasible("no restart produced a feasible stationary chain".into())
    })?;
    let chain = best.to_chain()?;
    let value = f_markov(&chain)?;
    let mut ties: Vec<MarkovChainSpec> = Vec::new();
    for candidate in candidates.iter().flatten() {
        if best.value - candidate.value > VALUE_TIE {
            continue;
        }
        let other = candidate.to_chain()?;
        if chain_distance(&chain, &other) > CHAIN_MERGE_DISTANCE
            && ties
                .iter()
                .all(|t| chain_distance(t, &other) > CHAIN_MERGE_DISTANCE)
        {
            ties.push(other);
        }
    }
    Ok(MaxentReport {
        chain,
        value,
        symmetric_branch: false,
        ties,
    })
}

/// The Dirac chain frozen at `symbol`, validated to be a legal fixed
/// point of the subshift. Its `F` is exactly 0.
pub fn dirac_fixed_point_chain(
    spec: &SftSpec,
    symbol: usize,
) -> Result<MarkovChainSpec, PressureError> {
    let k = spec.alphabet_size();
    if symbol >= k {
        return Err(PressureError::LabelOutOfRange {
            label: symbol.min(255) as u8,
            alphabet: k,
        });
    }
    for s in 1..=spec.rank() {
        if !spec.is_allowed(s, symbol, symbol) {
            return Err(PressureError::Infeasible(format!(
                "symbol {symbol} is not a fixed point under generator {s}"
            )));
        }
    }
    Ok(models::dirac_chain(spec.rank(), k, symbol)?)
}

// Closed form under the symbol rotation `k ↦ k+1`: invariance forces the
// uniform marginal, every edge law is a circulant built from one row
// distribution over the allowed offsets, and `H(λ_s) = ln k + H(row_s)`
// is maximized by the uniform row.
fn symmetric_maximizer(spec: &SftSpec) -> Result<MaxentReport, PressureError> {
    let k = spec.alphabet_size();
    let pi = vec![1.0 / k as f64; k];
    let mut lambdas = Vec::with_capacity(spec.rank() as usize);
    for s in 1..=spec.rank() {
        let offsets = spec.offsets(s);
        let cell = 1.0 / (k * offsets.len()) as f64;
        let mut lambda = vec![0.0; k * k];
        for from in 0..k {
            for &d in &offsets {
                lambda[from * k + (from + d) % k] = cell;
            }
        }
        lambdas.push(lambda);
    }
    let chain = MarkovChainSpec::new(spec.rank(), symbol_labels(k), pi, lambdas)?;
    let value = f_markov(&chain)?;
    Ok(MaxentReport {
        chain,
        value,
        symmetric_branch: true,
        ties: Vec::new(),
    })
}

struct Candidate {
    rank: u8,
    pi: Vec<f64>,
    lambdas: Vec<Vec<f64>>,
    value: f64,
}

impl Candidate {
    fn to_chain(&self) -> Result<MarkovChainSpec, PressureError> {
        let k = self.pi.len();
        Ok(MarkovChainSpec::new(
            self.rank,
            symbol_labels(k),
            self.pi.clone(),
            self.lambdas.clone(),
        )?)
    }
}

struct Coupling {
    lambda: Vec<f64>,
    log_a: Vec<f64>,
    log_b: Vec<f64>,
}

fn ascend_from(spec: &SftSpec, start: Vec<f64>) -> Option<Candidate> {
    let rank = spec.rank();
    let mut pi = start;
    let mut couplings = solve_couplings(spec, &pi, None)?;
    let mut value = objective(rank, &pi, &couplings);
    for _ in 0..OUTER_MAX_STEPS {
        let grad = gradient(rank, &pi, &couplings);
        let mut improved = false;
        let mut eta = 1.0;
        for _ in 0..LINE_SEARCH_HALVINGS {
            let next_pi = mirror_step(&pi, &grad, eta);
            if let Some(next_couplings) = solve_couplings(spec, &next_pi, Some(&couplings)) {
                let next_value = objective(rank, &next_pi, &next_couplings);
                if next_value > value {
                    let gain = next_value - value;
                    pi = next_pi;
                    couplings = next_couplings;
                    value = next_value;
                    improved = gain >= OUTER_GAIN;
                    break;
                }
            }
            eta *= 0.5;
        }
        if !improved {
            break;
        }
    }
    Some(Candidate {
        rank,
        pi,
        lambdas: couplings.into_iter().map(|c| c.lambda).collect(),
        value,
    })
}

// `warm` carries the previous step's scaling multipliers; nearby
// marginals then converge in a few rounds.
fn solve_couplings(
    spec: &SftSpec,
    pi: &[f64],
    warm: Option<&[Coupling]>,
) -> Option<Vec<Coupling>> {
    (1..=spec.rank())
        .map(|s| {
            let previous = warm.map(|w| &w[(s - 1) as usize]);
            ipf_maxent_coupling(pi, spec.table(s), previous)
        })
        .collect()
}

// Maximum-entropy coupling with both marginals `pi` and the given
// support, as the scaling limit `λ_ij = a_i b_j` on allowed cells.
// `None` when the fitting does not converge (empty polytope).
fn ipf_maxent_coupling(pi: &[f64], table: &[bool], warm: Option<&Coupling>) -> Option<Coupling> {
    let k = pi.len();
    let log_pi: Vec<f64> = pi.iter().map(|p| p.ln()).collect();
    let mut log_a = vec![0.0; k];
    let mut log_b = match warm {
        Some(previous) => previous.log_b.clone(),
        None => vec![0.0; k],
    };
    for _ in 0..IPF_MAX_ROUNDS {
        for i in 0..k {
            let rest = log_sum_exp((0..k).filter(|&j| table[i * k + j]).map(|j| log_b[j]))?;
            log_a[i] = log_pi[i] - rest;
        }
        for j in 0..k {
            let rest = log_sum_exp((0..k).filter(|&i| table[i * k + j]).map(|i| log_a[i]))?;
            log_b[j] = log_pi[j] - rest;
        }
        // Columns are exact after their update; convergence is judged on
        // the rows.
        let mut deviation = 0.0f64;
        for i in 0..k {
            let row: f64 = (0..k)
                .filter(|&j| table[i * k + j])
                .map(|j| (log_a[i] + log_b[j]).exp())
                .sum();
            deviation = deviation.max((row - pi[i]).abs());
        }
        if deviation < IPF_TOLERANCE {
            let mut lambda = vec![0.0; k * k];
            for i in 0..k {
                let mut row = 0.0;
                for j in 0..k {
                    if table[i * k + j] {
                        lambda[i * k + j] = (log_a[i] + log_b[j]).exp();
                        row += lambda[i * k + j];
                    }
                }
                // Exact row polish keeps the chain constructor's marginal
                // check well inside its tolerance.
                let fix = pi[i] / row;
                for j in 0..k {
                    lambda[i * k + j] *= fix;
                }
                log_a[i] += fix.ln();
            }
            return Some(Coupling {
                lambda,
                log_a,
                log_b,
            });
        }
    }
    None
}

fn objective(rank: u8, pi: &[f64], couplings: &[Coupling]) -> f64 {
    let pair_sum: f64 = couplings.iter().map(|c| shannon_weights(&c.lambda)).sum();
    pair_sum - (2.0 * rank as f64 - 1.0) * shannon_weights(pi)
}

// Envelope gradient of the objective in `pi`: the inner maxima contribute
// through their scaling multipliers only.
fn gradient(rank: u8, pi: &[f64], couplings: &[Coupling]) -> Vec<f64> {
    let factor = 2.0 * rank as f64 - 1.0;
    (0..pi.len())
        .map(|k| {
            let inner: f64 = couplings
                .iter()
                .map(|c| c.log_a[k] + c.log_b[k] + 1.0)
                .sum();
            factor * (pi[k].ln() + 1.0) - inner
        })
        .collect()
}

// Exponentiated-gradient step; clamped logits keep the marginal strictly
// interior so logarithms stay finite.
fn mirror_step(pi: &[f64], grad: &[f64], eta: f64) -> Vec<f64> {
    let logits: Vec<f64> = pi
        .iter()
        .zip(grad)
        .map(|(p, g)| p.ln() + eta * g)
        .collect();
    let top = logits.iter().fold(f64::NEG_INFINITY, |m, &v| m.max(v));
    let shifted: Vec<f64> = logits.iter().map(|&v| (v - top).max(-700.0).exp()).collect();
    let total: f64 = shifted.iter().sum();
    shifted.iter().map(|&v| v / total).collect()
}

fn log_sum_exp(values: impl Iterator<Item = f64> + Clone) -> Option<f64> {
    let top = values.clone().fold(f64::NEG_INFINITY, |m, v| m.max(v));
    if top == f64::NEG_INFINITY {
        return None;
    }
    let sum: f64 = values.map(|v| (v - top).exp()).sum();
    Some(top + sum.ln())
}

fn dirichlet_start(k: usize, seed: u64, stream: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut draws: Vec<f64> = (0..k)
        .map(|_| {
            let unit = ((rng.next_u64() >> 11) as f64 + 1.0) / (1u64 << 53) as f64;
            -unit.ln()
        })
        .collect();
    let total: f64 = draws.iter().sum();
    for d in draws.iter_mut() {
        // Floor keeps starts interior without visibly biasing them.
        *d = (*d / total).max(1e-12);
    }
    let total: f64 = draws.iter().sum();
    for d in draws.iter_mut() {
        *d /= total;
    }
    draws
}

fn symbol_labels(k: usize) -> Vec<String> {
    (0..k).map(|i| i.to_string()).collect()
}

fn chain_distance(a: &MarkovChainSpec, b: &MarkovChainSpec) -> f64 {
    let mut worst = 0.0f64;
    for (&x, &y) in a.pi().iter().zip(b.pi()) {
        worst = worst.max((x - y).abs());
    }
    for s in 1..=a.rank() {
        for (&x, &y) in a.edge_law(s).iter().zip(b.edge_law(s)) {
            worst = worst.max((x - y).abs());
        }
    }
    worst
}
