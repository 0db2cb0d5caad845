use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::SoficError;
use crate::map::SoficMap;

/// Second-largest eigenvalue modulus of the Schreier-graph walk, with the
/// data needed to turn it into expansion statements.
#[derive(Debug, Clone)]
pub struct ExpanderWitness {
    /// Second-largest eigenvalue modulus of the simple-random-walk matrix.
    pub lambda2: f64,
    /// Power-iteration steps actually used.
    pub iterations: usize,
    /// False iff the iteration cap was hit before the estimates settled.
    pub converged: bool,
    rank: u8,
}

impl ExpanderWitness {
    /// True iff `lambda2` is strictly below the threshold.
    pub fn is_expander_at(&self, threshold: f64) -> bool {
        self.lambda2 < threshold
    }

    /// Cheeger-style lower bound `(1 - lambda2)·r` on the edge expansion
    /// of the 2r-regular Schreier graph.
    pub fn edge_expansion_bound(&self) -> f64 {
        (1.0 - self.lambda2) * self.rank as f64
    }
}

const SUCCESSIVE_TOL: f64 = 1e-8;
const MAX_ITERATIONS: usize = 10_000;
const SEED: u64 = 0x5EC7;

/// Estimates the second-largest eigenvalue modulus of the random-walk
/// matrix `P` of the Schreier graph of `sigma`.
///
/// Power iteration runs on `P²` (so the `±λ` pair of a bipartite graph
/// cannot stall it) with the constant vector deflated each step; the
/// estimate is the Rayleigh quotient of `P²`, reported as its square root.
/// Iteration stops when successive estimates differ by less than `1e-8`,
/// or after `10^4` steps.
pub fn expander_witness(sigma: &SoficMap) -> Result<ExpanderWitness, SoficError> {
    let n = sigma.vertex_count();
    if n < 2 {
        return Err(SoficError::BadSpec(
            "spectral gap needs at least 2 vertices".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut x: Vec<f64> = (0..n)
        .map(|_| rng.next_u64() as f64 / u64::MAX as f64 - 0.5)
        .collect();
    deflate_and_normalize(&mut x);

    let mut y = vec![0.0; n];
    let mut z = vec![0.0; n];
    let mut previous = f64::INFINITY;
    let mut lambda2 = 0.0;
    let mut iterations = 0;
    let mut converged = false;
    while iterations < MAX_ITERATIONS {
        iterations += 1;
        walk_step(sigma, &x, &mut y);
        walk_step(sigma, &y, &mut z);
        // x is unit, so <x, P²x> is the Rayleigh quotient of P² >= 0.
        let rayleigh: f64 = x.iter().zip(&z).map(|(a, b)| a * b).sum();
        lambda2 = rayleigh.max(0.0).sqrt().min(1.0);
        if (lambda2 - previous).abs() < SUCCESSIVE_TOL {
            converged = true;
            break;
        }
        previous = lambda2;
        std::mem::swap(&mut x, &mut z);
        deflate_and_normalize(&mut x);
    }
    Ok(ExpanderWitness {
        lambda2,
        iterations,
        converged,
        rank: sigma.rank(),
    })
}

// One application of the walk matrix: `(Px)[v]` averages `x` over the 2r
// neighbors `σ(s)v` and `σ(s)⁻¹v`, which keeps P symmetric.
fn walk_step(sigma: &SoficMap, x: &[f64], out: &mut [f64]) {
    out.fill(0.0);
    for s in 1..=sigma.rank() {
        let forward = sigma.perm(s);
        let backward = sigma.inv_perm(s);
        for (v, slot) in out.iter_mut().enumerate() {
            *slot += x[forward[v]] + x[backward[v]];
        }
    }
    let scale = 1.0 / (2.0 * sigma.rank() as f64);
    for slot in out.iter_mut() {
        *slot *= scale;
    }
}

// Projects out the constant eigenvector and rescales to unit norm. A
// pathological start aligned with the constants is replaced by an exact
// alternating vector, which is orthogonal to them whenever n >= 2.
fn deflate_and_normalize(x: &mut [f64]) {
    let n = x.len() as f64;
    let mean = x.iter().sum::<f64>() / n;
    for slot in x.iter_mut() {
        *slot -= mean;
    }
    let norm = x.iter().map(|a| a * a).sum::<f64>().sqrt();
    if norm < 1e-300 {
        for (v, slot) in x.iter_mut().enumerate() {
            *slot = if v % 2 == 0 { 1.0 } else { -1.0 };
        }
        let mean = x.iter().sum::<f64>() / n;
        for slot in x.iter_mut() {
            *slot -= mean;
        }
        let norm = x.iter().map(|a| a * a).sum::<f64>().sqrt();
        for slot in x.iter_mut() {
            *slot /= norm;
        }
        return;
    }
    for slot in x.iter_mut() {
        *slot /= norm;
    }
}
