use markov_f::MarkovChainSpec;

use crate::error::MicrostateError;

/// The closed-form annealed expectation: `ln E[#labelings]` whose vertex
/// counts are exactly `n·π(k)` and whose per-generator pair counts are
/// exactly `n·edge(k,l)`, averaged over independent uniform permutations.
#[derive(Debug, Clone)]
pub struct AnnealedCount {
    /// `ln E` in nats.
    pub log_expected: f64,
    /// `log_expected / n`; converges to the f-invariant of the chain.
    pub normalized: f64,
    /// Largest `|n·μ(cell) - round(n·μ(cell))|` over all rounded cells.
    pub max_residual: f64,
    /// Rounded vertex counts `n_k`.
    pub vertex_counts: Vec<u64>,
}

// Rounded counts further off than this are reported as infeasible rather
// than silently snapped.
const RESIDUAL_TOLERANCE: f64 = 0.5 - 1e-9;

/// Evaluates `ln E` for a Markov chain at model size `n`:
///
/// `ln E = ln multinomial(n; {n_k}) + Σ_g [2·Σ_k ln n_k! − ln n! − Σ_{k,l} ln n_kl!]`
///
/// (both margins of every edge law are `π`, hence the doubled term). The
/// cell counts must be integers after rounding; otherwise the error
/// suggests the nearest feasible `n`.
pub fn annealed_count(
    m: &MarkovChainSpec,
    n: u64,
    rank: u8,
) -> Result<AnnealedCount, MicrostateError> {
    if rank != m.rank() {
        return Err(MicrostateError::RankMismatch {
            target: rank,
            model: m.rank(),
        });
    }
    if n == 0 {
        return Err(MicrostateError::InfeasibleCounts {
            detail: "model size 0".into(),
            suggestion: Some(1),
        });
    }
    let k = m.alphabet_size();
    let mut max_residual = 0.0f64;
    let vertex_counts = round_cells(n, m.pi(), &mut max_residual)
        .ok_or_else(|| infeasible(m, n, "a vertex count sits halfway between integers"))?;
    if vertex_counts.iter().sum::<u64>() != n {
        return Err(infeasible(m, n, "rounded vertex counts do not sum to n"));
    }

    let mut log_expected = ln_multinomial(n, &vertex_counts);
    let vertex_term: f64 = vertex_counts.iter().map(|&c| ln_factorial(c)).sum();
    for s in 1..=m.rank() {
        let pair_counts = round_cells(n, m.edge_law(s), &mut max_residual)
            .ok_or_else(|| infeasible(m, n, "a pair count sits halfway between integers"))?;
        // The formula is the exact expectation for the rounded counts, so
        // they must still look like a coloring's statistics.
        for row in 0..k {
            let row_sum: u64 = pair_counts[row * k..(row + 1) * k].iter().sum();
            let col_sum: u64 = (0..k).map(|l| pair_counts[l * k + row]).sum();
            if row_sum != vertex_counts[row] || col_sum != vertex_counts[row] {
                return Err(infeasible(m, n, "pair counts do not match vertex counts"));
            }
        }
        log_expected += 2.0 * vertex_term - ln_factorial(n);
        log_expected -= pair_counts.iter().map(|&c| ln_factorial(c)).sum::<f64>();
    }
    Ok(AnnealedCount {
        log_expected,
        normalized: log_expected / n as f64,
        max_residual,
        vertex_counts,
    })
}

fn round_cells(n: u64, law: &[f64], max_residual: &mut f64) -> Option<Vec<u64>> {
    let mut cells = Vec::with_capacity(law.len());
    for &p in law {
        let scaled = n as f64 * p;
        let rounded = scaled.round();
        let residual = (scaled - rounded).abs();
        *max_residual = max_residual.max(residual);
        if residual > RESIDUAL_TOLERANCE {
            return None;
        }
        cells.push(rounded as u64);
    }
    Some(cells)
}

fn infeasible(m: &MarkovChainSpec, n: u64, detail: &str) -> MicrostateError {
    MicrostateError::InfeasibleCounts {
        detail: format!("{detail} at n={n}"),
        suggestion: nearest_feasible_n(m, n),
    }
}

// Scans outward from n for a size making every cell integral to 1e-6.
fn nearest_feasible_n(m: &MarkovChainSpec, n: u64) -> Option<u64> {
    let feasible = |candidate: u64| {
        let integral = |law: &[f64]| {
            law.iter().all(|&p| {
                let scaled = candidate as f64 * p;
                (scaled - scaled.round()).abs() <= 1e-6
            })
        };
        integral(m.pi()) && (1..=m.rank()).all(|s| integral(m.edge_law(s)))
    };
    for offset in 0..=100_000u64 {
        if n > offset && feasible(n - offset) {
            return Some(n - offset);
        }
        if feasible(n + offset) {
            return Some(n + offset);
        }
    }
    None
}

/// `ln(x!)`: exact integer factorial through 20!, log-gamma beyond.
pub(crate) fn ln_factorial(x: u64) -> f64 {
    if x <= 20 {
        ((1..=x).product::<u64>() as f64).ln()
    } else {
        statrs::function::gamma::ln_gamma(x as f64 + 1.0)
    }
}

fn ln_multinomial(n: u64, counts: &[u64]) -> f64 {
    ln_factorial(n) - counts.iter().map(|&c| ln_factorial(c)).sum::<f64>()
}
