use rayon::prelude::*;

use crate::error::PressureError;
use crate::potential::Potential;
use crate::spec::{check_rank, SftSpec};
use sofic::{SoficMap, SoficSequence};

/// Default bound on `|K|^n` for exhaustive enumeration.
pub const DEFAULT_ENUM_CAP: u64 = 1 << 24;

// Work unit for parallel enumeration; partials are merged in chunk order
// so the result is independent of the thread count.
const CHUNK: u64 = 1 << 12;

/// `ln Σ_φ exp(E(φ))` over labelings of the model that the constraint
/// admits (all labelings when `None`). Rank-1 models go through an exact
/// per-cycle transfer-matrix trace; higher ranks enumerate under `cap`.
///
/// Returns `-inf` when the constraint excludes every labeling.
pub fn partition_function(
    sigma: &SoficMap,
    psi: &Potential,
    constraint: Option<&SftSpec>,
    cap: u64,
) -> Result<f64, PressureError> {
    validate(sigma, psi, constraint)?;
    if sigma.rank() == 1 {
        return Ok(transfer_log_z(sigma, psi, constraint));
    }
    enumerate_log_z(sigma, psi, constraint, cap)
}

/// The enumeration path regardless of rank; cross-checks the transfer
/// path on rank-1 models.
pub fn partition_function_enumerated(
    sigma: &SoficMap,
    psi: &Potential,
    constraint: Option<&SftSpec>,
    cap: u64,
) -> Result<f64, PressureError> {
    validate(sigma, psi, constraint)?;
    enumerate_log_z(sigma, psi, constraint, cap)
}

/// One model's partition function, raw and per-vertex.
#[derive(Debug, Clone)]
pub struct PressureRow {
    pub n: usize,
    pub log_z: f64,
    pub normalized: f64,
}

/// Per-n normalized `ln Z` along a sofic sequence. No limit is claimed;
/// the last-three-point slope says how settled the tail looks.
#[derive(Debug, Clone)]
pub struct PressureTable {
    pub rows: Vec<PressureRow>,
    /// Least-squares slope of `normalized` against `n` over the last
    /// three rows; `None` if any of them is not finite.
    pub last_three_slope: Option<f64>,
}

/// Evaluates the partition function on every model of the sequence.
pub fn pressure_table(
    seq: &SoficSequence,
    psi: &Potential,
    constraint: Option<&SftSpec>,
    cap: u64,
) -> Result<PressureTable, PressureError> {
    let mut rows = Vec::with_capacity(seq.maps().len());
    for sigma in seq.maps() {
        let n = sigma.vertex_count();
        let log_z = partition_function(sigma, psi, constraint, cap)?;
        rows.push(PressureRow {
            n,
            log_z,
            normalized: log_z / n as f64,
        });
    }
    let last_three_slope = slope_of_last_three(&rows);
    Ok(PressureTable {
        rows,
        last_three_slope,
    })
}

fn slope_of_last_three(rows: &[PressureRow]) -> Option<f64> {
    if rows.len() < 3 {
        return None;
    }
    let tail = &rows[rows.len() - 3..];
    if tail.iter().any(|row| !row.normalized.is_finite()) {
        return None;
    }
    let mean_x = tail.iter().map(|r| r.n as f64).sum::<f64>() / 3.0;
    let mean_y = tail.iter().map(|r| r.normalized).sum::<f64>() / 3.0;
    let cov: f64 = tail
        .iter()
        .map(|r| (r.n as f64 - mean_x) * (r.normalized - mean_y))
        .sum();
    let var: f64 = tail.iter().map(|r| (r.n as f64 - mean_x).powi(2)).sum();
    Some(cov / var)
}

fn validate(
    sigma: &SoficMap,
    psi: &Potential,
    constraint: Option<&SftSpec>,
) -> Result<(), PressureError> {
    check_rank(psi.rank(), sigma)?;
    if let Some(sft) = constraint {
        check_rank(sft.rank(), sigma)?;
        if sft.alphabet_size() != psi.alphabet_size() {
            return Err(PressureError::AlphabetMismatch {
                expected: psi.alphabet_size(),
                got: sft.alphabet_size(),
            });
        }
    }
    Ok(())
}

/// Fills `out` with the base-`k` digits of `index`, first vertex most
/// significant (the same order as `microstates::Labeling::from_index`).
pub(crate) fn decode_index(mut index: u64, k: u64, out: &mut [u8]) {
    for slot in out.iter_mut().rev() {
        *slot = (index % k) as u8;
        index /= k;
    }
}

fn enumerate_log_z(
    sigma: &SoficMap,
    psi: &Potential,
    constraint: Option<&SftSpec>,
    cap: u64,
) -> Result<f64, PressureError> {
    let n = sigma.vertex_count();
    let k = psi.alphabet_size();
    let needed = (k as u128).pow(n as u32);
    if needed > cap as u128 {
        return Err(PressureError::CapExceeded { needed, cap });
    }
    let total = needed as u64;
    let rank = sigma.rank();
    let inverses: Vec<&[usize]> = (1..=rank).map(|s| sigma.inv_perm(s)).collect();
    let edges: Vec<&[f64]> = (1..=rank).map(|s| psi.edge(s)).collect();
    let tables: Option<Vec<&[bool]>> =
        constraint.map(|sft| (1..=rank).map(|s| sft.table(s)).collect());
    let chunks: Vec<(u64, u64)> = (0..total.div_ceil(CHUNK))
        .map(|c| (c * CHUNK, total.min((c + 1) * CHUNK)))
        .collect();
    // Per-chunk streaming log-sum-exp partials (local max, scaled sum).
    let partials: Vec<(f64, f64)> = chunks
        .par_iter()
        .map(|&(start, stop)| {
            let mut values = vec![0u8; n];
            let mut local_max = f64::NEG_INFINITY;
            let mut scaled = 0.0;
            for index in start..stop {
                decode_index(index, k as u64, &mut values);
                if let Some(tables) = &tables {
                    let legal = tables.iter().zip(&inverses).all(|(table, inverse)| {
                        values
                            .iter()
                            .enumerate()
                            .all(|(v, &l)| table[l as usize * k + values[inverse[v]] as usize])
                    });
                    if !legal {
                        continue;
                    }
                }
                let mut energy = 0.0;
                for &l in &values {
                    energy += psi.vertex()[l as usize];
                }
                for (table, inverse) in edges.iter().zip(&inverses) {
                    for (v, &l) in values.iter().enumerate() {
                        energy += table[l as usize * k + values[inverse[v]] as usize];
                    }
                }
                if energy > local_max {
                    scaled = scaled * (local_max - energy).exp() + 1.0;
                    local_max = energy;
                } else {
                    scaled += (energy - local_max).exp();
                }
            }
            (local_max, scaled)
        })
        .collect();
    let mut global_max = f64::NEG_INFINITY;
    let mut total_scaled = 0.0;
    for &(local_max, scaled) in &partials {
        if scaled == 0.0 {
            continue;
        }
        if local_max > global_max {
            total_scaled = total_scaled * (global_max - local_max).exp() + scaled;
            global_max = local_max;
        } else {
            total_scaled += scaled * (local_max - global_max).exp();
        }
    }
    if total_scaled == 0.0 {
        return Ok(f64::NEG_INFINITY);
    }
    Ok(global_max + total_scaled.ln())
}

// Exact rank-1 path: the generator permutation is a disjoint union of
// cycles and `ln Z = Σ_cycles ln tr(M^L)` for the transfer matrix
// `M[i][j] = allowed(j, i) · exp(vertex[j] + edge[j, i])`, where `i` is
// the previous symbol along the cycle and `j` the current one.
fn transfer_log_z(sigma: &SoficMap, psi: &Potential, constraint: Option<&SftSpec>) -> f64 {
    let k = psi.alphabet_size();
    let mut matrix = vec![0.0; k * k];
    for j in 0..k {
        for i in 0..k {
            let legal = constraint.is_none_or(|sft| sft.is_allowed(1, j, i));
            if legal {
                matrix[i * k + j] = (psi.vertex()[j] + psi.edge(1)[j * k + i]).exp();
            }
        }
    }
    let perm = sigma.perm(1);
    let mut visited = vec![false; perm.len()];
    let mut log_z = 0.0;
    for start in 0..perm.len() {
        if visited[start] {
            continue;
        }
        let mut length = 0u64;
        let mut v = start;
        while !visited[v] {
            visited[v] = true;
            v = perm[v];
            length += 1;
        }
        log_z += log_trace_power(&matrix, k, length);
    }
    log_z
}

// `ln tr(M^l)` for an entrywise-nonnegative matrix, by squaring with
// running magnitude rescaling; `-inf` when the trace vanishes.
fn log_trace_power(matrix: &[f64], k: usize, l: u64) -> f64 {
    let mut power = matrix.to_vec();
    let mut power_log = match rescale(&mut power) {
        Some(log) => log,
        None => return f64::NEG_INFINITY,
    };
    let mut acc: Option<(Vec<f64>, f64)> = None;
    let mut remaining = l;
    loop {
        if remaining & 1 == 1 {
            let (mut next, mut next_log) = match &acc {
                Some((mat, log)) => (mat_mul(mat, &power, k), log + power_log),
                None => (power.clone(), power_log),
            };
            match rescale(&mut next) {
                Some(log) => next_log += log,
                None => return f64::NEG_INFINITY,
            }
            acc = Some((next, next_log));
        }
        remaining >>= 1;
        if remaining == 0 {
            break;
        }
        let mut squared = mat_mul(&power, &power, k);
        power_log *= 2.0;
        match rescale(&mut squared) {
            Some(log) => power_log += log,
            None => return f64::NEG_INFINITY,
        }
        power = squared;
    }
    let (mat, log) = acc.expect("power of at least one bit");
    let trace: f64 = (0..k).map(|i| mat[i * k + i]).sum();
    if trace <= 0.0 {
        return f64::NEG_INFINITY;
    }
    log + trace.ln()
}

fn mat_mul(a: &[f64], b: &[f64], k: usize) -> Vec<f64> {
    let mut out = vec![0.0; k * k];
    for i in 0..k {
        for m in 0..k {
            let left = a[i * k + m];
            if left == 0.0 {
                continue;
            }
            for j in 0..k {
                out[i * k + j] += left * b[m * k + j];
            }
        }
    }
    out
}

// Scales the matrix so its largest entry is 1; `None` for the zero matrix.
fn rescale(matrix: &mut [f64]) -> Option<f64> {
    let largest = matrix.iter().fold(0.0f64, |m, &v| m.max(v));
    if largest <= 0.0 {
        return None;
    }
    for v in matrix.iter_mut() {
        *v /= largest;
    }
    Some(largest.ln())
}
