use markov_f::PatternMeasure;
use sofic::SoficSequence;

use crate::count::{count_microstates_exact, estimate_microstates_mc, McEstimate};
use crate::error::MicrostateError;
use crate::query::MicrostateQuery;

/// How each model of a sequence is counted.
#[derive(Debug, Clone, Copy)]
pub enum CountMethod {
    Exact { cap: u64 },
    MonteCarlo { samples: u64, seed: u64 },
}

/// One model's normalized log-count; `None` log-count means no
/// microstates were found (reported as EMPTY, never as `-inf`).
#[derive(Debug, Clone)]
pub struct EntropyRow {
    pub n: usize,
    pub log_count: Option<f64>,
    pub normalized: Option<f64>,
    /// Confidence half-width of `log_count` for Monte-Carlo rows.
    pub halfwidth: Option<f64>,
}

/// Per-n normalized log-counts along a sofic sequence. No limit is
/// claimed; the last-three-point slope says how settled the tail looks.
#[derive(Debug, Clone)]
pub struct EntropyTable {
    pub rows: Vec<EntropyRow>,
    /// Least-squares slope of `normalized` against `n` over the last
    /// three rows; `None` if any of them found no microstates.
    pub last_three_slope: Option<f64>,
}

/// Counts `(radius, delta)`-microstates for `target` on every model of
/// the sequence and reports normalized log-counts.
pub fn sofic_entropy_estimate(
    target: &dyn PatternMeasure,
    sequence: &SoficSequence,
    radius: u32,
    delta: f64,
    method: CountMethod,
) -> Result<EntropyTable, MicrostateError> {
    let mut rows = Vec::with_capacity(sequence.maps().len());
    for sigma in sequence.maps() {
        let query = MicrostateQuery::new(target, radius, delta, sigma)?;
        let n = sigma.vertex_count();
        let row = match method {
            CountMethod::Exact { cap } => {
                let count = count_microstates_exact(&query, cap)?;
                let log_count = (count > 0).then(|| (count as f64).ln());
                EntropyRow {
                    n,
                    log_count,
                    normalized: log_count.map(|l| l / n as f64),
                    halfwidth: None,
                }
            }
            CountMethod::MonteCarlo { samples, seed } => {
                match estimate_microstates_mc(&query, samples, seed)? {
                    McEstimate::NoHits { .. } => EntropyRow {
                        n,
                        log_count: None,
                        normalized: None,
                        halfwidth: None,
                    },
                    McEstimate::Estimate {
                        log_count,
                        halfwidth,
                        ..
                    } => EntropyRow {
                        n,
                        log_count: Some(log_count),
                        normalized: Some(log_count / n as f64),
                        halfwidth: Some(halfwidth),
                    },
                }
            }
        };
        rows.push(row);
    }
    let last_three_slope = slope_of_last_three(&rows);
    Ok(EntropyTable {
        rows,
        last_three_slope,
    })
}

fn slope_of_last_three(rows: &[EntropyRow]) -> Option<f64> {
    if rows.len() < 3 {
        return None;
    }
    let tail = &rows[rows.len() - 3..];
    let mut points = Vec::with_capacity(3);
    for row in tail {
        points.push((row.n as f64, row.normalized?));
    }
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / 3.0;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / 3.0;
    let cov: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let var: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    Some(cov / var)
}
