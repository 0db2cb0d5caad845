use crate::error::PressureError;
use crate::spec::{check_labeling, check_rank};
use sofic::SoficMap;

/// A depth-1 potential: one vertex table `K → R` plus one edge table
/// `K×K → R` per positive generator, read in the `(x_e, x_s)` orientation.
///
/// Energies enter positively: `Z = Σ_φ exp(+E(φ))` with
/// `E(φ) = Σ_v vertex[φ(v)] + Σ_s Σ_v edge_s[φ(v), φ(σ(s)⁻¹v)]`,
/// so each geometric edge of the model is counted exactly once per
/// generator.
#[derive(Debug, Clone, PartialEq)]
pub struct Potential {
    vertex: Vec<f64>,
    /// One `k×k` row-major table per positive generator.
    edge: Vec<Vec<f64>>,
}

impl Potential {
    /// Validates shapes and finiteness.
    pub fn new(vertex: Vec<f64>, edge: Vec<Vec<f64>>) -> Result<Self, PressureError> {
        let k = vertex.len();
        if k == 0 || k > 256 {
            return Err(PressureError::BadSpec(format!(
                "alphabet size {k} not in 1..=256"
            )));
        }
        if edge.is_empty() || edge.len() > 26 {
            return Err(PressureError::BadSpec(format!(
                "need 1..=26 edge tables, got {}",
                edge.len()
            )));
        }
        for (i, table) in edge.iter().enumerate() {
            if table.len() != k * k {
                return Err(PressureError::BadSpec(format!(
                    "edge table {} has {} cells, expected {}",
                    i + 1,
                    table.len(),
                    k * k
                )));
            }
        }
        if vertex.iter().chain(edge.iter().flatten()).any(|v| !v.is_finite()) {
            return Err(PressureError::BadSpec("potential values must be finite".into()));
        }
        Ok(Potential { vertex, edge })
    }

    /// The zero potential on `k` symbols.
    pub fn zero(k: usize, rank: u8) -> Result<Self, PressureError> {
        Potential::new(vec![0.0; k], vec![vec![0.0; k * k]; rank as usize])
    }

    /// A vertex-only potential (all edge tables zero).
    pub fn vertex_only(vertex: Vec<f64>, rank: u8) -> Result<Self, PressureError> {
        let k = vertex.len();
        Potential::new(vertex, vec![vec![0.0; k * k]; rank as usize])
    }

    /// The Ising potential on spins `(+1, -1)` for symbols `(0, 1)`:
    /// vertex term `field·spin`, edge term `coupling·spin·spin`.
    pub fn ising(field: f64, coupling: f64, rank: u8) -> Result<Self, PressureError> {
        let spin = [1.0, -1.0];
        let vertex = spin.iter().map(|s| field * s).collect();
        let mut table = vec![0.0; 4];
        for (i, si) in spin.iter().enumerate() {
            for (j, sj) in spin.iter().enumerate() {
                table[i * 2 + j] = coupling * si * sj;
            }
        }
        Potential::new(vertex, vec![table; rank as usize])
    }

    pub fn alphabet_size(&self) -> usize {
        self.vertex.len()
    }

    pub fn rank(&self) -> u8 {
        self.edge.len() as u8
    }

    pub fn vertex(&self) -> &[f64] {
        &self.vertex
    }

    /// The edge table of positive generator `s` (1-based), row-major `k×k`.
    pub fn edge(&self, s: u8) -> &[f64] {
        &self.edge[(s - 1) as usize]
    }

    /// The potential scaled by `t` (a ray through zero).
    pub fn scale(&self, t: f64) -> Result<Potential, PressureError> {
        Potential::new(
            self.vertex.iter().map(|v| t * v).collect(),
            self.edge
                .iter()
                .map(|table| table.iter().map(|v| t * v).collect())
                .collect(),
        )
    }

    /// The energy of a labeling on the model.
    pub fn energy(&self, sigma: &SoficMap, values: &[u8]) -> Result<f64, PressureError> {
        check_rank(self.rank(), sigma)?;
        check_labeling(self.alphabet_size(), sigma.vertex_count(), values)?;
        let k = self.alphabet_size();
        let mut total = 0.0;
        for &label in values {
            total += self.vertex[label as usize];
        }
        for s in 1..=self.rank() {
            let table = self.edge(s);
            let inverse = sigma.inv_perm(s);
            for (v, &label) in values.iter().enumerate() {
                total += table[label as usize * k + values[inverse[v]] as usize];
            }
        }
        Ok(total)
    }
}
