//! Ready-made chain specifications used across the workspace and its tests.

use crate::chain::MarkovChainSpec;
use crate::error::MarkovError;

/// Binary Ising-style chain: uniform vertex law, each edge flips the symbol
/// with probability `epsilon`.
pub fn ising_chain(rank: u8, epsilon: f64) -> Result<MarkovChainSpec, MarkovError> {
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(MarkovError::BadSpec(format!(
            "flip probability {epsilon} outside [0, 1]"
        )));
    }
    let agree = (1.0 - epsilon) / 2.0;
    let flip = epsilon / 2.0;
    let law = vec![agree, flip, flip, agree];
    MarkovChainSpec::new(
        rank,
        vec!["0".into(), "1".into()],
        vec![0.5, 0.5],
        vec![law; rank as usize],
    )
}

/// I.i.d. chain: every edge law is the product `pi ⊗ pi`.
pub fn iid_chain(rank: u8, weights: &[f64]) -> Result<MarkovChainSpec, MarkovError> {
    let k = weights.len();
    let mut law = vec![0.0; k * k];
    for x in 0..k {
        for y in 0..k {
            law[x * k + y] = weights[x] * weights[y];
        }
    }
    MarkovChainSpec::new(
        rank,
        (0..k).map(|i| i.to_string()).collect(),
        weights.to_vec(),
        vec![law; rank as usize],
    )
}

/// Deterministic chain frozen at one symbol; every window marginal is a
/// point mass, so the f-invariant is 0.
pub fn dirac_chain(rank: u8, alphabet_size: usize, atom: usize) -> Result<MarkovChainSpec, MarkovError> {
    if atom >= alphabet_size {
        return Err(MarkovError::BadSpec(format!(
            "atom {atom} outside alphabet of size {alphabet_size}"
        )));
    }
    let mut pi = vec![0.0; alphabet_size];
    pi[atom] = 1.0;
    let mut law = vec![0.0; alphabet_size * alphabet_size];
    law[atom * alphabet_size + atom] = 1.0;
    MarkovChainSpec::new(
        rank,
        (0..alphabet_size).map(|i| i.to_string()).collect(),
        pi,
        vec![law; rank as usize],
    )
}

/// Rank-2 binary chain with unequal edge noise: flip probability 0.1 along
/// the first generator and 0.3 along the second.
pub fn asymmetric_binary_chain() -> MarkovChainSpec {
    let law = |eps: f64| {
        let agree = (1.0 - eps) / 2.0;
        let flip = eps / 2.0;
        vec![agree, flip, flip, agree]
    };
    MarkovChainSpec::new(
        2,
        vec!["0".into(), "1".into()],
        vec![0.5, 0.5],
        vec![law(0.1), law(0.3)],
    )
    .expect("asymmetric chain is valid")
}

/// Rank-2 three-symbol chain with a skewed vertex law and edge laws that
/// interpolate between perfect copying and independence.
pub fn three_symbol_chain() -> MarkovChainSpec {
    let pi = [0.5, 0.3, 0.2];
    let law = |lambda: f64| {
        let mut t = vec![0.0; 9];
        for x in 0..3 {
            for y in 0..3 {
                let copy = if x == y { pi[x] } else { 0.0 };
                t[x * 3 + y] = lambda * copy + (1.0 - lambda) * pi[x] * pi[y];
            }
        }
        t
    };
    MarkovChainSpec::new(
        2,
        vec!["0".into(), "1".into(), "2".into()],
        pi.to_vec(),
        vec![law(0.6), law(0.25)],
    )
    .expect("interpolated chain is valid")
}

/// Rank-2 three-symbol chain that stays non-Markov under the symbol merge
/// `{1,2}`: the first edge kernel moves into `{1,2}` with probability
/// 0.3/0.667/0.75 depending on the source symbol, so no lumping argument
/// applies. Used to exercise functionals on genuinely hidden-Markov sources.
pub fn non_lumpable_chain() -> MarkovChainSpec {
    let pi = vec![0.5, 0.3, 0.2];
    let law_a = vec![
        0.35, 0.10, 0.05, //
        0.10, 0.15, 0.05, //
        0.05, 0.05, 0.10,
    ];
    let lambda = 0.25;
    let mut law_b = vec![0.0; 9];
    for x in 0..3 {
        for y in 0..3 {
            let copy = if x == y { pi[x] } else { 0.0 };
            law_b[x * 3 + y] = lambda * copy + (1.0 - lambda) * pi[x] * pi[y];
        }
    }
    MarkovChainSpec::new(
        2,
        vec!["0".into(), "1".into(), "2".into()],
        pi,
        vec![law_a, law_b],
    )
    .expect("non-lumpable chain is valid")
}

/// Rank-2 binary chain whose first edge law copies the symbol and whose
/// second edge law resamples it uniformly. Its f-invariant is 0.
pub fn copy_uniform_chain() -> MarkovChainSpec {
    MarkovChainSpec::new(
        2,
        vec!["0".into(), "1".into()],
        vec![0.5, 0.5],
        vec![
            vec![0.5, 0.0, 0.0, 0.5],
            vec![0.25, 0.25, 0.25, 0.25],
        ],
    )
    .expect("copy/uniform chain is valid")
}

/// Proper 4-edge-colorings of the 4-regular tree, `|K| = 24`.
///
/// A symbol is what a vertex sees of a proper edge-coloring: a bijection
/// from the generator directions `{a, a⁻¹, b, b⁻¹}` to four edge colors.
/// The tree edge crossed in direction `d` keeps its color, so the head's
/// symbol must send `d⁻¹` to the color the tail's symbol gave `d`. That
/// leaves 144 compatible ordered pairs per generator; the chain is uniform
/// on symbols and uniform on compatible pairs.
pub fn tree_lattice_chain() -> MarkovChainSpec {
    // Directions: 0 = a, 1 = a⁻¹, 2 = b, 3 = b⁻¹; perm[d] = color.
    let inv = |d: usize| d ^ 1;
    let perms = permutations_of_four();
    let k = perms.len();
    let law = |dir: usize| {
        let mut t = vec![0.0; k * k];
        let mut count = 0usize;
        for (i, p) in perms.iter().enumerate() {
            for (j, q) in perms.iter().enumerate() {
                if q[inv(dir)] == p[dir] {
                    t[i * k + j] = 1.0;
                    count += 1;
                }
            }
        }
        assert_eq!(count, 144, "compatible pair count");
        for v in t.iter_mut() {
            *v /= count as f64;
        }
        t
    };
    MarkovChainSpec::new(
        2,
        (0..k).map(|i| format!("p{i}")).collect(),
        vec![1.0 / k as f64; k],
        vec![law(0), law(2)],
    )
    .expect("tree-lattice chain is valid")
}

fn permutations_of_four() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    let mut items = [0usize, 1, 2, 3];
    permute(&mut items, 0, &mut out);
    out.sort();
    out
}

fn permute(items: &mut [usize; 4], start: usize, out: &mut Vec<[usize; 4]>) {
    if start == items.len() {
        out.push(*items);
        return;
    }
    for i in start..items.len() {
        items.swap(start, i);
        permute(items, start + 1, out);
        items.swap(start, i);
    }
}
