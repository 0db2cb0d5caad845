use proptest::prelude::*;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sft_pressure::{gibbs_variational_check, score_distribution, Potential, PressureError};
use sofic::{random_free_model, SoficMap};

fn unit(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64
}

fn seeded_potential(rank: u8, seed: u64) -> Potential {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vertex = (0..2).map(|_| 2.0 * unit(&mut rng) - 1.0).collect();
    let edge = (0..rank)
        .map(|_| (0..4).map(|_| 2.0 * unit(&mut rng) - 1.0).collect())
        .collect();
    Potential::new(vertex, edge).expect("seeded potential")
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 1 {
        return vec![vec![0]];
    }
    let mut out = Vec::new();
    for shorter in permutations(n - 1) {
        for slot in 0..n {
            let mut perm = shorter.clone();
            perm.insert(slot, n - 1);
            out.push(perm);
        }
    }
    out
}

#[test]
fn single_vertex_identity_is_exact_to_rounding() {
    let sigma = SoficMap::new(1, vec![vec![0]]).expect("model");
    let psi = Potential::vertex_only(vec![0.7, -0.4], 1).expect("potential");
    let check = gibbs_variational_check(&sigma, &psi).expect("check");
    assert!(check.residual <= 1e-12, "residual {}", check.residual);
    let closed = (0.7f64.exp() + (-0.4f64).exp()).ln();
    assert!((check.log_z - closed).abs() <= 1e-12, "{}", check.log_z);
}

#[test]
fn small_ising_model_identity_holds() {
    let sigma = random_free_model(2, 3, 1).expect("model");
    let psi = Potential::ising(0.3, 0.4, 2).expect("ising");
    let check = gibbs_variational_check(&sigma, &psi).expect("check");
    assert!(check.residual <= 1e-9, "residual {}", check.residual);
    let total: f64 = check.gibbs.iter().sum();
    assert!((total - 1.0).abs() <= 1e-12, "mass {total}");
}

#[test]
fn zero_potential_gibbs_is_uniform_with_counting_entropy() {
    let sigma = random_free_model(2, 5, 3).expect("model");
    let psi = Potential::zero(2, 2).expect("zero");
    let check = gibbs_variational_check(&sigma, &psi).expect("check");
    assert_eq!(check.gibbs.len(), 32);
    for &p in &check.gibbs {
        assert!((p - 1.0 / 32.0).abs() <= 1e-15, "entry {p}");
    }
    assert!((check.entropy - 5.0 * 2.0f64.ln()).abs() <= 1e-12);
    assert!(check.mean_energy.abs() <= 1e-15);
}

/// Every rank-2 model on up to three vertices, each with its own seeded
/// potential: the identity holds, and moving `0.01` of mass away from the
/// Gibbs measure costs at least the Pinsker gap `(2 * 0.01)^2 / 2 = 2e-4`.
#[test]
fn identity_and_strict_suboptimality_across_all_small_models() {
    let mut seed = 0u64;
    for n in 1..=3usize {
        let perms = permutations(n);
        for pa in &perms {
            for pb in &perms {
                seed += 1;
                let sigma =
                    SoficMap::new(2, vec![pa.clone(), pb.clone()]).expect("model");
                let psi = seeded_potential(2, seed);
                let check = gibbs_variational_check(&sigma, &psi).expect("check");
                assert!(
                    check.residual <= 1e-9,
                    "n={n} seed={seed}: residual {}",
                    check.residual
                );

                let exact =
                    score_distribution(&check.gibbs, &sigma, &psi).expect("gibbs score");
                assert!(
                    (exact - check.log_z).abs() <= 1e-9,
                    "n={n} seed={seed}: {exact} vs {}",
                    check.log_z
                );

                let (hi, _) = max_entry(&check.gibbs);
                let (lo, _) = min_entry(&check.gibbs);
                assert_ne!(hi, lo, "seeded potential left the Gibbs law uniform");
                let mut moved = check.gibbs.clone();
                moved[hi] -= 0.01;
                moved[lo] += 0.01;
                let score = score_distribution(&moved, &sigma, &psi).expect("moved score");
                assert!(
                    score < check.log_z - 1e-4,
                    "n={n} seed={seed}: {score} vs {}",
                    check.log_z
                );
            }
        }
    }
}

#[test]
fn seeded_distributions_never_beat_the_partition_function() {
    let sigma = random_free_model(2, 4, 7).expect("model");
    let psi = seeded_potential(2, 99);
    let check = gibbs_variational_check(&sigma, &psi).expect("check");
    let mut rng = ChaCha8Rng::seed_from_u64(0xBEEF);
    for _ in 0..50 {
        let mut probs: Vec<f64> = (0..16).map(|_| unit(&mut rng) + 1e-3).collect();
        let total: f64 = probs.iter().sum();
        for p in &mut probs {
            *p /= total;
        }
        let score = score_distribution(&probs, &sigma, &psi).expect("score");
        assert!(score <= check.log_z + 1e-12, "{score} vs {}", check.log_z);
    }
}

proptest! {
    #[test]
    fn arbitrary_distributions_respect_the_variational_bound(
        raw in proptest::collection::vec(1e-3f64..1.0, 8)
    ) {
        let sigma = random_free_model(2, 3, 1).expect("model");
        let psi = Potential::ising(0.3, 0.4, 2).expect("ising");
        let check = gibbs_variational_check(&sigma, &psi).expect("check");
        let total: f64 = raw.iter().sum();
        let probs: Vec<f64> = raw.iter().map(|p| p / total).collect();
        let score = score_distribution(&probs, &sigma, &psi).expect("score");
        prop_assert!(score <= check.log_z + 1e-12);
    }
}

#[test]
fn oversized_models_and_bad_distributions_are_rejected() {
    let sigma = random_free_model(2, 13, 0).expect("model");
    let psi = Potential::zero(2, 2).expect("zero");
    assert!(matches!(
        gibbs_variational_check(&sigma, &psi),
        Err(PressureError::CapExceeded { .. })
    ));

    let small = random_free_model(2, 2, 0).expect("model");
    assert!(matches!(
        score_distribution(&[0.5, 0.5], &small, &psi),
        Err(PressureError::DistributionSizeMismatch { .. })
    ));
    assert!(matches!(
        score_distribution(&[0.7, 0.5, -0.1, -0.1], &small, &psi),
        Err(PressureError::BadDistribution(_))
    ));
    assert!(matches!(
        score_distribution(&[0.4, 0.3, 0.2, 0.2], &small, &psi),
        Err(PressureError::BadDistribution(_))
    ));
}

fn max_entry(values: &[f64]) -> (usize, f64) {
    values
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |best, (i, v)| {
            if v > best.1 {
                (i, v)
            } else {
                best
            }
        })
}

fn min_entry(values: &[f64]) -> (usize, f64) {
    values
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::INFINITY), |best, (i, v)| {
            if v < best.1 {
                (i, v)
            } else {
                best
            }
        })
}
