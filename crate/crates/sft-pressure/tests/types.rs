use sft_pressure::{full_shift, mod_n_sft, Potential, PressureError, SftSpec};
use sofic::{cyclic_model, SoficMap};

fn mod_three_rank1() -> SftSpec {
    let mut table = vec![false; 9];
    for k in 0..3 {
        table[k * 3 + k] = true;
        table[k * 3 + (k + 1) % 3] = true;
    }
    SftSpec::new(3, vec![table]).expect("rank-1 successor spec")
}

#[test]
fn spec_rejects_degenerate_shapes() {
    assert!(matches!(
        SftSpec::new(0, vec![]),
        Err(PressureError::BadSpec(_))
    ));
    assert!(matches!(
        SftSpec::new(2, vec![]),
        Err(PressureError::BadSpec(_))
    ));
    assert!(matches!(
        SftSpec::new(2, vec![vec![true; 3]]),
        Err(PressureError::BadSpec(_))
    ));
    // Symbol 1 has no successor under the generator.
    assert!(matches!(
        SftSpec::new(2, vec![vec![true, true, false, false]]),
        Err(PressureError::BadSpec(_))
    ));
    // Symbol 1 has no predecessor under the generator.
    assert!(matches!(
        SftSpec::new(2, vec![vec![true, false, true, false]]),
        Err(PressureError::BadSpec(_))
    ));
}

#[test]
fn rotation_symmetry_is_detected_and_broken_correctly() {
    assert!(mod_n_sft(4).expect("sft").has_cyclic_symbol_symmetry());
    assert!(full_shift(3, 2).expect("sft").has_cyclic_symbol_symmetry());

    // Symbol 0 may repeat, the others must advance: not rotation invariant.
    let mut table = vec![false; 9];
    table[0] = true;
    for k in 0..3 {
        table[k * 3 + (k + 1) % 3] = true;
    }
    let lopsided = SftSpec::new(3, vec![table]).expect("sft");
    assert!(!lopsided.has_cyclic_symbol_symmetry());
}

#[test]
fn offsets_read_off_the_first_row() {
    assert_eq!(mod_n_sft(5).expect("sft").offsets(1), vec![0, 1]);
    assert_eq!(mod_n_sft(5).expect("sft").offsets(2), vec![0, 1]);
    assert_eq!(full_shift(3, 1).expect("sft").offsets(1), vec![0, 1, 2]);
}

/// `cyclic_model` steps `v -> v+1`, and the pair read at `v` is
/// `(φ(v), φ(v-1))`, so walking forward around the cycle the symbol may
/// stay or drop by one, never rise.
#[test]
fn admits_matches_hand_checked_cycle_labelings() {
    let spec = mod_three_rank1();
    let sigma = cyclic_model(4).expect("cycle");

    assert!(spec.admits(&sigma, &[1, 1, 1, 1]).expect("constant"));
    assert!(spec.admits(&sigma, &[0, 2, 1, 0]).expect("decrement"));
    assert!(!spec.admits(&sigma, &[0, 1, 2, 0]).expect("increment"));

    assert!(matches!(
        spec.admits(&sigma, &[0, 0, 0]),
        Err(PressureError::LabelingSizeMismatch { .. })
    ));
    assert!(matches!(
        spec.admits(&sigma, &[0, 0, 0, 3]),
        Err(PressureError::LabelOutOfRange { .. })
    ));
    assert!(matches!(
        mod_n_sft(3).expect("sft").admits(&sigma, &[0, 0, 0, 0]),
        Err(PressureError::RankMismatch { .. })
    ));
}

#[test]
fn potential_rejects_bad_shapes_and_values() {
    assert!(matches!(
        Potential::new(vec![], vec![]),
        Err(PressureError::BadSpec(_))
    ));
    assert!(matches!(
        Potential::new(vec![0.0, f64::NAN], vec![vec![0.0; 4]]),
        Err(PressureError::BadSpec(_))
    ));
    assert!(matches!(
        Potential::new(vec![0.0, 0.0], vec![vec![0.0; 3]]),
        Err(PressureError::BadSpec(_))
    ));
    assert!(matches!(
        Potential::new(vec![0.0, 0.0], vec![vec![f64::INFINITY; 4]]),
        Err(PressureError::BadSpec(_))
    ));
}

#[test]
fn ising_tables_carry_spin_products() {
    let psi = Potential::ising(0.2, 0.7, 2).expect("ising");
    assert_eq!(psi.vertex(), &[0.2, -0.2]);
    for s in 1..=2u8 {
        assert_eq!(psi.edge(s), &[0.7, -0.7, -0.7, 0.7]);
    }

    let scaled = psi.scale(-0.5).expect("scale");
    assert_eq!(scaled.vertex(), &[-0.1, 0.1]);
    assert_eq!(scaled.edge(1), &[-0.35, 0.35, 0.35, -0.35]);
    assert!(psi.scale(f64::NAN).is_err());
}

#[test]
fn energy_sums_vertices_and_oriented_pairs() {
    let psi = Potential::ising(0.2, 0.7, 1).expect("ising");

    let loop_model = SoficMap::new(1, vec![vec![0]]).expect("loop");
    let up = psi.energy(&loop_model, &[0]).expect("energy");
    let down = psi.energy(&loop_model, &[1]).expect("energy");
    assert!((up - 0.9).abs() <= 1e-15, "{up}");
    assert!((down - 0.5).abs() <= 1e-15, "{down}");

    // Two vertices, opposite spins: fields cancel, both pairs disagree.
    let swap = SoficMap::new(1, vec![vec![1, 0]]).expect("swap");
    let mixed = psi.energy(&swap, &[0, 1]).expect("energy");
    assert!((mixed - -1.4).abs() <= 1e-15, "{mixed}");

    assert!(matches!(
        psi.energy(&swap, &[0]),
        Err(PressureError::LabelingSizeMismatch { .. })
    ));
    assert!(matches!(
        psi.energy(&swap, &[0, 2]),
        Err(PressureError::LabelOutOfRange { .. })
    ));
}
