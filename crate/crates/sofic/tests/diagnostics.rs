use group_core::{ball, FreeGroupWord, Window};
use proptest::prelude::*;
use sofic::{
    amplify, bs_local_fraction, check_multiplicative, check_trace, cyclic_model, edit_distance,
    random_free_model, ImportedWordTable, SoficError, SoficMap,
};

fn identity_model(rank: u8, n: usize) -> SoficMap {
    SoficMap::new(rank, vec![(0..n).collect(); rank as usize]).expect("identity model")
}

fn ball_without_identity(radius: u32, rank: u8) -> Window {
    let words: Vec<FreeGroupWord> = ball(radius, rank)
        .expect("ball")
        .words()
        .iter()
        .filter(|w| !w.is_identity())
        .cloned()
        .collect();
    Window::new(rank, words).expect("punctured ball")
}

#[test]
fn trace_passes_on_fixed_point_free_models() {
    let sigma = cyclic_model(10).expect("cyclic model");
    let window = Window::parse(1, &["a", "aa"]).expect("window");
    let report = check_trace(&sigma, &window, 0.05).expect("trace report");
    assert!(report.pass, "shift powers below n have no fixed points");
    assert!(report.fractions.iter().all(|&(_, f)| f == 0.0));
}

#[test]
fn trace_fails_on_identity_permutations() {
    let sigma = identity_model(2, 8);
    let window = Window::parse(2, &["a", "b"]).expect("window");
    let report = check_trace(&sigma, &window, 0.5).expect("trace report");
    assert!(!report.pass, "identity action fixes every vertex");
    assert!(report.fractions.iter().all(|&(_, f)| f == 1.0));
}

#[test]
fn trace_on_random_model_has_rare_fixed_points() {
    let sigma = random_free_model(2, 1000, 0).expect("random model");
    let window = ball_without_identity(2, 2);
    assert_eq!(window.len(), 16, "punctured 2-ball in rank 2");
    let report = check_trace(&sigma, &window, 0.05).expect("trace report");
    assert!(report.pass);
    let worst = report
        .fractions
        .iter()
        .map(|&(_, f)| f)
        .fold(0.0f64, f64::max);
    assert!(worst <= 0.01, "worst fixed-point fraction {worst} too big");
}

#[test]
fn trace_rejects_windows_with_identity() {
    let sigma = cyclic_model(10).expect("cyclic model");
    let window = ball(1, 1).expect("ball");
    let err = check_trace(&sigma, &window, 0.5).expect_err("identity must be rejected");
    assert!(matches!(err, SoficError::WindowContainsIdentity));
}

#[test]
fn genuine_maps_are_exactly_multiplicative() {
    let sigma = random_free_model(2, 200, 0).expect("random model");
    let window = ball(2, 2).expect("ball");
    let report = check_multiplicative(&sigma, &window, 0.0).expect("report");
    assert!(report.pass, "permutation models are homomorphisms");
    assert_eq!(report.worst, 0.0);
    assert_eq!(report.pair_fractions.len(), 17 * 17);
}

#[test]
fn corrupted_table_fails_multiplicativity_at_zero() {
    let sigma = random_free_model(2, 50, 3).expect("random model");
    let words = ball(2, 2).expect("ball").words().to_vec();
    let mut table = ImportedWordTable::from_model(&sigma, &words).expect("table");
    let ab = FreeGroupWord::parse("ab").expect("word");
    let honest = sigma.apply_word(&ab, 0);
    table
        .corrupt(&ab, 0, (honest + 1) % 50)
        .expect("corruption stays a function");
    let window = ball(1, 2).expect("ball");

    let strict = check_multiplicative(&table, &window, 0.0).expect("report");
    assert!(!strict.pass, "one bad entry must break exactness");
    assert_eq!(strict.worst, 1.0 / 50.0, "only vertex 0 disagrees");

    let loose = check_multiplicative(&table, &window, 1.0 / 50.0).expect("report");
    assert!(loose.pass, "tolerance at the corruption level passes");
}

#[test]
fn imported_tables_run_diagnostics_and_flag_missing_words() {
    let json = r#"{
        "rank": 1,
        "n": 4,
        "words": {
            "a": [1, 2, 3, 0],
            "aa": [2, 3, 0, 1],
            "A": [3, 0, 1, 2]
        }
    }"#;
    let table = ImportedWordTable::from_json_str(json).expect("import");
    let window = Window::parse(1, &["a", "aa"]).expect("window");
    let report = check_trace(&table, &window, 0.5).expect("trace report");
    assert!(report.pass, "4-cycle powers below 4 are fixed-point free");

    let missing = Window::parse(1, &["aaa"]).expect("window");
    let err = check_trace(&table, &missing, 0.5).expect_err("entry is absent");
    assert!(matches!(err, SoficError::MissingWordEntry { .. }));

    let bad = r#"{"rank": 1, "n": 3, "words": {"b": [0, 1, 2]}}"#;
    assert!(
        ImportedWordTable::from_json_str(bad).is_err(),
        "generator beyond the declared rank"
    );
}

#[test]
fn local_fraction_is_one_on_large_cycles() {
    let sigma = cyclic_model(11).expect("cyclic model");
    assert_eq!(bs_local_fraction(&sigma, 3).expect("fraction"), 1.0);
    assert_eq!(bs_local_fraction(&sigma, 1).expect("fraction"), 1.0);
}

#[test]
fn local_fraction_is_zero_on_identity_permutations() {
    let sigma = identity_model(2, 12);
    assert_eq!(bs_local_fraction(&sigma, 1).expect("fraction"), 0.0);
}

#[test]
fn local_fraction_on_random_model_matches_direct_count() {
    let sigma = random_free_model(2, 2000, 0).expect("random model");
    let radius1 = bs_local_fraction(&sigma, 1).expect("fraction");
    let radius2 = bs_local_fraction(&sigma, 2).expect("fraction");
    assert!(radius1 >= 0.95, "tree-like 1-balls dominate, got {radius1}");
    assert_eq!(radius1, 0.9845, "direct count at this seed");
    assert_eq!(radius2, 0.885, "direct count at this seed");
}

#[test]
fn local_fraction_rejects_radius_zero() {
    let sigma = cyclic_model(5).expect("cyclic model");
    assert!(bs_local_fraction(&sigma, 0).is_err());
}

#[test]
fn small_cycle_fails_ball_test() {
    // `a^5` returns to the start, spoiling every 2-ball in C_5.
    let sigma = cyclic_model(5).expect("cyclic model");
    assert_eq!(bs_local_fraction(&sigma, 2).expect("fraction"), 0.0);
}

#[test]
fn edit_distance_vanishes_on_equal_models() {
    let sigma = random_free_model(2, 300, 1).expect("random model");
    let window = ball(2, 2).expect("ball");
    assert_eq!(edit_distance(&sigma, &sigma, &window).expect("distance"), 0.0);
}

#[test]
fn edit_distance_counts_swapped_edge_sources() {
    let sigma = random_free_model(2, 50, 0).expect("random model");
    let mut pa = sigma.perm(1).to_vec();
    pa.swap(0, 1);
    let perturbed = SoficMap::new(2, vec![pa, sigma.perm(2).to_vec()]).expect("map");
    let window = Window::parse(2, &["a"]).expect("window");
    let d = edit_distance(&sigma, &perturbed, &window).expect("distance");
    assert_eq!(d, 2.0 / 50.0, "exactly the two swapped sources move");
}

#[test]
fn edit_distance_between_model_and_its_inverses_is_large() {
    let sigma = random_free_model(2, 1000, 0).expect("random model");
    let flipped = SoficMap::new(
        2,
        vec![sigma.inv_perm(1).to_vec(), sigma.inv_perm(2).to_vec()],
    )
    .expect("map");
    let window = Window::parse(2, &["a", "b"]).expect("window");
    let d = edit_distance(&sigma, &flipped, &window).expect("distance");
    assert_eq!(d, 1.0, "no vertex agrees under both generators at this seed");
}

#[test]
fn edit_distance_rejects_size_mismatch() {
    let a = cyclic_model(5).expect("cyclic model");
    let b = cyclic_model(6).expect("cyclic model");
    let window = Window::parse(1, &["a"]).expect("window");
    let err = edit_distance(&a, &b, &window).expect_err("size mismatch");
    assert!(matches!(
        err,
        SoficError::SizeMismatch { left: 5, right: 6 }
    ));
}

#[test]
fn amplification_preserves_local_fractions_exactly() {
    let sigma = random_free_model(2, 64, 2).expect("random model");
    let tripled = amplify(&sigma, 3).expect("amplify");
    for radius in 1..=3 {
        assert_eq!(
            bs_local_fraction(&sigma, radius).expect("fraction"),
            bs_local_fraction(&tripled, radius).expect("fraction"),
            "balls in disjoint copies are balls in the original"
        );
    }
}

#[test]
fn local_fraction_is_monotone_in_radius() {
    let sigma = random_free_model(2, 200, 0).expect("random model");
    let fractions: Vec<f64> = (1..=4)
        .map(|radius| bs_local_fraction(&sigma, radius).expect("fraction"))
        .collect();
    for pair in fractions.windows(2) {
        assert!(pair[0] >= pair[1], "larger balls are harder to embed");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn edit_distance_is_a_pseudo_metric(sa in 0u64..4096, sb in 0u64..4096, sc in 0u64..4096) {
        let a = random_free_model(2, 60, sa).expect("random model");
        let b = random_free_model(2, 60, sb).expect("random model");
        let c = random_free_model(2, 60, sc).expect("random model");
        let window = ball(1, 2).expect("ball");
        let dab = edit_distance(&a, &b, &window).expect("distance");
        let dba = edit_distance(&b, &a, &window).expect("distance");
        let dbc = edit_distance(&b, &c, &window).expect("distance");
        let dac = edit_distance(&a, &c, &window).expect("distance");
        prop_assert_eq!(dab, dba);
        // Vertex-wise: agreement with b on all of F twice over implies agreement.
        prop_assert!(dac <= dab + dbc + 1e-12);
        prop_assert!((0.0..=1.0).contains(&dab));
    }

    #[test]
    fn local_fraction_monotone_on_random_models(seed in 0u64..4096) {
        let sigma = random_free_model(2, 80, seed).expect("random model");
        let r1 = bs_local_fraction(&sigma, 1).expect("fraction");
        let r2 = bs_local_fraction(&sigma, 2).expect("fraction");
        prop_assert!(r1 >= r2);
    }
}
