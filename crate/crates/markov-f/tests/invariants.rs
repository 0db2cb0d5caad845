//! Stationarity and consistency properties of exact window marginals.

use std::sync::OnceLock;

use group_core::{connected_windows_containing_identity, FreeGroupWord, Window};
use markov_f::models::{asymmetric_binary_chain, three_symbol_chain};
use markov_f::{MarkovError, PatternMeasure};
use proptest::prelude::*;

fn small_windows() -> &'static [Window] {
    static CACHE: OnceLock<Vec<Window>> = OnceLock::new();
    CACHE.get_or_init(|| connected_windows_containing_identity(2, 4).expect("enumeration"))
}

fn translate_words() -> &'static [FreeGroupWord] {
    static CACHE: OnceLock<Vec<FreeGroupWord>> = OnceLock::new();
    CACHE.get_or_init(|| group_core::ball(2, 2).expect("ball").words().to_vec())
}

proptest! {
    /// Marginalizing a larger exact law must agree with computing the
    /// smaller law directly.
    #[test]
    fn restriction_consistency(widx in 0usize..111, mask in 1usize..16, chain_pick in 0u8..2) {
        let w = &small_windows()[widx];
        let coords = w.words();
        let keep: Vec<usize> = (0..coords.len()).filter(|i| mask & (1 << i) != 0).collect();
        prop_assume!(!keep.is_empty());
        let sub: Vec<FreeGroupWord> = keep.iter().map(|&i| coords[i].clone()).collect();

        let full_then_restrict;
        let direct;
        if chain_pick == 0 {
            let m = asymmetric_binary_chain();
            full_then_restrict = m.coords_marginal(coords).expect("full law").marginal(&keep).expect("restriction");
            direct = m.coords_marginal(&sub).expect("sub law");
        } else {
            let m = three_symbol_chain();
            full_then_restrict = m.coords_marginal(coords).expect("full law").marginal(&keep).expect("restriction");
            direct = m.coords_marginal(&sub).expect("sub law");
        }
        for (a, b) in full_then_restrict.table().iter().zip(direct.table()) {
            prop_assert!((a - b).abs() < 1e-12, "restriction mismatch: {a} vs {b}");
        }
    }

    /// Left-translating every coordinate leaves the joint law unchanged.
    #[test]
    fn stationarity_under_left_translation(widx in 0usize..111, gidx in 0usize..17) {
        let w = &small_windows()[widx];
        let g = &translate_words()[gidx];
        let translated: Vec<FreeGroupWord> = w.words().iter().map(|u| g.multiply(u)).collect();

        let m = asymmetric_binary_chain();
        let base = m.coords_marginal(w.words()).expect("base law");
        let moved = m.coords_marginal(&translated).expect("translated law");
        for (a, b) in base.table().iter().zip(moved.table()) {
            prop_assert!((a - b).abs() < 1e-12, "translation broke the law: {a} vs {b}");
        }
    }
}

#[test]
fn duplicate_coordinates_are_rejected() {
    let m = asymmetric_binary_chain();
    let e = FreeGroupWord::identity();
    let err = m
        .coords_marginal(&[e.clone(), e])
        .expect_err("duplicates must fail");
    assert!(matches!(err, MarkovError::DuplicateCoordinate));
}

#[test]
fn oversized_windows_are_rejected() {
    let m = asymmetric_binary_chain();
    // 24 binary coordinates: 2^24 > 10^7 patterns.
    let coords: Vec<FreeGroupWord> = (0..24)
        .map(|n| FreeGroupWord::parse(&"a".repeat(n + 1)).expect("word"))
        .collect();
    let err = m.coords_marginal(&coords).expect_err("cap must trigger");
    match err {
        MarkovError::WindowTooLarge { patterns, cap } => {
            assert_eq!(patterns, 1 << 24);
            assert_eq!(cap, 10_000_000);
        }
        other => panic!("expected size error, got {other:?}"),
    }
}

#[test]
fn empty_coordinate_lists_are_rejected() {
    let m = asymmetric_binary_chain();
    assert!(matches!(
        m.coords_marginal(&[]),
        Err(MarkovError::EmptyWindow)
    ));
}
