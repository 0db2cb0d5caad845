//! The coset-constant system: segment counting, pushforward uniformity,
//! and the f-invariant of its defining chain.

use std::collections::BTreeMap;

use factor_lab::{
    pushforward_uniform, variant_factor_check, variant_window_map, FactorError,
};
use group_core::FreeGroupWord;

#[test]
fn radius_zero_report() {
    let rep = variant_factor_check(0).expect("radius 0 is supported");
    assert_eq!(rep.radius, 0);
    assert_eq!(rep.coset_segments, 3, "B(1) meets segments of e, b, B");
    assert_eq!(rep.gf2_rank, 1);
    assert_eq!(rep.fiber_histogram, BTreeMap::from([(4, 2)]));
    assert!(rep.uniform_on_target);
    assert_eq!(rep.f_value, 0.0, "copy/uniform chain has f exactly 0");
    assert_eq!(rep.scope, "window-level evidence");
}

#[test]
fn radius_one_report() {
    let rep = variant_factor_check(1).expect("radius 1 is supported");
    assert_eq!(rep.coset_segments, 9);
    assert_eq!(rep.gf2_rank, 5, "onto all binary patterns on B(1)");
    assert_eq!(rep.fiber_histogram, BTreeMap::from([(16, 32)]));
    assert!(rep.uniform_on_target);
    assert_eq!(rep.f_value, 0.0);
}

#[test]
fn radius_two_report() {
    let rep = variant_factor_check(2).expect("radius 2 is supported");
    assert_eq!(rep.coset_segments, 27);
    assert_eq!(rep.gf2_rank, 17, "onto all binary patterns on B(2)");
    assert_eq!(rep.fiber_histogram, BTreeMap::from([(1024, 131072)]));
    assert!(rep.uniform_on_target);
    assert_eq!(rep.f_value, 0.0);
}

#[test]
fn radius_zero_segment_map_structure() {
    let m = variant_window_map(0).expect("radius 0 is supported");
    assert_eq!(m.source_bits(), 3);
    assert_eq!(m.target().len(), 1);
    let words: Vec<String> = m.source().words().iter().map(|w| w.to_string()).collect();
    let e = m
        .source()
        .position(&FreeGroupWord::identity())
        .expect("identity represents its own segment");
    let b = m
        .source()
        .position(&FreeGroupWord::parse("b").expect("test word parses"))
        .expect("b represents its own segment");
    assert_eq!(
        m.rows(),
        &[(1 << e) | (1 << b)],
        "output at e reads x_e + x_b; representatives are {words:?}"
    );
}

#[test]
fn no_representative_ends_with_an_a_letter() {
    for r in 0..=2 {
        let m = variant_window_map(r).expect("supported radius");
        for w in m.source().words() {
            if let Some(last) = w.letters().last() {
                assert_ne!(last.gen, 1, "{w} is not segment-reduced");
            }
        }
    }
}

#[test]
fn zero_pattern_maps_to_zero() {
    for r in 0..=2 {
        let m = variant_window_map(r).expect("supported radius");
        assert_eq!(m.apply(0), 0);
    }
}

#[test]
fn segment_map_is_linear_exhaustively_at_radius_one() {
    let m = variant_window_map(1).expect("radius 1 is supported");
    let total = 1u64 << m.source_bits();
    for x in 0..total {
        for y in 0..total {
            assert_eq!(m.apply(x ^ y), m.apply(x) ^ m.apply(y));
        }
    }
}

#[test]
fn radius_three_is_rejected() {
    let err = variant_factor_check(3).expect_err("radius 3 is out of range");
    assert!(matches!(
        err,
        FactorError::RadiusOutOfRange { radius: 3, max: 2 }
    ));
}

#[test]
fn general_cap_still_governs_the_public_pushforward() {
    let m = variant_window_map(2).expect("radius 2 is supported");
    let err = pushforward_uniform(&m).expect_err("27 segments exceed the general cap");
    assert!(matches!(
        err,
        FactorError::CapExceeded {
            needed_log2: 27,
            cap_log2: 24
        }
    ));
}
