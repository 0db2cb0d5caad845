//! Exhaustive pushforward reports: fiber structure, rank, caps.

use std::collections::BTreeMap;

use factor_lab::{ow_window_map, pushforward_uniform, FactorError, WindowMap};
use group_core::ball;
use proptest::prelude::*;

#[test]
fn doubling_map_radius_zero() {
    let m = ow_window_map(0).expect("radius 0 is supported");
    let rep = pushforward_uniform(&m).expect("2^5 patterns fit the cap");
    assert_eq!(rep.gf2_rank, 2);
    assert_eq!(rep.image_size, 4);
    assert_eq!(rep.fiber_histogram, BTreeMap::from([(8, 4)]));
    assert!(rep.is_uniform_on_image);
    assert!(rep.surjective, "all four output symbols appear");
}

#[test]
fn doubling_map_radius_one() {
    let m = ow_window_map(1).expect("radius 1 is supported");
    let rep = pushforward_uniform(&m).expect("2^17 patterns fit the cap");
    assert_eq!(rep.gf2_rank, 10);
    assert_eq!(rep.image_size, 1024);
    assert_eq!(rep.fiber_histogram, BTreeMap::from([(128, 1024)]));
    assert!(rep.is_uniform_on_image, "every fiber has size 2^7");
    assert!(rep.surjective, "onto all pair patterns on B(1)");
}

#[test]
fn identity_map_has_unit_fibers() {
    let w = ball(1, 2).expect("5-site window");
    let rows = (0..5).map(|i| 1u64 << i).collect();
    let m = WindowMap::new(w.clone(), w, 1, rows).expect("identity rules are valid");
    let rep = pushforward_uniform(&m).expect("2^5 patterns fit the cap");
    assert_eq!(rep.gf2_rank, 5);
    assert_eq!(rep.image_size, 32);
    assert_eq!(rep.fiber_histogram, BTreeMap::from([(1, 32)]));
    assert!(rep.is_uniform_on_image);
    assert!(rep.surjective);
}

#[test]
fn zero_map_has_one_full_fiber() {
    let m = WindowMap::new(
        ball(1, 2).expect("5-site window"),
        ball(0, 2).expect("point window"),
        1,
        vec![0],
    )
    .expect("the zero rule is valid");
    let rep = pushforward_uniform(&m).expect("2^5 patterns fit the cap");
    assert_eq!(rep.gf2_rank, 0);
    assert_eq!(rep.image_size, 1);
    assert_eq!(rep.fiber_histogram, BTreeMap::from([(32, 1)]));
    assert!(rep.is_uniform_on_image, "a single fiber is trivially uniform");
    assert!(!rep.surjective, "the output bit 1 is never hit");
}

#[test]
fn source_cap_blocks_radius_two() {
    let m = ow_window_map(2).expect("radius 2 map still constructs");
    let err = pushforward_uniform(&m).expect_err("2^53 patterns exceed the cap");
    assert!(matches!(
        err,
        FactorError::CapExceeded {
            needed_log2: 53,
            cap_log2: 24
        }
    ));
}

#[test]
fn output_cap_blocks_wide_maps() {
    let m = WindowMap::new(
        ball(0, 2).expect("point window"),
        ball(2, 2).expect("17-site window"),
        2,
        vec![1; 34],
    )
    .expect("rules are valid");
    let err = pushforward_uniform(&m).expect_err("2^34 fiber slots exceed the table cap");
    assert!(matches!(
        err,
        FactorError::CapExceeded {
            needed_log2: 34,
            cap_log2: 20
        }
    ));
}

#[test]
fn fibers_account_for_every_source_pattern() {
    for r in 0..=1 {
        let m = ow_window_map(r).expect("supported radius");
        let rep = pushforward_uniform(&m).expect("fits the cap");
        let mass: u64 = rep
            .fiber_histogram
            .iter()
            .map(|(size, count)| size * count)
            .sum();
        assert_eq!(mass, 1 << m.source_bits(), "radius {r}");
        assert_eq!(rep.image_size, 1 << rep.gf2_rank, "image is a subspace");
    }
}

proptest! {
    /// Any GF(2)-linear rule pushes uniform to uniform-on-image, with the
    /// image a subspace of dimension `rank`.
    #[test]
    fn linear_pushforwards_are_uniform_on_image(rows in proptest::collection::vec(0u64..32, 5)) {
        let w = ball(1, 2).expect("5-site window");
        let m = WindowMap::new(w.clone(), w, 1, rows).expect("rows fit the window");
        let rep = pushforward_uniform(&m).expect("2^5 patterns fit the cap");
        prop_assert!(rep.is_uniform_on_image);
        prop_assert_eq!(rep.image_size, 1u64 << rep.gf2_rank);
        let mass: u64 = rep.fiber_histogram.iter().map(|(s, c)| s * c).sum();
        prop_assert_eq!(mass, 32);
    }
}
