use mahler::{log_mahler_quadrature, LaurentPoly, MahlerError};

/// `ln((1+sqrt 5)/2)`, the measure of `x^2 - x - 1`.
const GOLDEN: f64 = 0.4812118250596035;

#[test]
fn constants_average_to_their_own_log() {
    let q = log_mahler_quadrature(&LaurentPoly::constant(2), 16).expect("quad");
    assert!((q.value - 2.0f64.ln()).abs() <= 1e-15, "{}", q.value);
    assert_eq!(q.excluded, 0);
    assert_eq!(q.total_points, 16);
    assert!(!q.low_confidence);
}

/// `x - 1` has its root on the torus; the half-cell grid turns the mean
/// into `ln(∏|1 - ζ|)/N = ln(2)/N` exactly, since the offset points are
/// the `N`-th roots of `-1`.
#[test]
fn unit_root_mean_matches_the_product_formula() {
    let f = LaurentPoly::parse("x - 1").expect("parse");
    let n = 1usize << 16;
    let q = log_mahler_quadrature(&f, n).expect("quad");
    assert!((q.value - 2.0f64.ln() / n as f64).abs() <= 1e-12, "{}", q.value);
    assert!(q.value.abs() <= 1e-4);
    assert_eq!(q.excluded, 0);
}

#[test]
fn golden_quadratic_matches_its_root_value() {
    let f = LaurentPoly::parse("x^2 - x - 1").expect("parse");
    let q = log_mahler_quadrature(&f, 1 << 16).expect("quad");
    assert!((q.value - GOLDEN).abs() <= 1e-12, "{}", q.value);
    assert!(!q.low_confidence);
}

/// Errors against the exact value drop with spectral speed while the
/// nearest root sits 5% off the circle, then hit the float floor.
#[test]
fn error_collapses_as_the_grid_doubles() {
    let f = LaurentPoly::parse("20 x - 21").expect("parse");
    let exact = (21.0f64 / 20.0).ln() + 20.0f64.ln();
    let ceilings = [1e-3, 1e-4, 1e-7, 1e-12, 1e-13];
    let mut previous = f64::INFINITY;
    for (grid, ceiling) in [64usize, 128, 256, 512, 1024].into_iter().zip(ceilings) {
        let err = (log_mahler_quadrature(&f, grid).expect("quad").value - exact).abs();
        assert!(err <= ceiling, "grid {grid}: err {err}");
        assert!(err <= previous + 1e-13, "grid {grid}: err {err} rose");
        previous = err;
    }
}

/// `∫ ln|y - h(x)| dy = max(0, ln|h(x)|)` pointwise, so the plane
/// `y - 2x - 4` inherits the measure of `2x + 4`.
#[test]
fn two_variable_plane_matches_the_one_variable_reduction() {
    let f = LaurentPoly::parse("y - 2 x - 4").expect("parse");
    assert_eq!(f.vars(), 2);
    let q = log_mahler_quadrature(&f, 64).expect("quad");
    assert!((q.value - 4.0f64.ln()).abs() <= 1e-12, "{}", q.value);
}

/// `x y z` pushes the torus measure onto the circle, so `8 + x y z`
/// reduces to `8 + z` and measure `ln 8`; same in four variables.
#[test]
fn diagonal_monomials_reduce_to_one_dimension() {
    let triple = LaurentPoly::parse("8 + x y z").expect("parse");
    let q3 = log_mahler_quadrature(&triple, 32).expect("quad");
    assert!((q3.value - 8.0f64.ln()).abs() <= 1e-12, "{}", q3.value);

    let quadruple = LaurentPoly::parse("2 + x y z w").expect("parse");
    let coarse = log_mahler_quadrature(&quadruple, 16).expect("quad");
    assert!((coarse.value - 2.0f64.ln()).abs() <= 1e-5, "{}", coarse.value);
    let fine = log_mahler_quadrature(&quadruple, 40).expect("quad");
    assert!((fine.value - 2.0f64.ln()).abs() <= 1e-12, "{}", fine.value);
}

/// `1 + x + y` vanishes at two torus points yet the midpoint rule still
/// converges to the known measure `0.3230659472...`.
#[test]
fn smyth_polynomial_converges_through_its_torus_zeros() {
    let f = LaurentPoly::parse("1 + x + y").expect("parse");
    let reference = 0.3230659472;
    let mut errors = Vec::new();
    for grid in [256usize, 512, 1024] {
        let q = log_mahler_quadrature(&f, grid).expect("quad");
        assert_eq!(q.excluded, 0, "grid {grid}");
        errors.push((q.value - reference).abs());
    }
    assert!(errors[0] <= 1e-7, "{errors:?}");
    assert!(errors[1] <= 1e-8, "{errors:?}");
    assert!(errors[2] <= 2e-9, "{errors:?}");
    assert!(errors[0] > errors[1] && errors[1] > errors[2], "{errors:?}");
}

/// Grid 18 ssamples `θ = 1/4` and `θ = 3/4` exactly, where `x^2 + 1`
/// vanishes: both points are excluded and the estimate is flagged.
#[test]
fn sampled_torus_roots_are_excluded_and_flagged() {
    let f = LaurentPoly::parse("x^2 + 1").expect("parse");
    let hit = log_mahler_quadrature(&f, 18).expect("quad");
    assert_eq!(hit.excluded, 2);
    assert!(hit.low_confidence);

    let missed = log_mahler_quadrature(&f, 16).expect("quad");
    assert_eq!(missed.excluded, 0);
    assert!(!missed.low_confidence);
}

/// Multiplying by a monomial or reversing the coefficient order leaves
/// `|f|` on the torus unchanged.
#[test]
fn monomial_and_reflection_symmetries_hold() {
    let f = LaurentPoly::parse("x^2 - x - 1").expect("parse");
    let base = log_mahler_quadrature(&f, 1 << 12).expect("quad").value;

    let shifted = f
        .mul(&LaurentPoly::parse("x^3").expect("parse"))
        .expect("mul");
    let shift_value = log_mahler_quadrature(&shifted, 1 << 12).expect("quad").value;
    assert!((shift_value - base).abs() <= 1e-12, "{shift_value} vs {base}");

    let reversed = LaurentPoly::parse("-x^2 - x + 1").expect("parse");
    let reversed_value = log_mahler_quadrature(&reversed, 1 << 12).expect("quad").value;
    assert!((reversed_value - base).abs() <= 1e-12, "{reversed_value} vs {base}");
}

#[test]
fn integer_scaling_shifts_the_value_by_its_log() {
    let f = LaurentPoly::parse("x^2 - x - 1").expect("parse");
    let base = log_mahler_quadrature(&f, 1 << 12).expect("quad").value;
    let scaled = log_mahler_quadrature(&f.scale(-6).expect("scale"), 1 << 12)
        .expect("quad")
        .value;
    assert!((scaled - (6.0f64.ln() + base)).abs() <= 1e-12, "{scaled}");
}

/// The chunked pairwise reduction gives the same bits no matter how many
/// threads evaluate the grid.
#[test]
fn value_is_bitwise_stable_across_thread_counts() {
    let f = LaurentPoly::parse("x^2 - x - 1").expect("parse");
    let wide = log_mahler_quadrature(&f, 1 << 14).expect("quad").value;
    let narrow = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .expect("pool")
        .install(|| log_mahler_quadrature(&f, 1 << 14).expect("quad").value);
    assert_eq!(wide.to_bits(), narrow.to_bits());
}

#[test]
fn bad_requests_are_rejected() {
    let f = LaurentPoly::parse("x + 3").expect("parse");
    assert!(matches!(
        log_mahler_quadrature(&f, 15),
        Err(MahlerError::BadGrid { grid: 15 })
    ));
    assert!(matches!(
        log_mahler_quadrature(&LaurentPoly::constant(0), 16),
        Err(MahlerError::ZeroPolynomial)
    ));
    let plane = LaurentPoly::parse("1 + x + y").expect("parse");
    assert!(matches!(
        log_mahler_quadrature(&plane, 10_000),
        Err(MahlerError::GridTooLarge { .. })
    ));
}
