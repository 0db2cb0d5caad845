use mahler::{
    log_mahler_quadrature, log_mahler_roots, multiplicativity_check,
    seeded_integer_quadratics, LaurentPoly, MahlerError, UNIT_BAND,
};

/// `ln((1+sqrt 5)/2)`.
const GOLDEN: f64 = 0.4812118250596035;

#[test]
fn golden_quadratic_gives_the_golden_ratio_log() {
    let f = LaurentPoly::parse("x^2 - x - 1").expect("parse");
    let report = log_mahler_roots(&f).expect("roots");
    assert!((report.value - GOLDEN).abs() <= 1e-15, "{}", report.value);
    assert_eq!(report.roots.len(), 2);
    for residual in &report.residuals {
        assert!(*residual <= 1e-12, "residual {residual}");
    }
}

#[test]
fn linear_and_constant_cases_are_exact() {
    let shifted = log_mahler_roots(&LaurentPoly::parse("x - 2").expect("parse"))
        .expect("roots");
    assert!((shifted.value - 2.0f64.ln()).abs() <= 1e-15);

    let constant = log_mahler_roots(&LaurentPoly::constant(3)).expect("roots");
    assert!((constant.value - 3.0f64.ln()).abs() <= 1e-15);
    assert!(constant.roots.is_empty());

    let unit_root = log_mahler_roots(&LaurentPoly::parse("x - 1").expect("parse"))
        .expect("roots");
    assert_eq!(unit_root.value, 0.0);
}

/// Clearing the monomial factor first: `x + x^-1 + 5` has the measure of
/// `x^2 + 5x + 1`, which is `ln((5 + sqrt 21)/2)` by the root formula.
#[test]
fn laurent_polynomials_reduce_to_their_ordinary_form() {
    let laurent = LaurentPoly::parse("x + x^-1 + 5").expect("parse");
    let ordinary = LaurentPoly::parse("x^2 + 5 x + 1").expect("parse");
    let from_laurent = log_mahler_roots(&laurent).expect("roots").value;
    let from_ordinary = log_mahler_roots(&ordinary).expect("roots").value;
    assert_eq!(from_laurent, from_ordinary);

    let closed = ((5.0 + 21.0f64.sqrt()) / 2.0).ln();
    assert!((from_laurent - closed).abs() <= 1e-12, "{from_laurent}");
}

#[test]
fn multiplicativity_holds_on_fixed_and_seeded_inputs() {
    let f = LaurentPoly::parse("x - 2").expect("parse");
    assert!(multiplicativity_check(&f, &f).expect("check") <= 1e-10);
    let square = log_mahler_roots(&f.mul(&f).expect("mul")).expect("roots");
    assert!((square.value - 2.0 * 2.0f64.ln()).abs() <= 1e-12, "{}", square.value);

    let one = LaurentPoly::constant(1);
    assert_eq!(multiplicativity_check(&one, &one).expect("check"), 0.0);

    for pair in seeded_integer_quadratics(20, 0).chunks(2) {
        if let [a, b] = pair {
            let residual = multiplicativity_check(a, b).expect("check");
            assert!(residual <= 1e-8, "residual {residual} for {a} and {b}");
        }
    }
}

#[test]
fn integer_scaling_shifts_the_root_value_by_its_log() {
    let f = LaurentPoly::parse("x^2 - x - 1").expect("parse");
    let base = log_mahler_roots(&f).expect("roots").value;
    let scaled = log_mahler_roots(&f.scale(-6).expect("scale")).expect("roots").value;
    assert!((scaled - (6.0f64.ln() + base)).abs() <= 1e-12, "{scaled}");
}

#[test]
fn seeded_quadratics_are_deterministic_and_avoid_the_circle() {
    let batch = seeded_integer_quadratics(20, 0);
    assert_eq!(batch.len(), 20);
    assert_eq!(batch, seeded_integer_quadratics(20, 0));
    assert_ne!(batch, seeded_integer_quadratics(20, 1));

    for poly in &batch {
        assert_eq!(poly.vars(), 1);
        assert!(poly.coefficient(&[2]) >= 1);
        assert_ne!(poly.coefficient(&[0]), 0);
        let report = log_mahler_roots(poly).expect("roots");
        for root in &report.roots {
            let modulus = root.norm();
            assert!(
                modulus <= UNIT_BAND.0 || modulus >= UNIT_BAND.1,
                "{poly}: root modulus {modulus}"
            );
        }
    }
}

/// Both routes to the measure agree far inside the stated tolerance for
/// quadratics whose roots keep clear of the circle.
#[test]
fn quadrature_matches_roots_on_twenty_seeded_quadratics() {
    for poly in seeded_integer_quadratics(20, 0) {
        let exact = log_mahler_roots(&poly).expect("roots").value;
        let estimate = log_mahler_quadrature(&poly, 1 << 16).expect("quad");
        assert!(!estimate.low_confidence, "{poly}");
        let err = (estimate.value - exact).abs();
        assert!(err <= 1e-3, "{poly}: err {err}");
    }
}

#[test]
fn wrong_shapes_are_rejected() {
    let plane = LaurentPoly::parse("1 + x + y").expect("parse");
    assert!(matches!(
        log_mahler_roots(&plane),
        Err(MahlerError::NotUnivariate { vars: 2 })
    ));
    assert!(matches!(
        log_mahler_roots(&LaurentPoly::constant(0)),
        Err(MahlerError::ZeroPolynomial)
    ));
    assert!(matches!(
        multiplicativity_check(&plane, &plane),
        Err(MahlerError::NotUnivariate { .. })
    ));
}
