use scalars::{
    checked_complex, checked_f64, poly_definite_integral, poly_multiply_integrate_nested, q, qi,
    rational_from_json, rational_to_f64, rational_to_json, Complex64, Dual, PolyInT, Rational,
    Scalar, ScalarError,
};

type P = PolyInT<Rational>;

#[test]
fn bump_integrals() {
    assert_eq!(
        poly_definite_integral(&P::bump(2), &q(0, 1), &q(1, 1)),
        q(1, 30)
    );
    assert_eq!(
        poly_definite_integral(&P::bump(2), &q(0, 1), &q(1, 2)),
        q(1, 60)
    );
    assert_eq!(
        poly_definite_integral(&P::bump(1), &q(0, 1), &q(1, 1)),
        q(1, 6)
    );
}

#[test]
fn nested_bump_integrals() {
    // inner weight (s(1−s))², outer (s(1−s))⁴, halved
    let half = q(1, 2);
    let a = poly_multiply_integrate_nested(&P::bump(4), &P::bump(2), &q(0, 1), &half);
    let b = poly_multiply_integrate_nested(&P::bump(4), &P::bump(2), &half, &q(1, 1));
    assert_eq!(a * half.clone(), q(1199, 309657600));
    assert_eq!(b * half, q(283, 103219200));
}

#[test]
fn polynomial_calculus() {
    let p = P::new(vec![qi(1), qi(2), qi(3)]);
    assert_eq!(p.derivative(), P::new(vec![qi(2), qi(6)]));
    assert_eq!(p.antiderivative().derivative(), p);
    let from = p.antiderivative_from(&q(1, 3));
    assert!(from.eval_q(&q(1, 3)).is_zero());
    assert_eq!(from.derivative(), p);
    assert_eq!(p.eval_q(&q(1, 2)), q(11, 4));
    assert_eq!(p.degree(), Some(2));
    assert_eq!(P::zero().degree(), None);
}

#[test]
fn polynomial_trims_and_bounds() {
    let p = P::new(vec![qi(1), qi(0), qi(0)]);
    assert_eq!(p.coeffs().len(), 1);
    assert!(matches!(
        P::bounded(vec![qi(1), qi(1), qi(1)], 1),
        Err(ScalarError::DegreeBound {
            degree: 2,
            bound: 1
        })
    ));
    assert!(P::bounded(vec![qi(1), qi(1)], 1).is_ok());
}

#[test]
fn polynomial_evaluation_in_other_rings() {
    let p = P::t() * P::t() - P::one();
    let z: Complex64 = p
        .map(|c| Complex64::from_rational(c))
        .eval(&Complex64::new(0.0, 1.0));
    assert_eq!(z, Complex64::new(-2.0, 0.0));
}

#[test]
fn dual_numbers() {
    let e = Dual::<Rational>::eps();
    assert!((e.clone() * e.clone()).is_zero());
    let x = Dual::new(qi(3), qi(1));
    // (x²)' = 2x at x = 3
    let sq = x.clone() * x.clone();
    assert_eq!(sq.primal, qi(9));
    assert_eq!(sq.tangent, qi(6));
    let inv = Dual::<Rational>::one().checked_div(&x).unwrap();
    assert_eq!(inv, Dual::new(q(1, 3), q(-1, 9)));
    assert!(Dual::<Rational>::one().checked_div(&Dual::eps()).is_none());
}

#[test]
fn division() {
    assert_eq!(q(1, 2).checked_div(&q(3, 4)), Some(q(2, 3)));
    assert_eq!(qi(1).checked_div(&qi(0)), None);
    assert_eq!(2.0f64.checked_div(&0.0), None);
    let p = P::new(vec![qi(2), qi(4)]);
    assert_eq!(
        p.checked_div(&P::constant(qi(2))),
        Some(P::new(vec![qi(1), qi(2)]))
    );
    assert_eq!(p.checked_div(&P::t()), None);
}

#[test]
fn json_roundtrips() {
    let x = q(-7, 12);
    assert_eq!(rational_from_json(&rational_to_json(&x)).unwrap(), x);
    let z = Complex64::new(1.5, -2.0);
    assert_eq!(Complex64::from_json(&z.to_json()).unwrap(), z);
    let p = P::new(vec![q(1, 2), qi(0), q(3, 5)]);
    assert_eq!(P::from_json(&p.to_json()).unwrap(), p);
    let d = Dual::new(q(1, 3), q(2, 7));
    assert_eq!(Dual::<Rational>::from_json(&d.to_json()).unwrap(), d);
    assert!(rational_from_json(&serde_json::json!(["1", "0"])).is_err());
    assert!(Rational::from_json(&serde_json::json!("x")).is_err());
}

#[test]
fn non_finite_values_are_rejected() {
    assert_eq!(checked_f64(f64::NAN), Err(ScalarError::NonFinite));
    assert!(checked_f64(1.0).is_ok());
    assert!(checked_complex(Complex64::new(0.0, f64::INFINITY)).is_err());
    assert!(!Complex64::new(f64::NAN, 0.0).is_finite());
    assert!(f64::from_json(&serde_json::json!(null)).is_err());
}

#[test]
fn large_rationals_convert_to_f64() {
    let big = Rational::new(
        num_bigint::BigInt::from(10).pow(400) * 3,
        num_bigint::BigInt::from(10).pow(400),
    );
    assert!((rational_to_f64(&big) - 3.0).abs() < 1e-12);
}
