use ncalg::{LieSeries, NCSeries};
use scalars::{q, qi, Rational};
use tangent::{
    center_decompose_t3, exp_tder, lie_eval, log_taut, tder_apply, tk_generator, TAutElem,
    TDerElem, TangentError,
};

type Q = Rational;

fn t(i: usize, j: usize, k: usize, n: usize) -> TDerElem<Q> {
    tk_generator(i, j, k, n).unwrap()
}

fn gen(k: usize, n: usize, i: usize) -> NCSeries<Q> {
    NCSeries::gen(k, n, i)
}

#[test]
fn t12_in_tder2() {
    let u = t(1, 2, 2, 4);
    assert_eq!(u.component_nc(1), &gen(2, 4, 2));
    assert_eq!(u.component_nc(2), &gen(2, 4, 1));
    // t12 is special: [X1, X2] + [X2, X1] = 0
    assert!(u.is_sder());
}

#[test]
fn bracket_t12_t13() {
    let n = 4;
    let b = t(1, 2, 3, n).bracket(&t(1, 3, 3, n));
    let x = |i| gen(3, n, i);
    let expect = TDerElem::from_nc_unchecked(vec![
        x(2).bracket(&x(3)),
        x(1).bracket(&x(3)).neg(),
        x(1).bracket(&x(2)),
    ]);
    assert_eq!(b, expect);
}

#[test]
fn bracket_is_commutator_of_derivations() {
    let n = 5;
    let u = t(1, 2, 3, n).add(&t(1, 3, 3, n).bracket(&t(2, 3, 3, n)));
    let v = t(2, 3, 3, n).scale_q(&q(3, 2));
    let w = gen(3, n, 1).mul(&gen(3, n, 2)).mul(&gen(3, n, 3));
    let lhs = u.bracket(&v).apply_nc(&w);
    let rhs = u
        .apply_nc(&v.apply_nc(&w))
        .sub(&v.apply_nc(&u.apply_nc(&w)));
    assert_eq!(lhs, rhs);
}

#[test]
fn derivation_acts_on_lie_series() {
    let u = t(1, 2, 2, 3);
    let x = LieSeries::<Q>::gen(2, 3, 1);
    let y = tder_apply(&u, &x).unwrap();
    // t12(X) = [X, Y]
    let mut expect = LieSeries::zero(2, 3);
    expect.set_coeff(&[1, 2], qi(1)).unwrap();
    assert_eq!(y, expect);
}

#[test]
fn simplicial_duplicate() {
    let n = 3;
    let d = t(1, 2, 2, n).duplicate_slot(2).unwrap();
    assert_eq!(d, t(1, 2, 3, n).add(&t(1, 3, 3, n)));
    let d = t(1, 2, 2, n).duplicate_slot(1).unwrap();
    assert_eq!(d, t(1, 3, 3, n).add(&t(2, 3, 3, n)));
    assert_eq!(t(1, 2, 2, n).pad_right(), t(1, 2, 3, n));
    assert_eq!(t(1, 2, 2, n).pad_left(), t(2, 3, 3, n));
}

#[test]
fn symmetric_group_action() {
    let n = 3;
    let s = t(1, 2, 3, n).sym_action(&[3, 2, 1]).unwrap();
    assert_eq!(s, t(2, 3, 3, n));
    let s = t(1, 2, 3, n).sym_action(&[2, 3, 1]).unwrap();
    // relabelling by the inverse: t_{σ⁻¹(1) σ⁻¹(2)} = t_{31}
    assert_eq!(s, t(1, 3, 3, n));
    assert!(matches!(
        t(1, 2, 3, n).sym_action(&[1, 1, 2]),
        Err(TangentError::Permutation(3))
    ));
}

#[test]
fn center_decomposition_of_t13() {
    let split = center_decompose_t3(&t(1, 3, 3, 4), 0.0).unwrap();
    assert_eq!(split.central, qi(1));
    let mut lie = LieSeries::zero(2, 4);
    lie.set_coeff(&[1], qi(-1)).unwrap();
    lie.set_coeff(&[2], qi(-1)).unwrap();
    assert_eq!(split.lie, lie);
}

#[test]
fn center_decomposition_rejects_non_t3() {
    let n = 3;
    let x = |i| gen(3, n, i);
    let u = TDerElem::from_nc_unchecked(vec![
        x(2).bracket(&x(3)),
        NCSeries::zero(3, n),
        NCSeries::zero(3, n),
    ]);
    assert!(matches!(
        center_decompose_t3(&u, 1e-12),
        Err(TangentError::NotInT3 { degree: 2, .. })
    ));
}

#[test]
fn exp_of_t12_composes_additively() {
    let n = 5;
    let e1 = exp_tder(&t(1, 2, 2, n)).unwrap();
    let e2 = exp_tder(&t(1, 2, 2, n).scale_q(&qi(2))).unwrap();
    assert!(e1.compose(&e1).unwrap().approx_eq(&e2, 0.0));
}

#[test]
fn exp_log_roundtrip_and_inverse() {
    let n = 5;
    let u = t(1, 2, 3, n).add(&t(2, 3, 3, n).bracket(&t(1, 3, 3, n)).scale_q(&q(1, 3)));
    let g = exp_tder(&u).unwrap();
    assert_eq!(log_taut(&g).unwrap(), u);
    let id = g.compose(&g.inverse().unwrap()).unwrap();
    assert!(id.approx_eq(&TAutElem::identity(3, n), 0.0));
}

#[test]
fn exp_acts_by_exponentiated_derivation() {
    let n = 4;
    let u = t(1, 2, 2, n);
    let g = exp_tder(&u).unwrap();
    let x = gen(2, n + 1, 1);
    let mut expect = x.clone();
    let mut term = x;
    for p in 1..=n {
        term = u.with_order(n).apply_nc(&term).scale_q(&q(1, p as i64));
        expect = expect.add(&term);
    }
    assert_eq!(g.generator_images()[0], expect);
}

#[test]
fn taut_simplicial_maps_match_tder() {
    let n = 4;
    let u = t(1, 2, 2, n).add(&t(1, 2, 2, n).bracket(&TDerElem::from_nc_unchecked(vec![
        gen(2, n, 2).bracket(&gen(2, n, 1)),
        NCSeries::zero(2, n),
    ])));
    let g = exp_tder(&u).unwrap();
    for i in 1..=2 {
        let a = g.duplicate_slot(i).unwrap();
        let b = exp_tder(&u.duplicate_slot(i).unwrap()).unwrap();
        assert!(a.approx_eq(&b, 0.0), "duplicate_slot({i})");
    }
    assert!(g
        .pad_left()
        .approx_eq(&exp_tder(&u.pad_left()).unwrap(), 0.0));
    assert!(g
        .pad_right()
        .approx_eq(&exp_tder(&u.pad_right()).unwrap(), 0.0));
    let gs = g.pad_right().sym_action(&[3, 1, 2]).unwrap();
    let us = exp_tder(&u.pad_right().sym_action(&[3, 1, 2]).unwrap()).unwrap();
    assert!(gs.approx_eq(&us, 0.0));
}

#[test]
fn lie_eval_on_generators() {
    let n = 4;
    let mut l = LieSeries::<Q>::zero(2, n);
    l.set_coeff(&[1, 2], qi(1)).unwrap();
    let v = lie_eval(&l, &[t(1, 2, 3, n), t(2, 3, 3, n)]).unwrap();
    assert_eq!(v, t(1, 2, 3, n).bracket(&t(2, 3, 3, n)));
}

#[test]
fn json_roundtrip() {
    let n = 3;
    let u = t(1, 2, 3, n).add(&t(1, 3, 3, n).bracket(&t(2, 3, 3, n)));
    assert_eq!(TDerElem::<Q>::from_json(&u.to_json()).unwrap(), u);
    let g = exp_tder(&u).unwrap();
    assert_eq!(TAutElem::<Q>::from_json(&g.to_json()).unwrap(), g);
}

#[test]
fn errors() {
    assert!(matches!(
        tk_generator::<Q>(1, 4, 3, 2),
        Err(TangentError::Index { index: 4, arity: 3 })
    ));
    assert!(matches!(
        t(1, 2, 2, 3).try_bracket(&t(1, 2, 3, 3)),
        Err(TangentError::Arity(2, 3))
    ));
    assert!(matches!(
        t(1, 2, 2, 3).try_bracket(&t(1, 2, 2, 4)),
        Err(TangentError::Order(3, 4))
    ));
    let bad = vec![NCSeries::<Q>::constant(2, 2, qi(2)), NCSeries::one(2, 2)];
    assert!(matches!(
        TAutElem::from_components(bad),
        Err(TangentError::NotUnipotent(1))
    ));
}

#[test]
fn float_scalars_agree_with_exact() {
    let n = 4;
    let u = t(1, 2, 3, n).bracket(&t(1, 3, 3, n)).add(&t(2, 3, 3, n));
    let f = u.map(scalars::rational_to_f64);
    let g = exp_tder(&f).unwrap();
    let back = log_taut(&g).unwrap();
    assert!(back.distance(&f) < 1e-12);
}
