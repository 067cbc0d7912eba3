use ncalg::*;
use scalars::{q, qi, Rational, Scalar};

type R = NCSeries<Rational>;

fn x(n: usize) -> R {
    R::gen(2, n, 1)
}
fn y(n: usize) -> R {
    R::gen(2, n, 2)
}

#[test]
fn lyndon_examples() {
    let b1 = lyndon_basis(2, 1);
    assert_eq!(b1.len(), 2);
    let b2 = lyndon_basis(2, 2);
    assert_eq!(b2.len(), 1);
    assert_eq!(b2[0].0, vec![1, 2]);
    assert_eq!(b2[0].1.render(2), "[X,Y]");
    let b3: Vec<Word> = lyndon_basis(2, 3).into_iter().map(|p| p.0).collect();
    assert_eq!(b3, vec![vec![1, 1, 2], vec![1, 2, 2]]);
}

#[test]
fn product_examples() {
    let one = R::one(2, 3);
    let p = one.add(&x(3)).mul(&one.add(&y(3)));
    let expect = R::from_terms(
        2,
        3,
        vec![
            (vec![], qi(1)),
            (vec![1], qi(1)),
            (vec![2], qi(1)),
            (vec![1, 2], qi(1)),
        ],
    )
    .unwrap();
    assert_eq!(p, expect);
    assert_eq!(x(3).mul(&one), x(3));
    assert_ne!(x(3).mul(&y(3)), y(3).mul(&x(3)));
    assert_eq!(x(3).mul(&y(3)).coeff(&[1, 2]), qi(1));
}

#[test]
fn mismatched_shapes_are_rejected() {
    let a = R::gen(2, 3, 1);
    let b = R::gen(3, 3, 1);
    let c = R::gen(2, 4, 1);
    assert!(matches!(nc_mul(&a, &b), Err(NcError::Alphabet(2, 3))));
    assert!(matches!(nc_add(&a, &c), Err(NcError::Order(3, 4))));
}

#[test]
fn exp_log_examples() {
    let zero = R::zero(2, 4);
    assert_eq!(zero.exp().unwrap(), R::one(2, 4));
    let s = x(6).add(&y(6));
    assert_eq!(s.exp().unwrap().log().unwrap(), s);
    let z = bch(&x(2), &y(2)).unwrap();
    let expect = R::from_terms(
        2,
        2,
        vec![
            (vec![1], qi(1)),
            (vec![2], qi(1)),
            (vec![1, 2], q(1, 2)),
            (vec![2, 1], q(-1, 2)),
        ],
    )
    .unwrap();
    assert_eq!(z, expect);
    assert!(matches!(
        R::one(2, 2).exp(),
        Err(NcError::ConstantTerm { .. })
    ));
    assert!(matches!(x(2).log(), Err(NcError::ConstantTerm { .. })));
}

#[test]
fn lie_projection_examples() {
    let br = LieSeries::<Rational>::from_nc(&x(3).bracket(&y(3)), 0.0).unwrap();
    assert_eq!(lie_to_nc(&br), x(3).mul(&y(3)).sub(&y(3).mul(&x(3))));
    let p = nc_project_lie(&x(3).bracket(&y(3))).unwrap();
    assert_eq!(p, br);
    let half = nc_project_lie(&x(3).mul(&y(3))).unwrap();
    assert_eq!(half, br.scale_q(&q(1, 2)));
    assert!(nc_project_lie(&R::one(2, 3)).is_err());
    assert!(matches!(
        LieSeries::from_nc(&x(3).mul(&y(3)), 0.0),
        Err(NcError::NotLie { degree: 2, .. })
    ));
}

#[test]
fn grouplike_examples() {
    assert_eq!(is_grouplike(&x(4).exp().unwrap()), 0.0);
    let g = R::one(2, 3).add(&x(3).mul(&y(3)));
    assert_eq!(is_grouplike(&g), 1.0);
    let e = x(5).bracket(&y(5)).exp().unwrap();
    assert_eq!(is_grouplike(&e), 0.0);
}

#[test]
fn substitution_examples() {
    let k = 3;
    let n = 3;
    let g = |i| R::gen(k, n, i);
    let br = g(1).bracket(&g(2));
    let out = substitute(&br, &[g(1).add(&g(2)), g(3), g(3)]).unwrap();
    assert_eq!(out, g(1).bracket(&g(3)).add(&g(2).bracket(&g(3))));
    let a = g(1).mul(&g(2)).add(&g(3).mul(&g(3)).mul(&g(1)));
    assert_eq!(substitute(&a, &[g(1), g(2), g(3)]).unwrap(), a);
    let swapped = substitute(&x(2).mul(&y(2)), &[y(2), x(2)]).unwrap();
    assert_eq!(swapped, y(2).mul(&x(2)));
    // overflow is truncated, not an error
    let big = substitute(&x(2).mul(&x(2)), &[x(2).mul(&y(2)), y(2)]).unwrap();
    assert!(big.is_zero());
}

#[test]
fn derivation_matches_leibniz() {
    let k = 2;
    let n = 4;
    // D(X) = [X, Y], D(Y) = 0
    let d_imgs = vec![x(n).bracket(&y(n)), R::zero(k, n)];
    let a = x(n).mul(&x(n));
    let expect = d_imgs[0].mul(&x(n)).add(&x(n).mul(&d_imgs[0]));
    assert_eq!(a.apply_derivation(&d_imgs), expect);
}

#[test]
fn json_roundtrip() {
    let g = x(3).add(&y(3).mul(&x(3)).scale_q(&q(-2, 7))).exp().unwrap();
    let v = g.to_json();
    assert_eq!(v["alphabet"], 2);
    assert_eq!(R::from_json(&v).unwrap(), g);
    let l = nc_project_lie(&x(3).mul(&y(3)).mul(&y(3))).unwrap();
    assert_eq!(LieSeries::<Rational>::from_json(&l.to_json()).unwrap(), l);
    let bad = serde_json::json!({"alphabet": 2, "order": 1, "terms": [{"word": [1, 2], "coeff": ["1", "1"]}]});
    assert!(R::from_json(&bad).is_err());
    let _ = Rational::one();
}
