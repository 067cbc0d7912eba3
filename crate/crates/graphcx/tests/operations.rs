use graphcx::{
    builtin, differential, divergence, enumerate_gc, gc_bracket, grt_basis, grt_check,
    ihara_bracket, phi_map, pi_project, psi_map, psi_prop_residual, GcError, Graph, GraphLinComb,
};
use ncalg::LieSeries;
use scalars::{q, rational_to_f64, Rational};
use tangent::TDerElem;

fn lc(name: &str) -> GraphLinComb {
    GraphLinComb::from_graph(&builtin(name).unwrap())
}

fn psi3(n: usize) -> LieSeries<Rational> {
    let mut p = LieSeries::zero(2, n);
    p.set_coeff(&[1, 1, 2], q(1, 1)).unwrap();
    p.set_coeff(&[1, 2, 2], q(-1, 1)).unwrap();
    p
}

#[test]
fn canonical_forms() {
    let (_, s) = builtin("edge").unwrap().canonical().unwrap();
    assert_eq!(s, 1);
    let two = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
    assert!(!two.is_connected());
    // swapping the components transposes the two odd edges
    assert!(two.canonical().is_none());
    assert!(builtin("tetrahedron").unwrap().canonical().is_some());
    assert!(Graph::new(2, &[(0, 1), (1, 0)])
        .unwrap()
        .canonical()
        .is_none());
    // the path on three vertices has an edge-reversing automorphism
    assert!(Graph::new(3, &[(0, 1), (1, 2)])
        .unwrap()
        .canonical()
        .is_none());

    let a = Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
    let b = Graph::new(4, &[(0, 2), (0, 1), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
    let (ca, sa) = a.canonical().unwrap();
    let (cb, sb) = b.canonical().unwrap();
    assert_eq!(ca, cb);
    assert_eq!(sa, -sb);
    let sum = GraphLinComb::from_graph(&a).add(&GraphLinComb::from_graph(&b));
    assert!(sum.is_zero());
}

#[test]
fn graph_construction_and_json() {
    assert!(matches!(
        Graph::new(2, &[(0, 2)]),
        Err(GcError::Vertex { vertex: 2, n: 2 })
    ));
    assert!(matches!(Graph::new(11, &[]), Err(GcError::TooLarge { .. })));
    assert!(matches!(builtin("cube"), Err(GcError::UnknownGraph(_))));
    let k4 = builtin("tetrahedron").unwrap();
    assert_eq!(k4.degree(), 0);
    assert!(k4.in_gc() && k4.is_one_vertex_irreducible());
    let w5 = builtin("wheel5").unwrap();
    assert_eq!((w5.vertices(), w5.edge_count(), w5.degree()), (6, 10, 0));
    for g in [&k4, &w5] {
        assert_eq!(&Graph::from_json(&g.to_json()).unwrap(), g);
    }
    let v = serde_json::json!({"vertices": 3, "edges": [[1, 2], [2, 3]]});
    assert_eq!(
        Graph::from_json(&v).unwrap(),
        Graph::new(3, &[(0, 1), (1, 2)]).unwrap()
    );
    assert!(Graph::from_json(&serde_json::json!({"vertices": 2, "edges": [[0, 1]]})).is_err());
    let x = lc("tetrahedron").scale(&q(3, 7)).add(&lc("wheel5"));
    assert_eq!(GraphLinComb::from_json(&x.to_json()).unwrap(), x);
}

#[test]
fn enumeration_of_small_gc() {
    assert!(enumerate_gc(3).is_empty());
    assert_eq!(
        enumerate_gc(4),
        vec![builtin("tetrahedron").unwrap().canonical().unwrap().0]
    );
    assert!(enumerate_gc(5).is_empty());
    assert_eq!(enumerate_gc(6).len(), 5);
}

#[test]
fn differential_vanishes_on_edge_and_tetrahedron() {
    assert!(differential(&lc("edge")).is_zero());
    assert!(differential(&lc("tetrahedron")).is_zero());
    assert!(differential(&GraphLinComb::zero()).is_zero());
    assert!(!differential(&lc("wheel5")).is_zero());
}

#[test]
fn differential_squares_to_zero_and_stays_in_gc() {
    for n in 1..=6 {
        for g in enumerate_gc(n) {
            let d = differential(&GraphLinComb::from_graph(&g));
            assert!(d
                .terms()
                .all(|(h, _)| h.in_gc() && h.degree() == g.degree() + 1));
            assert!(differential(&d).is_zero(), "δ² ≠ 0 on {:?}", g.edges());
        }
    }
}

#[test]
fn brackets_of_small_elements() {
    assert!(gc_bracket(&lc("edge"), &lc("edge")).is_zero());
    let k4 = lc("tetrahedron");
    assert!(gc_bracket(&k4, &k4).is_zero());
    assert_eq!(
        gc_bracket(&lc("edge"), &k4),
        differential(&k4).scale(&q(2, 1))
    );
    let w5 = lc("wheel5");
    assert_eq!(gc_bracket(&k4, &w5), gc_bracket(&w5, &k4).scale(&q(-1, 1)));
}

#[test]
fn divergence_of_cocycles() {
    assert!(divergence(&GraphLinComb::zero()).is_zero());
    assert!(divergence(&lc("tetrahedron")).is_zero());
    let d = divergence(&lc("wheel5"));
    assert!(!d.is_zero());
    assert!(d.terms().all(|(g, _)| !g.has_loops()));
}

#[test]
fn psi_of_edge_and_triangle() {
    let empty = Graph::with_externals(2, 2, &[]).unwrap();
    assert_eq!(
        psi_map(&lc("edge")),
        GraphLinComb::from_graph(&empty).scale(&q(2, 1))
    );
    // a reflection of the triangle is an odd edge permutation
    assert!(builtin("triangle").unwrap().canonical().is_none());
    assert!(psi_map(&lc("triangle")).is_zero());
    let path = Graph::with_externals(2, 3, &[(0, 2), (2, 1)]).unwrap();
    assert!(path.canonical().is_some());
    let square = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 2)]).unwrap();
    let out = psi_map(&GraphLinComb::from_graph(&square));
    assert!(out
        .terms()
        .all(|(g, _)| g.externals() == 2 && g.edge_count() == 3));
}

#[test]
fn psi_intertwines_the_differentials() {
    assert!(psi_prop_residual(&lc("tetrahedron")).is_zero());
    assert!(psi_prop_residual(&lc("edge")).is_zero());
    assert!(psi_prop_residual(&lc("triangle")).is_zero());
    for g in enumerate_gc(6) {
        assert!(psi_prop_residual(&GraphLinComb::from_graph(&g)).is_zero());
    }
}

#[test]
fn projection_to_trees() {
    let chain = Graph::with_externals(2, 3, &[(0, 2), (2, 1)]).unwrap();
    assert!(pi_project(&GraphLinComb::from_graph(&chain), 3).is_zero());
    let bare = Graph::with_externals(2, 2, &[(0, 1)]).unwrap();
    let u = pi_project(&GraphLinComb::from_graph(&bare), 3);
    assert_eq!(u, TDerElem::tk_generator(1, 2, 2, 3).unwrap());
    let u = pi_project(&psi_map(&lc("tetrahedron")), 3);
    assert!(!u.is_zero());
    assert_eq!(u.sder_residual(), 0.0);
}

#[test]
fn phi_of_tetrahedron() {
    assert!(phi_map(&GraphLinComb::zero()).unwrap().is_zero());
    let phi = phi_map(&lc("tetrahedron")).unwrap();
    assert_eq!(phi, psi3(3).scale_q(&q(24, 1)));
    let r = grt_check(&phi).unwrap();
    assert_eq!((r.anti, r.hexa, r.penta), (0.0, 0.0, 0.0));
}

#[test]
fn phi_rejects_bad_input() {
    assert!(matches!(phi_map(&lc("edge")), Err(GcError::Degree(1))));
    assert!(matches!(
        phi_map(&lc("wheel5")),
        Err(GcError::NotCocycle { .. })
    ));
}

#[test]
fn phi_kills_exact_cocycles() {
    let mut seen = 0;
    for g in enumerate_gc(6).into_iter().filter(|g| g.degree() == -1) {
        let d = differential(&GraphLinComb::from_graph(&g));
        assert!(!d.is_zero());
        assert!(phi_map(&d).unwrap().is_zero());
        seen += 1;
    }
    assert_eq!(seen, 1);
}

#[test]
fn grt_dimensions_in_low_degrees() {
    let dims: Vec<usize> = (3..=6).map(|d| grt_basis(d).unwrap().len()).collect();
    assert_eq!(dims, vec![1, 0, 1, 0]);
    let b3 = &grt_basis(3).unwrap()[0];
    let ratio = b3.coeff(&[1, 1, 2]).unwrap();
    assert_eq!(b3, &psi3(3).scale_q(&ratio));
    let s5 = &grt_basis(5).unwrap()[0];
    assert_eq!(grt_check(s5).unwrap().max(), 0.0);
}

#[test]
fn grt_check_rejects_non_elements() {
    let mut xy = LieSeries::<Rational>::zero(2, 3);
    xy.set_coeff(&[1, 2], q(1, 1)).unwrap();
    assert!(grt_check(&xy).unwrap().max() > 0.0);
    let mut d4 = LieSeries::<Rational>::zero(2, 4);
    d4.set_coeff(&[1, 1, 1, 2], q(2, 1)).unwrap();
    d4.set_coeff(&[1, 2, 2, 2], q(-1, 3)).unwrap();
    assert!(grt_check(&d4).unwrap().max() > 0.0);
    assert!(matches!(
        grt_check(&LieSeries::<Rational>::zero(3, 3)),
        Err(GcError::Alphabet(3))
    ));
}

#[test]
fn ihara_bracket_of_grt_elements() {
    let p = psi3(8);
    assert!(ihara_bracket(&p, &p).unwrap().is_zero());
    let s5 = LieSeries::from_nc_exact(&grt_basis(5).unwrap()[0].to_nc().with_order(8));
    let b = ihara_bracket(&p, &s5).unwrap();
    assert!(!b.is_zero());
    assert_eq!(b.homogeneous_part(8), b);
    // the coefficients are small integers, so the check in f64 is exact
    assert_eq!(grt_check(&b.map(rational_to_f64)).unwrap().max(), 0.0);
    assert!(matches!(
        ihara_bracket(&p, &psi3(5)),
        Err(GcError::Order(8, 5))
    ));
}
