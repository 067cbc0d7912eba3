use graphcx::{
    differential, divergence, gc_bracket, grt_check, ihara_bracket, psi_prop_residual, Graph,
    GraphLinComb,
};
use ncalg::{witt_dimension, LieSeries};
use proptest::prelude::*;
use scalars::{q, Rational};

fn koszul(a: &Graph, b: &Graph) -> Rational {
    if a.edge_count() % 2 == 1 && b.edge_count() % 2 == 1 {
        q(-1, 1)
    } else {
        q(1, 1)
    }
}

/// Loop-free graph on `2..=max_n` vertices with a random edge set.
fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .collect();
        proptest::sample::subsequence(pairs.clone(), 1..=pairs.len())
            .prop_shuffle()
            .prop_map(move |e| Graph::new(n, &e).unwrap())
    })
}

fn lc(g: &Graph) -> GraphLinComb {
    GraphLinComb::from_graph(g)
}

fn lie(n: usize) -> impl Strategy<Value = LieSeries<Rational>> {
    let dims: Vec<usize> = (0..=n)
        .map(|d| if d >= 2 { witt_dimension(2, d) } else { 0 })
        .collect();
    let total: usize = dims.iter().sum();
    proptest::collection::vec(-3i64..=3, total).prop_map(move |cs| {
        let mut out = LieSeries::zero(2, n);
        let mut it = cs.into_iter();
        for d in 2..=n {
            for c in out.degree_coords_mut(d) {
                *c = q(it.next().unwrap(), 1);
            }
        }
        out
    })
}

fn sign_of(perm: &[usize]) -> i32 {
    let mut inv = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn canonical_form_is_invariant(g in graph(6), seed in any::<u64>()) {
        let n = g.vertices();
        let e = g.edge_count();
        let mut vperm: Vec<usize> = (0..n).collect();
        let mut eperm: Vec<usize> = (0..e).collect();
        let mut s = seed;
        for v in [&mut vperm, &mut eperm] {
            for i in (1..v.len()).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                v.swap(i, (s >> 33) as usize % (i + 1));
            }
        }
        let edges: Vec<(usize, usize)> =
            eperm.iter().map(|&i| { let (a, b) = g.edges()[i]; (vperm[a], vperm[b]) }).collect();
        let h = Graph::new(n, &edges).unwrap();
        match (g.canonical(), h.canonical()) {
            (None, None) => {}
            (Some((cg, sg)), Some((ch, sh))) => {
                prop_assert_eq!(cg, ch);
                prop_assert_eq!(sg * sign_of(&eperm), sh);
            }
            _ => prop_assert!(false, "vanishing is not invariant"),
        }
    }

    #[test]
    fn bracket_is_graded_antisymmetric(a in graph(4), b in graph(4)) {
        let ab = gc_bracket(&lc(&a), &lc(&b));
        let ba = gc_bracket(&lc(&b), &lc(&a)).scale(&(-koszul(&a, &b)));
        prop_assert_eq!(ab, ba);
    }

    #[test]
    fn differential_is_a_derivation(a in graph(4), b in graph(4)) {
        let lhs = differential(&gc_bracket(&lc(&a), &lc(&b)));
        let sign = if a.edge_count() % 2 == 1 { q(-1, 1) } else { q(1, 1) };
        let rhs = gc_bracket(&differential(&lc(&a)), &lc(&b))
            .add(&gc_bracket(&lc(&a), &differential(&lc(&b))).scale(&sign));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn differential_squares_to_zero(a in graph(5)) {
        prop_assert!(differential(&differential(&lc(&a))).is_zero());
    }

    #[test]
    fn divergence_is_a_derivation(a in graph(4), b in graph(4)) {
        let lhs = divergence(&gc_bracket(&lc(&a), &lc(&b)));
        let sign = if a.edge_count() % 2 == 1 { q(-1, 1) } else { q(1, 1) };
        let rhs = gc_bracket(&divergence(&lc(&a)), &lc(&b))
            .add(&gc_bracket(&lc(&a), &divergence(&lc(&b))).scale(&sign));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn psi_relation_holds(a in graph(5).prop_filter("connected", Graph::is_connected)) {
        prop_assert!(psi_prop_residual(&lc(&a)).is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn bracket_jacobi(a in graph(3), b in graph(3), c in graph(3)) {
        let (la, lb, lc_) = (lc(&a), lc(&b), lc(&c));
        let lhs = gc_bracket(&la, &gc_bracket(&lb, &lc_));
        let rhs = gc_bracket(&gc_bracket(&la, &lb), &lc_)
            .add(&gc_bracket(&lb, &gc_bracket(&la, &lc_)).scale(&koszul(&a, &b)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn ihara_antisymmetry_and_jacobi(
        (a, b, c) in (3usize..=7).prop_flat_map(|n| (lie(n), lie(n), lie(n)))
    ) {
        let ih = |x: &LieSeries<Rational>, y: &LieSeries<Rational>| ihara_bracket(x, y).unwrap();
        prop_assert!(ih(&a, &a).is_zero());
        prop_assert_eq!(ih(&a, &b), ih(&b, &a).neg());
        let jac = ih(&a, &ih(&b, &c)).add(&ih(&b, &ih(&c, &a))).add(&ih(&c, &ih(&a, &b)));
        prop_assert!(jac.is_zero());
    }

    #[test]
    fn grt_check_is_linear_on_the_solution(c in -10i64..10) {
        let mut p = LieSeries::<Rational>::zero(2, 4);
        p.set_coeff(&[1, 1, 2], q(c, 1)).unwrap();
        p.set_coeff(&[1, 2, 2], q(-c, 1)).unwrap();
        prop_assert_eq!(grt_check(&p).unwrap().max(), 0.0);
    }
}
