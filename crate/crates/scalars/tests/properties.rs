use proptest::prelude::*;
use scalars::{poly_definite_integral, q, Dual, PolyInT, Rational, Scalar};

type P = PolyInT<Rational>;

fn rational() -> impl Strategy<Value = Rational> {
    (-30i64..30, 1i64..10).prop_map(|(n, d)| q(n, d))
}

fn poly() -> impl Strategy<Value = P> {
    proptest::collection::vec(rational(), 0..5).prop_map(P::new)
}

fn dual() -> impl Strategy<Value = Dual<Rational>> {
    (rational(), rational()).prop_map(|(a, b)| Dual::new(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polynomial_ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert!((a.clone() - a.clone()).is_zero());
        prop_assert_eq!(a.clone() * P::one(), a);
    }

    #[test]
    fn evaluation_is_a_ring_map(a in poly(), b in poly(), x in rational()) {
        prop_assert_eq!((a.clone() * b.clone()).eval_q(&x), a.eval_q(&x) * b.eval_q(&x));
        prop_assert_eq!((a.clone() + b.clone()).eval_q(&x), a.eval_q(&x) + b.eval_q(&x));
    }

    #[test]
    fn leibniz_rule(a in poly(), b in poly()) {
        let lhs = (a.clone() * b.clone()).derivative();
        let rhs = a.derivative() * b.clone() + a * b.derivative();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn integral_is_additive(p in poly(), a in rational(), b in rational(), c in rational()) {
        let whole = poly_definite_integral(&p, &a, &c);
        let parts = poly_definite_integral(&p, &a, &b) + poly_definite_integral(&p, &b, &c);
        prop_assert_eq!(whole, parts);
    }

    #[test]
    fn dual_ring_axioms(a in dual(), b in dual(), c in dual()) {
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * b.clone(), b * a);
    }

    /// Evaluating a polynomial at `x + ε` gives `p(x) + p'(x) ε`.
    #[test]
    fn dual_chain_rule(p in poly(), x in rational()) {
        let at = p.map(|c| Dual::real(c.clone())).eval(&Dual::new(x.clone(), Rational::one()));
        prop_assert_eq!(at.primal, p.eval_q(&x));
        prop_assert_eq!(at.tangent, p.derivative().eval_q(&x));
    }

    #[test]
    fn rational_scaling_matches_multiplication(p in poly(), x in rational()) {
        prop_assert_eq!(p.scale_q(&x), p.clone() * P::from_rational(&x));
    }
}
