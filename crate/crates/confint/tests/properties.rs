use std::f64::consts::PI;

use confint::*;
use graphcx::{builtin, Graph};
use proptest::prelude::*;
use scalars::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn point() -> impl Strategy<Value = Complex64> {
    (-3.0..3.0f64, -3.0..3.0f64).prop_map(|(x, y)| c(x, y))
}

fn upper_point() -> impl Strategy<Value = Complex64> {
    (-3.0..3.0f64, 0.05..3.0f64).prop_map(|(x, y)| c(x, y))
}

fn away_from(p: Complex64, qs: &[Complex64], eps: f64) -> bool {
    qs.iter().all(|q| (p - q).norm() > eps)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn f_is_odd_under_conjugation(w in point()) {
        prop_assume!(away_from(w, &[c(0.0, 0.0), c(1.0, 0.0)], 1e-3));
        let f = f_function(w).unwrap();
        prop_assert!((f + f_function(w.conj()).unwrap()).abs() < 1e-14);
        if w.im > 1e-6 {
            prop_assert!(f > 0.0);
        }
    }

    #[test]
    fn dilog_reflection_holds(w in point()) {
        prop_assume!(away_from(w, &[c(0.0, 0.0), c(1.0, 0.0)], 1e-3) && w.im.abs() > 1e-6);
        let one = c(1.0, 0.0);
        let lhs = dilog(w) + dilog(one - w);
        let rhs = PI * PI / 6.0 - w.ln() * (one - w).ln();
        prop_assert!((lhs - rhs).norm() < 1e-11 * (1.0 + rhs.norm()));
    }

    #[test]
    fn dilog_derivative_is_minus_log_over_w(w in point()) {
        prop_assume!(away_from(w, &[c(0.0, 0.0), c(1.0, 0.0)], 0.05) && w.im.abs() > 0.05);
        let h = 1e-5;
        let fd = (dilog(w + h) - dilog(w - h)) / (2.0 * h);
        let exact = -(c(1.0, 0.0) - w).ln() / w;
        prop_assert!((fd - exact).norm() < 1e-7 * (1.0 + exact.norm()));
    }

    #[test]
    fn beta_tilde_scales_with_four_t_one_minus_t(
        a in point(), b in point(), t in 0.0..1.0f64,
    ) {
        let fixed = [c(0.0, 0.0), c(1.0, 0.0)];
        prop_assume!(away_from(a, &fixed, 0.05) && away_from(b, &fixed, 0.05) && (a - b).norm() > 0.05);
        let k4 = builtin("tetrahedron").unwrap();
        let half = beta_tilde_pointwise(&k4, 0.5, &[a, b]).unwrap();
        let bt = beta_tilde_pointwise(&k4, t, &[a, b]).unwrap();
        let scale = (4.0 * t * (1.0 - t)).powi(2);
        prop_assert!((bt - half * scale).norm() <= 1e-12 * (half.norm() + 1e-300));
    }

    #[test]
    fn beta_tilde_follows_edge_permutation_sign(
        a in point(), b in point(), t in 0.0..1.0f64,
        perm in Just((0..6usize).collect::<Vec<_>>()).prop_shuffle(),
    ) {
        let fixed = [c(0.0, 0.0), c(1.0, 0.0)];
        prop_assume!(away_from(a, &fixed, 0.05) && away_from(b, &fixed, 0.05) && (a - b).norm() > 0.05);
        let k4 = builtin("tetrahedron").unwrap();
        let edges: Vec<(usize, usize)> = perm.iter().map(|&i| k4.edges()[i]).collect();
        let mut inversions = 0;
        for i in 0..6 {
            for j in (i + 1)..6 {
                if perm[i] > perm[j] {
                    inversions += 1;
                }
            }
        }
        let sign = if inversions % 2 == 0 { 1.0 } else { -1.0 };
        let g = Graph::new(4, &edges).unwrap();
        let x = beta_tilde_pointwise(&k4, t, &[a, b]).unwrap();
        let y = beta_tilde_pointwise(&g, t, &[a, b]).unwrap();
        prop_assert!((y - x * sign).norm() <= 1e-12 * (x.norm() + 1e-300));
    }

    #[test]
    fn propagator_is_closed_everywhere(z1 in upper_point(), z2 in upper_point(), t in -0.5..1.5f64) {
        prop_assume!((z1 - z2).norm() > 0.1);
        let h = 1e-5;
        let base = [z1.re, z1.im, z2.re, z2.im];
        let comps = |x: [f64; 4]| propagator_omega(t, c(x[0], x[1]), c(x[2], x[3])).unwrap().real_components();
        let shift = |k: usize, s: f64| { let mut x = base; x[k] += s; x };
        for i in 0..4 {
            for j in (i + 1)..4 {
                let di_j = (comps(shift(i, h))[j] - comps(shift(i, -h))[j]) / (2.0 * h);
                let dj_i = (comps(shift(j, h))[i] - comps(shift(j, -h))[i]) / (2.0 * h);
                prop_assert!((di_j - dj_i).norm() < 1e-6);
            }
        }
    }

    #[test]
    fn propagator_is_real_at_one_half(z1 in upper_point(), z2 in upper_point()) {
        prop_assume!((z1 - z2).norm() > 1e-3);
        let om = propagator_omega(0.5, z1, z2).unwrap();
        for r in om.real_components() {
            prop_assert!(r.im.abs() < 1e-12 * (1.0 + r.re.abs()));
        }
    }

    #[test]
    fn quadrature_is_reproducible(tol in 1e-7..1e-5f64) {
        let spec = QuadratureSpec::with_tol(tol);
        let a = tetra_type1_integral(&spec).unwrap();
        let b = tetra_type1_integral(&spec).unwrap();
        prop_assert_eq!(a, b);
    }
}
