#![allow(dead_code)]

use associator::{Associator, Origin};
use ncalg::{LieSeries, NCSeries};
use scalars::{q, Complex64, Rational, Scalar};

/// `[X,[X,Y]] − [[X,Y],Y]`, the degree-3 element of grt_1.
pub fn psi3<S: Scalar>(n: usize) -> LieSeries<S> {
    let mut psi = LieSeries::zero(2, n);
    psi.set_coeff(&[1, 1, 2], S::one()).unwrap();
    psi.set_coeff(&[1, 2, 2], -S::one()).unwrap();
    psi
}

pub fn phi_kz(n: usize) -> Associator<Complex64> {
    let s = kz::phi_kz(n, 64, 1e-10).unwrap().series;
    Associator::new(s, Origin::Kz, 1e-10).unwrap()
}

/// Even-degree part of `Φ_KZ` at `N = 4`, rounded to its exact rational
/// values. With no degree-1 term the odd and even parts decouple up to
/// degree 4, so this is an exact associator.
pub fn rational_kz4() -> Associator<Rational> {
    let s = kz::phi_kz(4, 64, 1e-10).unwrap().series;
    let den = 5760i64;
    let mut out = NCSeries::<Rational>::zero(2, 4);
    for d in [0usize, 2, 4] {
        for (x, c) in out.degree_slice_mut(d).iter_mut().zip(s.degree_slice(d)) {
            *x = q((c.re * den as f64).round() as i64, den);
        }
    }
    Associator::new(out, Origin::Input, 0.0).unwrap()
}

pub fn to_complex(a: &Associator<Rational>) -> Associator<Complex64> {
    let s = a.series().map(|c| Complex64::from_rational(c));
    Associator::new(s, Origin::Input, 1e-12).unwrap()
}
