use ncalg::{LieSeries, NCSeries};
use scalars::{PolyInT, Rational, Scalar};
use tangent::{TAutElem, TDerElem};

use crate::assoc::{Associator, Origin};
use crate::error::AssocError;
use crate::twist::{grt_twist_act_taut, nu_embedding};

/// Generators `τ_{2j+1}` of the time-dependent element
/// `τ^t = Σ_j (t(1−t))^{2j} τ_{2j+1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct TauFamily<S> {
    gens: Vec<(usize, LieSeries<S>)>,
}

impl<S: Scalar> TauFamily<S> {
    pub fn empty() -> Self {
        TauFamily { gens: Vec::new() }
    }

    /// Adds `τ_degree`, which must be odd, at least 3, and concentrated in
    /// word length `degree`.
    pub fn with(mut self, degree: usize, tau: LieSeries<S>) -> Result<Self, AssocError> {
        if degree < 3 || degree % 2 == 0 {
            return Err(AssocError::FamilyDegree(degree));
        }
        if degree > tau.order() {
            return Err(AssocError::Truncation {
                order: tau.order(),
                degree,
            });
        }
        self.gens.push((degree, tau.homogeneous_part(degree)));
        Ok(self)
    }

    pub fn generators(&self) -> &[(usize, LieSeries<S>)] {
        &self.gens
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// `ν(τ^s)` as a derivation with polynomial coefficients in `s`, at
    /// truncation `n`.
    fn embedded(&self, n: usize) -> Result<TDerElem<PolyInT<S>>, AssocError> {
        let mut u = TDerElem::zero(2, n);
        for (degree, tau) in &self.gens {
            if *degree > n {
                return Err(AssocError::Truncation {
                    order: n,
                    degree: *degree,
                });
            }
            let bump = PolyInT::<S>::bump(degree - 1);
            let tau_n = resize(tau, n);
            let v = nu_embedding(&tau_n)?.map(|c| bump.clone() * PolyInT::constant(c.clone()));
            u = u.add(&v);
        }
        Ok(u)
    }
}

fn resize<S: Scalar>(l: &LieSeries<S>, n: usize) -> LieSeries<S> {
    LieSeries::from_nc_exact(&l.to_nc().with_order(n))
}

/// The flow `G_{t0→t}` of `∂_t G = ν(τ^t) ∘ G`, `G_{t0} = id`, as a
/// tangential automorphism of arity 2 with coefficients polynomial in `t`.
///
/// The generator images satisfy `I_i(t) = X_i + ∫_{t0}^t ν(τ^s)(I_i(s)) ds`;
/// since `ν(τ^s)` raises the degree, fixed-point iteration terminates.
pub fn grt_flow<S: Scalar>(
    fam: &TauFamily<S>,
    t0: &Rational,
    n: usize,
) -> Result<TAutElem<PolyInT<S>>, AssocError> {
    let u = fam.embedded(n)?;
    let m = n + 1;
    let mut images = Vec::with_capacity(2);
    for i in 1..=2 {
        let x = NCSeries::<PolyInT<S>>::gen(2, m, i);
        let mut img = x.clone();
        for _ in 0..m {
            let flow = u.apply_nc(&img).map(|p| p.antiderivative_from(t0));
            let next = x.add(&flow);
            if next == img {
                break;
            }
            img = next;
        }
        images.push(img);
    }
    Ok(TAutElem::from_generator_images(&images)?)
}

/// Solves `∂_t Φ^t = τ^t · Φ^t` from `Φ^{t0} = Φ_init` and returns `Φ^{t1}`.
///
/// The solution is the twist of `Φ_init` by the flow of [`grt_flow`],
/// computed exactly with coefficients polynomial in `t` and then evaluated.
pub fn interpolate<S: Scalar>(
    phi_init: &Associator<S>,
    t0: &Rational,
    t1: &Rational,
    fam: &TauFamily<S>,
    tol: f64,
) -> Result<Associator<S>, AssocError> {
    let poly = interpolate_poly(phi_init, t0, fam, tol)?;
    let series = poly.map(|p| p.eval_q(t1));
    Associator::new(
        series,
        Origin::Interpolated(scalars::rational_to_f64(t1)),
        tol,
    )
}

/// `Φ^t` with word coefficients as polynomials in `t`.
pub fn interpolate_poly<S: Scalar>(
    phi_init: &Associator<S>,
    t0: &Rational,
    fam: &TauFamily<S>,
    tol: f64,
) -> Result<NCSeries<PolyInT<S>>, AssocError> {
    let n = phi_init.order();
    let lifted = phi_init.series().map(|c| PolyInT::constant(c.clone()));
    if fam.is_empty() {
        return Ok(lifted);
    }
    let g = grt_flow(fam, t0, n)?;
    let phi = Associator::new(lifted, Origin::Input, tol)?;
    Ok(grt_twist_act_taut(&g, &phi, tol)?.series().clone())
}

/// Result of pinning the normalization of `τ_3 = λ ψ_3`.
#[derive(Clone, Debug, PartialEq)]
pub struct PinnedLambda<S> {
    pub lambda: S,
    /// Largest degree-3 coefficient of `Φ^1 − target` after pinning.
    pub degree3_residual: f64,
    /// `Φ^1` computed with the pinned `λ`.
    pub phi_end: Associator<S>,
}

/// Chooses `λ` so that the flow of `τ_3 = λ ψ_3` from `Φ_init` at `t0 = 0`
/// reaches `target` at `t = 1` in degree 3. The degree-3 part of `Φ^1` is
/// affine in `λ`, so two evaluations fix it.
pub fn pin_lambda<S: Scalar>(
    phi_init: &Associator<S>,
    psi3: &LieSeries<S>,
    target: &NCSeries<S>,
    tol: f64,
) -> Result<PinnedLambda<S>, AssocError> {
    let zero = Rational::from_integer(0.into());
    let one = Rational::from_integer(1.into());
    let fam1 = TauFamily::empty().with(3, psi3.clone())?;
    let end1 = interpolate(phi_init, &zero, &one, &fam1, tol)?;
    let base = phi_init.series().degree_slice(3);
    let slope: Vec<S> = end1
        .series()
        .degree_slice(3)
        .iter()
        .zip(base)
        .map(|(a, b)| a.clone() - b.clone())
        .collect();
    let rhs: Vec<S> = target
        .degree_slice(3)
        .iter()
        .zip(base)
        .map(|(a, b)| a.clone() - b.clone())
        .collect();
    let (pos, _) = slope
        .iter()
        .enumerate()
        .map(|(i, c)| (i, c.mag()))
        .fold((0, 0.0), |acc, x| if x.1 > acc.1 { x } else { acc });
    let lambda = divide(&rhs[pos], &slope[pos])?;
    let fam = TauFamily::empty().with(3, psi3.scale(&lambda))?;
    let phi_end = interpolate(phi_init, &zero, &one, &fam, tol)?;
    let degree3_residual = phi_end
        .series()
        .degree_slice(3)
        .iter()
        .zip(target.degree_slice(3))
        .map(|(a, b)| (a.clone() - b.clone()).mag())
        .fold(0.0, f64::max);
    Ok(PinnedLambda {
        lambda,
        degree3_residual,
        phi_end,
    })
}

fn divide<S: Scalar>(a: &S, b: &S) -> Result<S, AssocError> {
    a.checked_div(b).ok_or(AssocError::DegenerateFlow)
}

/// Coefficient of the word `σ_{w_1} ⋯ σ_{w_k}` (odd degrees `w_j ≥ 3`) in
/// the path-ordered exponential of `∫_{t0}^{t1} τ^s ds`: the iterated
/// integral of the weights `(s(1−s))^{w_j − 1}` over
/// `t0 < s_1 < ⋯ < s_k < t1` (leftmost letter earliest), times `2^{1−k}`.
pub fn pexp_word_coefficient(word: &[usize], t0: &Rational, t1: &Rational) -> Rational {
    if word.is_empty() {
        return Rational::from_integer(1.into());
    }
    let raw = iterated_integral(word, t0, t1);
    raw * Rational::new(1.into(), num_pow2(word.len() - 1))
}

/// The iterated integral of [`pexp_word_coefficient`] without the prefactor.
pub fn iterated_integral(word: &[usize], t0: &Rational, t1: &Rational) -> Rational {
    let mut p = PolyInT::<Rational>::constant(Rational::from_integer(1.into()));
    for &w in word {
        p = (p * PolyInT::bump(w.saturating_sub(1))).antiderivative_from(t0);
    }
    p.eval_q(t1)
}

fn num_pow2(e: usize) -> num_bigint::BigInt {
    num_bigint::BigInt::from(1) << e
}
