use ncalg::{LieSeries, NCSeries};
use scalars::{Dual, Scalar};
use tangent::{center_decompose_t3, exp_tder, log_taut, TAutElem, TDerElem};

use crate::assoc::{to_taut3, Associator, Origin};
use crate::error::AssocError;

/// Embedding of `grt_1` into the special derivations of arity 2:
/// `ψ ↦ (ψ(−X−Y, X), ψ(−X−Y, Y))`.
pub fn nu_embedding<S: Scalar>(psi: &LieSeries<S>) -> Result<TDerElem<S>, AssocError> {
    if psi.alphabet() != 2 {
        return Err(AssocError::Alphabet(psi.alphabet()));
    }
    let n = psi.order();
    let x = NCSeries::<S>::gen(2, n, 1);
    let y = NCSeries::<S>::gen(2, n, 2);
    let z = x.add(&y).neg();
    let p = psi.to_nc();
    let u1 = p.substitute(&[z.clone(), x])?;
    let u2 = p.substitute(&[z, y])?;
    Ok(TDerElem::from_nc_unchecked(vec![u1, u2]))
}

/// `F^{2,3} F^{1,23} Φ (F^{12,3})⁻¹ (F^{1,2})⁻¹` in `TAut_3` for a
/// tangential automorphism `F` of arity 2.
pub fn twist_taut3<S: Scalar>(
    f: &TAutElem<S>,
    phi: &TAutElem<S>,
) -> Result<TAutElem<S>, AssocError> {
    if f.arity() != 2 {
        return Err(AssocError::Alphabet(f.arity()));
    }
    Ok(f.pad_left()
        .compose(&f.duplicate_slot(2)?)?
        .compose(phi)?
        .compose(&f.duplicate_slot(1)?.inverse()?)?
        .compose(&f.pad_right().inverse()?)?)
}

/// Reads a `T_3` element back as an associator: `log` through
/// [`center_decompose_t3`], which must have vanishing central part.
pub fn from_taut3<S: Scalar>(g: &TAutElem<S>, tol: f64) -> Result<Associator<S>, AssocError> {
    let split = center_decompose_t3(&log_taut(g)?, tol).map_err(AssocError::NotInT3)?;
    let alpha = split.central.mag();
    if alpha > tol {
        return Err(AssocError::CentralAnomaly { alpha, tol });
    }
    let series = split.lie.to_nc().exp()?;
    Associator::new(series, Origin::Twisted, tol)
}

/// Drinfeld twist of `Φ` by an element of `GRT_1` given as the group-like
/// series `F = exp(ψ)`, embedded into `TAut_2` through [`nu_embedding`].
pub fn grt_twist_act<S: Scalar>(
    f: &NCSeries<S>,
    phi: &Associator<S>,
    tol: f64,
) -> Result<Associator<S>, AssocError> {
    let psi = Associator::new(f.clone(), Origin::Input, tol)?.log_lie(tol)?;
    if psi.degree_coords(1).iter().any(|c| c.mag() > tol) {
        return Err(AssocError::TwistDegree);
    }
    grt_twist_act_lie(&psi, phi, tol)
}

/// Twist by `exp(ψ)` for a Lie series `ψ`.
pub fn grt_twist_act_lie<S: Scalar>(
    psi: &LieSeries<S>,
    phi: &Associator<S>,
    tol: f64,
) -> Result<Associator<S>, AssocError> {
    let f = exp_tder(&nu_embedding(psi)?)?;
    grt_twist_act_taut(&f, phi, tol)
}

/// Twist by a tangential automorphism of arity 2.
pub fn grt_twist_act_taut<S: Scalar>(
    f: &TAutElem<S>,
    phi: &Associator<S>,
    tol: f64,
) -> Result<Associator<S>, AssocError> {
    let g = twist_taut3(f, &to_taut3(phi, tol)?)?;
    from_taut3(&g, tol)
}

/// Infinitesimal twist `ψ · Φ`: the `ε`-part of the twist by `exp(εψ)`
/// computed over dual numbers.
pub fn grt_infinitesimal_act<S: Scalar>(
    psi: &LieSeries<S>,
    phi: &Associator<S>,
    tol: f64,
) -> Result<NCSeries<S>, AssocError> {
    let psi_d: LieSeries<Dual<S>> = psi.map(|c| Dual::new(S::zero(), c.clone()));
    let phi_d = Associator::new(
        phi.series().map(|c| Dual::from(c.clone())),
        Origin::Input,
        tol,
    )?;
    let out = grt_twist_act_lie(&psi_d, &phi_d, tol)?;
    Ok(out.series().map(|c| c.tangent.clone()))
}
