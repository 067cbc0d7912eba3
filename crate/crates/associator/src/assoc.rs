use ncalg::{LieSeries, NCSeries};
use scalars::{Scalar, Value};
use tangent::{exp_tder, lie_eval, tk_generator, TAutElem, TDerElem};

use crate::error::AssocError;

/// Where an associator came from; carried into JSON output.
#[derive(Clone, Debug, PartialEq)]
pub enum Origin {
    Kz,
    AntiKz,
    Interpolated(f64),
    Twisted,
    Input,
}

impl Origin {
    pub fn label(&self) -> String {
        match self {
            Origin::Kz => "kz".into(),
            Origin::AntiKz => "anti-kz".into(),
            Origin::Interpolated(t) => format!("interpolated({t})"),
            Origin::Twisted => "twisted".into(),
            Origin::Input => "input".into(),
        }
    }
}

/// Group-like series `Φ(X, Y)` with constant term 1.
///
/// Construction checks group-likeness against a tolerance; the axioms
/// (pentagon, hexagon, duality) are checked separately.
#[derive(Clone, Debug, PartialEq)]
pub struct Associator<S> {
    series: NCSeries<S>,
    origin: Origin,
}

impl<S: Scalar> Associator<S> {
    pub fn new(series: NCSeries<S>, origin: Origin, tol: f64) -> Result<Self, AssocError> {
        if series.alphabet() != 2 {
            return Err(AssocError::Alphabet(series.alphabet()));
        }
        if series.constant_term() != S::one() {
            return Err(AssocError::ConstantTerm);
        }
        let residual = series.grouplike_residual();
        if residual > tol {
            return Err(AssocError::NotGrouplike { residual, tol });
        }
        Ok(Associator { series, origin })
    }

    /// The trivial associator `1`.
    pub fn one(n: usize) -> Self {
        Associator {
            series: NCSeries::one(2, n),
            origin: Origin::Input,
        }
    }

    pub fn series(&self) -> &NCSeries<S> {
        &self.series
    }

    pub fn origin(&self) -> &Origin {
        &self.origin
    }

    pub fn order(&self) -> usize {
        self.series.order()
    }

    pub fn with_origin(mut self, origin: Origin) -> Self {
        self.origin = origin;
        self
    }

    /// `log Φ` in Lyndon coordinates; errors when the non-Lie remainder
    /// exceeds `tol`.
    pub fn log_lie(&self, tol: f64) -> Result<LieSeries<S>, AssocError> {
        let l = self.series.log()?;
        let (lie, residual) = LieSeries::from_nc_with_residual(&l);
        if residual > tol {
            return Err(AssocError::NotLie { residual, tol });
        }
        Ok(lie)
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.series.to_json();
        v["kind"] = "associator".into();
        v["origin"] = self.origin.label().into();
        v
    }

    pub fn from_json(v: &Value, tol: f64) -> Result<Self, AssocError> {
        let series = NCSeries::from_json(v)?;
        Self::new(series, Origin::Input, tol)
    }
}

/// `Φ(t_ab, t_bc)` as a tangential automorphism of arity 3: `Φ^{a,b,c}` in
/// the usual superscript notation.
pub fn to_taut3_labelled<S: Scalar>(
    phi: &Associator<S>,
    labels: [usize; 3],
    tol: f64,
) -> Result<TAutElem<S>, AssocError> {
    let [a, b, c] = labels;
    let n = phi.order();
    let tab = generator(a, b, n)?;
    let tbc = generator(b, c, n)?;
    let u = lie_eval(&phi.log_lie(tol)?, &[tab, tbc])?;
    Ok(exp_tder(&u)?)
}

/// `Φ(t_12, t_23) ∈ TAut_3`.
pub fn to_taut3<S: Scalar>(phi: &Associator<S>, tol: f64) -> Result<TAutElem<S>, AssocError> {
    to_taut3_labelled(phi, [1, 2, 3], tol)
}

fn generator<S: Scalar>(i: usize, j: usize, n: usize) -> Result<TDerElem<S>, AssocError> {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    Ok(tk_generator(i, j, 3, n)?)
}

/// Pentagon residual: both sides of
/// `Φ^{1,2,34} Φ^{12,3,4} = Φ^{2,3,4} Φ^{1,23,4} Φ^{1,2,3}` in `TAut_4`,
/// compared on the generator images.
pub fn check_pentagon<S: Scalar>(phi: &Associator<S>, tol: f64) -> Result<f64, AssocError> {
    let p = to_taut3(phi, tol)?;
    let lhs = p.duplicate_slot(3)?.compose(&p.duplicate_slot(1)?)?;
    let rhs = p
        .pad_left()
        .compose(&p.duplicate_slot(2)?)?
        .compose(&p.pad_right())?;
    Ok(lhs.distance(&rhs))
}

/// Hexagon residual: both sides of
/// `e^{(t_13+t_23)/2} = Φ^{3,1,2} e^{t_13/2} (Φ^{1,3,2})⁻¹ e^{t_23/2} Φ` in
/// `TAut_3`.
pub fn check_hexagon<S: Scalar>(phi: &Associator<S>, tol: f64) -> Result<f64, AssocError> {
    let n = phi.order();
    let half = scalars::q(1, 2);
    let t13 = generator::<S>(1, 3, n)?;
    let t23 = generator::<S>(2, 3, n)?;
    let lhs = exp_tder(&t13.add(&t23).scale_q(&half))?;
    let e13 = exp_tder(&t13.scale_q(&half))?;
    let e23 = exp_tder(&t23.scale_q(&half))?;
    let rhs = to_taut3_labelled(phi, [3, 1, 2], tol)?
        .compose(&e13)?
        .compose(&to_taut3_labelled(phi, [1, 3, 2], tol)?.inverse()?)?
        .compose(&e23)?
        .compose(&to_taut3(phi, tol)?)?;
    Ok(lhs.distance(&rhs))
}

/// Duality residual `Φ^{1,2,3} Φ^{3,2,1} = 1`, evaluated on the series as
/// `Φ(X, Y) · Φ(Y, X) = 1`.
pub fn check_duality<S: Scalar>(phi: &Associator<S>) -> f64 {
    let s = phi.series();
    let swapped = s.relabel(2, &[2, 1]);
    let prod = s.mul(&swapped);
    prod.sub(&NCSeries::one(2, s.order())).max_abs()
}

/// Duality residual computed in `TAut_3`.
pub fn check_duality_taut<S: Scalar>(phi: &Associator<S>, tol: f64) -> Result<f64, AssocError> {
    let a = to_taut3(phi, tol)?;
    let b = to_taut3_labelled(phi, [3, 2, 1], tol)?;
    let prod = a.compose(&b)?;
    Ok(prod.distance(&TAutElem::identity(3, phi.order())))
}

/// Residuals of the associator axioms.
#[derive(Clone, Debug, PartialEq)]
pub struct AxiomReport {
    pub grouplike: f64,
    pub duality: f64,
    pub hexagon: f64,
    pub pentagon: f64,
}

impl AxiomReport {
    pub fn max(&self) -> f64 {
        self.grouplike
            .max(self.duality)
            .max(self.hexagon)
            .max(self.pentagon)
    }
}

pub fn check_axioms<S: Scalar>(phi: &Associator<S>, tol: f64) -> Result<AxiomReport, AssocError> {
    Ok(AxiomReport {
        grouplike: phi.series().grouplike_residual(),
        duality: check_duality(phi),
        hexagon: check_hexagon(phi, tol)?,
        pentagon: check_pentagon(phi, tol)?,
    })
}
