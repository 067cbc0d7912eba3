use std::f64::consts::PI;

use ncalg::NCSeries;
use scalars::{Complex64, Scalar};

use crate::error::KzError;

/// Expansion point of a regularized solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Point {
    Zero,
    One,
}

/// Regularized solution `f(z) = f̃(s) · s^C` near `z = 0` (with `s = z`) or
/// `z = 1` (with `s = 1 − z`), where `f̃(s) = Σ_m c_m s^m` and `c_0 = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct FuchsSeries {
    pub point: Point,
    /// `c_0, …, c_M`.
    pub coeffs: Vec<NCSeries<Complex64>>,
    /// Residue `C` of the connection at the expansion point.
    pub exponent: NCSeries<Complex64>,
    /// Coefficient `D` of `1/(1 − s)` in the connection written in `s`.
    pub other: NCSeries<Complex64>,
}

/// Connection `A/z + B/(1 − z)` of the KZ ODE
/// `df/dz = (1/2πi)(X/z + Y/(z − 1)) f` in two generators, so `A = X/2πi`
/// and `B = −Y/2πi`.
pub fn kz_connection(n: usize) -> (NCSeries<Complex64>, NCSeries<Complex64>) {
    let c = Complex64::new(0.0, -1.0 / (2.0 * PI));
    (
        NCSeries::gen(2, n, 1).scale(&c),
        NCSeries::gen(2, n, 2).scale(&-c),
    )
}

/// Solves `(m − ad_C) x = r` by the terminating Neumann series
/// `x = Σ_j ad_C^j r / m^{j+1}` (`ad_C` raises the degree).
fn solve_shifted(
    m: usize,
    c: &NCSeries<Complex64>,
    r: &NCSeries<Complex64>,
) -> Result<NCSeries<Complex64>, KzError> {
    if m == 0 {
        return Err(KzError::Recurrence(m));
    }
    let inv = 1.0 / m as f64;
    let mut term = r.scale(&Complex64::new(inv, 0.0));
    let mut out = term.clone();
    for _ in 0..r.order() {
        term = c.bracket(&term).scale(&Complex64::new(inv, 0.0));
        if term.is_zero() {
            break;
        }
        out.add_assign_ref(&term);
    }
    Ok(out)
}

/// Frobenius recurrence for `f̃' = [C, f̃]/s + D/(1 − s) · f̃`:
/// `(m − ad_C) c_m = D · Σ_{j<m} c_j`.
fn frobenius(
    c: &NCSeries<Complex64>,
    d: &NCSeries<Complex64>,
    m_max: usize,
) -> Result<Vec<NCSeries<Complex64>>, KzError> {
    let n = c.order();
    let mut coeffs = vec![NCSeries::one(2, n)];
    let mut partial = NCSeries::one(2, n);
    for m in 1..=m_max {
        let cm = solve_shifted(m, c, &d.mul(&partial))?;
        partial.add_assign_ref(&cm);
        coeffs.push(cm);
    }
    Ok(coeffs)
}

/// Regularized solution of `df/dz = (A/z + B/(1 − z)) f` at `z = 0` or
/// `z = 1`, with Frobenius order `m_max` and truncation `n`.
///
/// Near 0 the solution behaves as `z^A`; near 1, writing `s = 1 − z`, the
/// equation becomes `df/ds = (−B/s − A/(1 − s)) f`, so it behaves as `s^{−B}`.
pub fn kz_regularized_solution(
    point: Point,
    m_max: usize,
    n: usize,
) -> Result<FuchsSeries, KzError> {
    if m_max == 0 || n == 0 {
        return Err(KzError::Parameter(
            "series order and truncation must be at least 1".into(),
        ));
    }
    let (a, b) = kz_connection(n);
    let (c, d) = match point {
        Point::Zero => (a, b),
        Point::One => (b.neg(), a.neg()),
    };
    let coeffs = frobenius(&c, &d, m_max)?;
    Ok(FuchsSeries {
        point,
        coeffs,
        exponent: c,
        other: d,
    })
}

impl FuchsSeries {
    fn local(&self, z: Complex64) -> Complex64 {
        match self.point {
            Point::Zero => z,
            Point::One => Complex64::new(1.0, 0.0) - z,
        }
    }

    /// `f̃(s) = Σ c_m s^m` at the local coordinate of `z`.
    pub fn regular_part(&self, z: Complex64) -> NCSeries<Complex64> {
        let s = self.local(z);
        let mut out = NCSeries::zero(2, self.exponent.order());
        for c in self.coeffs.iter().rev() {
            out = out.scale(&s).add(c);
        }
        out
    }

    /// `f(z) = f̃(s) · exp(C log s)`, principal branch.
    pub fn eval(&self, z: Complex64) -> NCSeries<Complex64> {
        let s = self.local(z);
        let e = self
            .exponent
            .scale(&s.ln())
            .exp()
            .expect("zero constant term");
        self.regular_part(z).mul(&e)
    }

    /// Largest coefficient of `df/dz − (A/z + B/(1 − z)) f` at `z`, with the
    /// derivative taken term by term.
    pub fn ode_residual(&self, z: Complex64) -> f64 {
        let s = self.local(z);
        let n = self.exponent.order();
        let mut tilde_prime = NCSeries::zero(2, n);
        for (m, c) in self.coeffs.iter().enumerate().skip(1).rev() {
            tilde_prime = tilde_prime
                .scale(&s)
                .add(&c.scale(&Complex64::new(m as f64, 0.0)));
        }
        let e = self
            .exponent
            .scale(&s.ln())
            .exp()
            .expect("zero constant term");
        let tilde = self.regular_part(z);
        // d/ds of f̃ s^C = f̃' s^C + f̃ C s^C / s
        let mut dfds = tilde_prime
            .mul(&e)
            .add(&tilde.mul(&self.exponent).mul(&e).scale(&s.inv()));
        if self.point == Point::One {
            dfds = dfds.neg();
        }
        let (a, b) = kz_connection(n);
        let one = Complex64::new(1.0, 0.0);
        let f = tilde.mul(&e);
        let rhs = a.scale(&z.inv()).add(&b.scale(&(one - z).inv())).mul(&f);
        dfds.sub(&rhs).max_abs()
    }
}

/// Output of [`phi_kz`].
#[derive(Clone, Debug, PartialEq)]
pub struct PhiKz {
    /// `Φ_KZ(X, Y)` truncated at word length `N`.
    pub series: NCSeries<Complex64>,
    /// Largest coefficient difference of `f_1⁻¹ f_0` between `z = ½` and
    /// `z = 0.4`.
    pub constancy_residual: f64,
}

/// `f_1(z)⁻¹ f_0(z)` at a point of `(0, 1)`.
pub fn transition(f0: &FuchsSeries, f1: &FuchsSeries, z: f64) -> NCSeries<Complex64> {
    let z = Complex64::new(z, 0.0);
    let a = f1.eval(z).inverse_unipotent().expect("unipotent");
    a.mul(&f0.eval(z))
}

/// The KZ associator `Φ_KZ = f_1⁻¹ f_0`, evaluated at `z = ½` and checked
/// against `z = 0.4`.
pub fn phi_kz(n: usize, m_max: usize, tol: f64) -> Result<PhiKz, KzError> {
    if !(tol > 0.0) {
        return Err(KzError::Parameter("tolerance must be positive".into()));
    }
    let f0 = kz_regularized_solution(Point::Zero, m_max, n)?;
    let f1 = kz_regularized_solution(Point::One, m_max, n)?;
    let series = transition(&f0, &f1, 0.5);
    if !series.is_finite() {
        return Err(KzError::NonFinite);
    }
    let other = transition(&f0, &f1, 0.4);
    let constancy_residual = series.sub(&other).max_abs();
    if constancy_residual > tol {
        return Err(KzError::Constancy {
            residual: constancy_residual,
            tol,
        });
    }
    Ok(PhiKz {
        series,
        constancy_residual,
    })
}

/// `Φ(X, Y) ↦ Φ(−X, −Y)`.
pub fn anti_kz<S: Scalar>(phi: &NCSeries<S>) -> NCSeries<S> {
    let mut out = phi.clone();
    for d in (1..=phi.order()).step_by(2) {
        for c in out.degree_slice_mut(d) {
            *c = -c.clone();
        }
    }
    out
}
