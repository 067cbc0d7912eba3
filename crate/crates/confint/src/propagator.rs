use std::f64::consts::PI;

use scalars::Complex64;
use serde_json::{json, Value};

use crate::ConfintError;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// The propagator 1-form `ω^t(z1, z2)` at a point, as coefficients of
/// `dz1, dz̄1, dz2, dz̄2`.
#[derive(Clone, Debug, PartialEq)]
pub struct PropagatorEval {
    pub t: f64,
    pub dz1: Complex64,
    pub dzbar1: Complex64,
    pub dz2: Complex64,
    pub dzbar2: Complex64,
}

impl PropagatorEval {
    /// Pairing with the tangent vector moving `z1` by `v1` and `z2` by `v2`.
    pub fn pair(&self, v1: Complex64, v2: Complex64) -> Complex64 {
        self.dz1 * v1 + self.dzbar1 * v1.conj() + self.dz2 * v2 + self.dzbar2 * v2.conj()
    }

    /// Coefficients of `dx1, dy1, dx2, dy2`.
    pub fn real_components(&self) -> [Complex64; 4] {
        [
            self.dz1 + self.dzbar1,
            I * (self.dz1 - self.dzbar1),
            self.dz2 + self.dzbar2,
            I * (self.dz2 - self.dzbar2),
        ]
    }

    pub fn to_json(&self) -> Value {
        let c = |z: Complex64| json!([z.re, z.im]);
        json!({
            "t": self.t,
            "dz1": c(self.dz1),
            "dzbar1": c(self.dzbar1),
            "dz2": c(self.dz2),
            "dzbar2": c(self.dzbar2),
        })
    }
}

fn check_points(t: f64, z1: Complex64, z2: Complex64) -> Result<(), ConfintError> {
    if !t.is_finite() {
        return Err(ConfintError::Parameter(format!("t = {t} is not finite")));
    }
    if !(z1.im > 0.0) || !z1.is_finite() {
        return Err(ConfintError::Parameter(format!(
            "z1 = {z1} is not in the open upper half-plane"
        )));
    }
    if !(z2.im >= 0.0) || !z2.is_finite() {
        return Err(ConfintError::Parameter(format!(
            "z2 = {z2} is not in the closed upper half-plane"
        )));
    }
    if z1 == z2 {
        return Err(ConfintError::Coincident(format!("z1 = z2 = {z1}")));
    }
    Ok(())
}

fn coefficients(t: f64) -> (Complex64, Complex64) {
    let two_pi_i = Complex64::new(0.0, 2.0 * PI);
    (
        Complex64::new(1.0 - t, 0.0) / two_pi_i,
        Complex64::new(-t, 0.0) / two_pi_i,
    )
}

/// `φ^t(z1, z2) = ((1−t)/2πi) log((z1−z2)/(z̄1−z2)) − (t/2πi) log((z̄1−z̄2)/(z1−z̄2))`
/// on the principal branch.
pub fn propagator_phi(t: f64, z1: Complex64, z2: Complex64) -> Result<Complex64, ConfintError> {
    check_points(t, z1, z2)?;
    let (a, b) = coefficients(t);
    let first = ((z1 - z2) / (z1.conj() - z2)).ln();
    let second = ((z1.conj() - z2.conj()) / (z1 - z2.conj())).ln();
    Ok(a * first + b * second)
}

/// `ω^t = dφ^t`, differentiated analytically.
pub fn propagator_omega(
    t: f64,
    z1: Complex64,
    z2: Complex64,
) -> Result<PropagatorEval, ConfintError> {
    check_points(t, z1, z2)?;
    let (a, b) = coefficients(t);
    let d = z1 - z2;
    let m = z1 - z2.conj();
    Ok(PropagatorEval {
        t,
        dz1: a / d - b / m,
        dzbar1: -a / m.conj() + b / d.conj(),
        dz2: -a / d + a / m.conj(),
        dzbar2: -b / d.conj() + b / m,
    })
}

/// Coefficients of the expansion of `ω^t(i, i + ρe^{iφ})` near the diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalFit {
    /// Coefficient of `dρ/ρ`.
    pub radial: Complex64,
    /// Coefficient of `dφ`.
    pub angular: Complex64,
    /// Fitted first-order drift of the radial coefficient in `ρ`.
    pub slope: Complex64,
    /// Largest deviation of the samples from the linear fit.
    pub residual: f64,
}

/// Angular averages of `ρ·ω(∂_ρ)` and `ω(∂_φ)` on the circle of radius `ρ`
/// around `z1 = i`, by the trapezoidal rule (exact up to rounding for the
/// trigonometric polynomials and rapidly decaying Fourier tails involved).
fn circle_averages(t: f64, rho: f64) -> Result<(Complex64, Complex64), ConfintError> {
    const SAMPLES: usize = 256;
    let z1 = I;
    let mut radial = Complex64::new(0.0, 0.0);
    let mut angular = Complex64::new(0.0, 0.0);
    for k in 0..SAMPLES {
        let phi = 2.0 * PI * k as f64 / SAMPLES as f64;
        let e = Complex64::from_polar(1.0, phi);
        let om = propagator_omega(t, z1, z1 + rho * e)?;
        let zero = Complex64::new(0.0, 0.0);
        radial += om.pair(zero, rho * e);
        angular += om.pair(zero, I * rho * e);
    }
    Ok((radial / SAMPLES as f64, angular / SAMPLES as f64))
}

/// Fits the `dρ/ρ` and `dφ` coefficients of `ω^t(i, i + ρe^{iφ})` from
/// circle averages at the given radii, with a linear correction in `ρ`.
pub fn propagator_diagonal_expansion(t: f64, rhos: &[f64]) -> Result<DiagonalFit, ConfintError> {
    if rhos.len() < 2 {
        return Err(ConfintError::Parameter("need at least two radii".into()));
    }
    if rhos.windows(2).any(|w| !(w[1] < w[0])) || rhos.iter().any(|&r| !(r > 0.0 && r < 1.0)) {
        return Err(ConfintError::Parameter(
            "radii must decrease within (0, 1)".into(),
        ));
    }
    let mut samples = Vec::with_capacity(rhos.len());
    let mut angular = Complex64::new(0.0, 0.0);
    for &rho in rhos {
        let (r, a) = circle_averages(t, rho)?;
        samples.push((rho, r));
        angular += a;
    }
    angular /= rhos.len() as f64;

    let n = rhos.len() as f64;
    let mean_x = rhos.iter().sum::<f64>() / n;
    let mean_y = samples.iter().map(|&(_, y)| y).sum::<Complex64>() / n;
    let sxx: f64 = rhos.iter().map(|x| (x - mean_x).powi(2)).sum();
    let sxy: Complex64 = samples
        .iter()
        .map(|&(x, y)| (y - mean_y) * (x - mean_x))
        .sum();
    let slope = if sxx > 0.0 {
        sxy / sxx
    } else {
        Complex64::new(0.0, 0.0)
    };
    let radial = mean_y - slope * mean_x;
    let residual = samples
        .iter()
        .map(|&(x, y)| (y - radial - slope * x).norm())
        .fold(0.0, f64::max);
    if residual > 1e-8 {
        return Err(ConfintError::Fit(residual));
    }
    Ok(DiagonalFit {
        radial,
        angular,
        slope,
        residual,
    })
}
