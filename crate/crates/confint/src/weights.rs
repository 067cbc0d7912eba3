use std::f64::consts::PI;

use graphcx::Graph;
use nalgebra::{DMatrix, Matrix3};
use scalars::Complex64;
use serde_json::{json, Value};

use crate::dilog::f_unchecked;
use crate::quad::{integrate_plane, Region};
use crate::{ConfintError, QuadratureSpec, WeightResult};

const I: Complex64 = Complex64::new(0.0, 1.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Number of equal contributions to the tetrahedron weight.
pub const TETRA_SYMMETRY_FACTOR: u32 = 5;

/// Factor turning one type-I integral into its contribution to the
/// tetrahedron weight at `t = 1/2`: the normalizations `1/πi` and
/// `(1/2πi)^4` of the form, combined with the fiber integral of the log
/// factor against two angle forms (`−(π³/2) F`), give `1/(8i)` for the
/// standard orientation of the coordinates `(x3, y3, x4, y4)`.
pub fn tetra_prefactor() -> Complex64 {
    ONE / (8.0 * I)
}

/// `F(w) dφ(w) dψ(w)` with `dφ dψ = −d arg(w) d arg(w − 1) / 4π²`, as a
/// density against `dx dy`.
fn type1_density(w: Complex64) -> [Complex64; 1] {
    let y = w.im;
    if y == 0.0 {
        return [ZERO];
    }
    let form = -y / (4.0 * PI * PI * w.norm_sqr() * (w - ONE).norm_sqr());
    [Complex64::new(f_unchecked(w) * form, 0.0)]
}

fn type1_region(region: Region, spec: &QuadratureSpec) -> Result<WeightResult, ConfintError> {
    let r = integrate_plane(type1_density, &[ZERO, ONE], region, spec)?;
    Ok(WeightResult {
        value: r.values[0],
        error: r.error,
        nodes: r.nodes,
        t: None,
    })
}

/// `∫_{ℂ∖{0,1}} F(w) dφ(w) dψ(w)` by adaptive quadrature in charts at `0`,
/// `1` and infinity.
pub fn tetra_type1_integral(spec: &QuadratureSpec) -> Result<WeightResult, ConfintError> {
    type1_region(Region::Plane, spec)
}

/// The same integral restricted to the upper and to the lower half-plane.
pub fn tetra_type1_halves(
    spec: &QuadratureSpec,
) -> Result<(WeightResult, WeightResult), ConfintError> {
    Ok((
        type1_region(Region::Upper, spec)?,
        type1_region(Region::Lower, spec)?,
    ))
}

/// Tensor Gauss–Legendre sum of the type-I density over the unit-disk
/// region `{|w| < 1, Re w < 1/2}` in polar coordinates around `0`, using
/// `n` points per panel. The region is symmetric under conjugation, which
/// leaves the density unchanged, so only `θ ∈ [θ₀(r), π]` is summed.
fn reduced_sum(n: usize) -> (f64, usize) {
    let rule: Vec<(f64, f64)> = {
        let n = std::num::NonZeroUsize::new(n).expect("rule order is positive");
        gauss_quad::GaussLegendre::new(n)
            .iter()
            .map(|(x, w)| (*x, *w))
            .collect()
    };
    let map = |a: f64, b: f64| {
        rule.iter()
            .map(move |&(x, w)| (0.5 * (a + b) + 0.5 * (b - a) * x, 0.5 * (b - a) * w))
    };
    let mut nodes = 0;
    let mut angular = |r: f64| -> f64 {
        let theta0 = if 2.0 * r <= 1.0 {
            0.0
        } else {
            (0.5 / r).acos()
        };
        let mut s = 0.0;
        for p in 0..8 {
            let a = theta0 + (PI - theta0) * p as f64 / 8.0;
            let b = theta0 + (PI - theta0) * (p + 1) as f64 / 8.0;
            for (th, w) in map(a, b) {
                s += w * type1_density(Complex64::from_polar(r, th))[0].re * r;
                nodes += 1;
            }
        }
        2.0 * s
    };
    let mut total = 0.0;
    // `r ∈ (0, 1/2]` on geometrically graded panels towards the `r log r`
    // behaviour at the origin.
    for k in 0..48 {
        let (a, b) = (0.5 * 0.5f64.powi(k + 1), 0.5 * 0.5f64.powi(k));
        for (r, w) in map(a, b) {
            total += w * angular(r);
        }
    }
    // `r = 1/2 + u²` on `[1/2, 1]` removes the square-root kink of `θ₀`.
    let u_max = 0.5f64.sqrt();
    for p in 0..4 {
        let (a, b) = (u_max * p as f64 / 4.0, u_max * (p + 1) as f64 / 4.0);
        for (u, w) in map(a, b) {
            total += w * 2.0 * u * angular(0.5 + u * u);
        }
    }
    (total, nodes)
}

/// `∫ F(w) dφ(w) dψ(w)` over `{|w| < 1, Re w < 1/2}`, one of the three
/// regions of `ℂ∖{0,1}` permuted by `w ↦ 1 − w` and `w ↦ 1/w`. The
/// integrand is invariant under both maps, so this is one third of
/// [`tetra_type1_integral`]. The error is the difference between two rule
/// orders.
pub fn tetra_type1_fundamental_domain(spec: &QuadratureSpec) -> Result<WeightResult, ConfintError> {
    if !(spec.tol > 0.0) {
        return Err(ConfintError::Parameter(format!(
            "tolerance {} is not positive",
            spec.tol
        )));
    }
    let (low, n_low) = reduced_sum(16);
    let (high, n_high) = reduced_sum(24);
    let error = (high - low).abs();
    let nodes = n_low + n_high;
    if error > spec.tol * high.abs() + spec.abs_tol {
        return Err(ConfintError::Tolerance {
            value: format!("{high:?}"),
            error,
            tol: spec.tol,
            nodes,
        });
    }
    Ok(WeightResult {
        value: Complex64::new(high, 0.0),
        error,
        nodes,
        t: None,
    })
}

/// `(4t(1 − t))^{|V|−2}` for the tetrahedron, `|V| = 4`.
pub fn tetra_scaling(t: f64) -> f64 {
    (4.0 * t * (1.0 - t)).powi(2)
}

/// Assembles the tetrahedron weight from a type-I integral.
pub fn tetra_weight_from(type1: &WeightResult, t: f64) -> WeightResult {
    let factor = tetra_scaling(t) * TETRA_SYMMETRY_FACTOR as f64;
    let pre = tetra_prefactor();
    WeightResult {
        value: type1.value * pre * factor,
        error: type1.error * pre.norm() * factor,
        nodes: type1.nodes,
        t: Some(t),
    }
}

/// The tetrahedron weight `c^t`.
pub fn tetra_weight(t: f64, spec: &QuadratureSpec) -> Result<WeightResult, ConfintError> {
    if !t.is_finite() {
        return Err(ConfintError::Parameter(format!("t = {t} is not finite")));
    }
    Ok(tetra_weight_from(&tetra_type1_integral(spec)?, t))
}

/// Coefficients of the one-internal-vertex connection form `A dz + B dz̄`.
#[derive(Clone, Debug, PartialEq)]
pub struct AtCoefficient {
    pub t: f64,
    pub z: Complex64,
    pub dz: Complex64,
    pub dzbar: Complex64,
    pub error: f64,
    pub nodes: usize,
}

impl AtCoefficient {
    pub fn to_json(&self) -> Value {
        let c = |z: Complex64| json!([z.re, z.im]);
        json!({
            "t": self.t,
            "z": c(self.z),
            "dz": c(self.dz),
            "dzbar": c(self.dzbar),
            "error": self.error,
            "nodes": self.nodes,
        })
    }
}

type Covector = [Complex64; 4];

/// `(1/2πi)((1−t) dlog(a) + t dlog(ā))` for `a` with differential `da`,
/// as a covector on `(x_z, y_z, x_w, y_w)`.
fn theta_hat(t: f64, a: Complex64, da: Covector) -> Covector {
    let c = ONE / Complex64::new(0.0, 2.0 * PI);
    let hol = c * (1.0 - t) / a;
    let anti = c * t / a.conj();
    let mut out = [ZERO; 4];
    for k in 0..4 {
        out[k] = hol * da[k] + anti * da[k].conj();
    }
    out
}

fn at_density(t: f64, z: Complex64, w: Complex64) -> [Complex64; 2] {
    let dw: Covector = [ZERO, ZERO, ONE, I];
    let dzw: Covector = [ONE, I, -ONE, -I];
    let a1 = theta_hat(t, z - w, dzw);
    let a2 = theta_hat(t, w, dw);
    let a3 = theta_hat(t, w - ONE, dw);
    // Evaluate the 3-form on (∂_base, ∂x_w, ∂y_w) with the base direction first.
    let eval = |base: usize| -> Complex64 {
        let row = |a: &Covector| [a[base], a[2], a[3]];
        let (r1, r2, r3) = (row(&a1), row(&a2), row(&a3));
        Matrix3::new(
            r1[0], r1[1], r1[2], r2[0], r2[1], r2[2], r3[0], r3[1], r3[2],
        )
        .determinant()
    };
    [eval(0), eval(1)]
}

/// Fiber integral over `w ∈ ℂ∖{0, 1, z}` of
/// `θ̂^t(z,w) θ̂^t(w,0) θ̂^t(w,1)`, with
/// `θ̂^t(a,b) = (1/2πi)((1−t) dlog(a−b) + t dlog(ā−b̄))`, returned as the
/// coefficients of `dz` and `dz̄`.
pub fn at_one_vertex_coefficient(
    t: f64,
    z: Complex64,
    spec: &QuadratureSpec,
) -> Result<AtCoefficient, ConfintError> {
    if !t.is_finite() || !z.is_finite() {
        return Err(ConfintError::Parameter(format!(
            "t = {t}, z = {z} must be finite"
        )));
    }
    if z == ZERO || z == ONE {
        return Err(ConfintError::Singular(format!("{z}")));
    }
    let r = integrate_plane(
        |w| at_density(t, z, w),
        &[ZERO, ONE, z],
        Region::Plane,
        spec,
    )?;
    let [px, py] = r.values;
    Ok(AtCoefficient {
        t,
        z,
        dz: (px - I * py) / 2.0,
        dzbar: (px + I * py) / 2.0,
        error: r.error,
        nodes: r.nodes,
    })
}

/// Sign of the permutation taking `0..len` to `[first, second, rest…]`.
fn front_pair_sign(first: usize, second: usize) -> f64 {
    // Moving `first` to the front passes `first` elements; `second` then
    // passes the elements before it other than `first`.
    let passes = first + second - usize::from(first < second);
    if passes % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Top-degree coefficient of `β̃^t_Γ` at a configuration, with vertex 1 at
/// `0`, vertex 2 at `1` and `points[k]` the position of vertex `k + 3`.
///
/// The coefficient is taken against `dx3 dy3 dx4 dy4 …`.
pub fn beta_tilde_pointwise(
    graph: &Graph,
    t: f64,
    points: &[Complex64],
) -> Result<Complex64, ConfintError> {
    let n = graph.vertices();
    let edges = graph.edges();
    if n < 2 || points.len() + 2 != n {
        return Err(ConfintError::Parameter(format!(
            "need {} free points for {n} vertices, got {}",
            n.saturating_sub(2),
            points.len()
        )));
    }
    if edges.len() + 4 != 2 * n + 2 {
        return Err(ConfintError::Degree {
            vertices: n,
            edges: edges.len(),
        });
    }
    if !t.is_finite() {
        return Err(ConfintError::Parameter(format!("t = {t} is not finite")));
    }
    let mut pos = vec![ZERO, ONE];
    pos.extend_from_slice(points);
    for i in 0..n {
        for j in 0..i {
            if pos[i] == pos[j] {
                return Err(ConfintError::Coincident(format!(
                    "vertices {} and {} at {}",
                    j + 1,
                    i + 1,
                    pos[i]
                )));
            }
        }
    }
    let dim = 2 * (n - 2);
    let differential = |v: usize| -> Vec<Complex64> {
        let mut d = vec![ZERO; dim];
        if v >= 2 {
            d[2 * (v - 2)] = ONE;
            d[2 * (v - 2) + 1] = I;
        }
        d
    };
    let c = ONE / Complex64::new(0.0, 2.0 * PI);
    let forms: Vec<Vec<Complex64>> = edges
        .iter()
        .map(|&(s, e)| {
            let a = pos[s] - pos[e];
            let (ds, de) = (differential(s), differential(e));
            let hol = c * (1.0 - t) / a;
            let anti = c * t / a.conj();
            (0..dim)
                .map(|k| {
                    let da = ds[k] - de[k];
                    hol * da + anti * da.conj()
                })
                .collect()
        })
        .collect();

    let mut total = ZERO;
    for (ep, &(s, e)) in edges.iter().enumerate() {
        let log = (pos[s] - pos[e]).norm().ln() / Complex64::new(0.0, PI);
        for drop in 0..edges.len() {
            if drop == ep {
                continue;
            }
            let rows: Vec<&Vec<Complex64>> = (0..edges.len())
                .filter(|&k| k != ep && k != drop)
                .map(|k| &forms[k])
                .collect();
            let det = if dim == 0 {
                ONE
            } else {
                DMatrix::from_fn(dim, dim, |i, j| rows[i][j]).determinant()
            };
            total += det * log * front_pair_sign(ep, drop);
        }
    }
    Ok(total)
}
