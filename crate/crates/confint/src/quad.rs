use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;
use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;
use scalars::Complex64;
use serde_json::{json, Value};

use crate::ConfintError;

/// Settings for the adaptive plane quadrature.
///
/// The plane is covered by a smooth partition of unity subordinate to the
/// singular points; each piece is integrated in a log-polar chart
/// `w = p + e^s e^{iθ}` with `s ∈ [-radial_range, radial_range]`, which
/// resolves both the point `p` and the point at infinity.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureSpec {
    /// Relative target: stop when the error estimate is below
    /// `tol · |value|`.
    pub tol: f64,
    /// Absolute floor on the target, for integrals that vanish.
    pub abs_tol: f64,
    /// Budget on integrand evaluations.
    pub max_nodes: usize,
    /// Gauss–Legendre points per direction in one cell.
    pub rule_order: usize,
    pub radial_range: f64,
    /// Initial subdivision of each chart in `s` and in `θ`.
    pub initial_cells: (usize, usize),
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            tol: 1e-8,
            abs_tol: 1e-13,
            max_nodes: 40_000_000,
            rule_order: 10,
            radial_range: 36.0,
            initial_cells: (24, 8),
        }
    }
}

impl QuadratureSpec {
    pub fn with_tol(tol: f64) -> Self {
        QuadratureSpec {
            tol,
            ..Self::default()
        }
    }

    pub fn with_budget(mut self, max_nodes: usize) -> Self {
        self.max_nodes = max_nodes;
        self
    }

    fn validate(&self) -> Result<(), ConfintError> {
        let bad = |m: &str| Err(ConfintError::Parameter(m.into()));
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return bad("tolerance must be positive");
        }
        if !(self.abs_tol >= 0.0 && self.abs_tol.is_finite()) {
            return bad("absolute tolerance must be non-negative");
        }
        if self.rule_order < 4 {
            return bad("rule order must be at least 4");
        }
        if !(self.radial_range > 0.0 && self.radial_range < 200.0) {
            return bad("radial range must lie in (0, 200)");
        }
        if self.initial_cells.0 == 0 || self.initial_cells.1 == 0 {
            return bad("initial subdivision must be nonempty");
        }
        Ok(())
    }
}

/// A numerically integrated weight.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightResult {
    pub value: Complex64,
    pub error: f64,
    pub nodes: usize,
    pub t: Option<f64>,
}

impl WeightResult {
    pub fn to_json(&self) -> Value {
        json!({
            "value": [self.value.re, self.value.im],
            "error": self.error,
            "nodes": self.nodes,
            "t": self.t,
        })
    }
}

/// Which part of the plane to integrate over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Region {
    Plane,
    /// `Im w > 0`; all singular points must be real.
    Upper,
    /// `Im w < 0`; all singular points must be real.
    Lower,
}

/// Result of [`integrate_plane`] for a vector-valued integrand.
#[derive(Clone, Debug, PartialEq)]
pub struct PlaneIntegral<const K: usize> {
    pub values: [Complex64; K],
    /// Sum of the cell error estimates, in the max-component norm.
    pub error: f64,
    pub nodes: usize,
}

struct Rules {
    high: Vec<(f64, f64)>,
    low: Vec<(f64, f64)>,
}

impl Rules {
    fn new(order: usize) -> Self {
        let pairs = |n: usize| -> Vec<(f64, f64)> {
            let n = NonZeroUsize::new(n).expect("rule order is positive");
            GaussLegendre::new(n)
                .iter()
                .map(|(x, w)| (*x, *w))
                .collect()
        };
        Rules {
            high: pairs(order),
            low: pairs(order * 2 / 3),
        }
    }

    fn nodes_per_cell(&self) -> usize {
        self.high.len().pow(2) + self.low.len().pow(2)
    }
}

struct Chart<'a> {
    center: Complex64,
    others: Vec<Complex64>,
    all: &'a [Complex64],
}

impl Chart<'_> {
    /// Partition-of-unity weight of this chart at `w`:
    /// `∏_{q≠p}|w−q|² / Σ_{p'} ∏_{q≠p'}|w−q|²`.
    fn weight(&self, w: Complex64) -> f64 {
        if self.all.len() == 1 {
            return 1.0;
        }
        let prod_except = |p: usize| -> f64 {
            self.all
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != p)
                .map(|(_, q)| (w - q).norm_sqr())
                .product()
        };
        let num: f64 = self.others.iter().map(|q| (w - q).norm_sqr()).product();
        let den: f64 = (0..self.all.len()).map(prod_except).sum();
        num / den
    }
}

#[derive(Clone, Debug)]
struct Cell<const K: usize> {
    id: u64,
    chart: usize,
    s: (f64, f64),
    theta: (f64, f64),
    values: [Complex64; K],
    err: f64,
}

impl<const K: usize> PartialEq for Cell<K> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl<const K: usize> Eq for Cell<K> {}
impl<const K: usize> PartialOrd for Cell<K> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<const K: usize> Ord for Cell<K> {
    /// Largest error first; ties broken by creation order.
    fn cmp(&self, other: &Self) -> Ordering {
        self.err
            .total_cmp(&other.err)
            .then_with(|| other.id.cmp(&self.id))
    }
}

fn max_norm<const K: usize>(v: &[Complex64; K]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Integrates `f(w) dx dy` over the plane (or a half-plane) with integrable
/// singularities at `points`.
///
/// Refinement is deterministic: cells are split in order of decreasing error
/// estimate with ties broken by creation order, and the final value is
/// summed in creation order, so repeated calls agree bit for bit.
pub fn integrate_plane<const K: usize, F>(
    f: F,
    points: &[Complex64],
    region: Region,
    spec: &QuadratureSpec,
) -> Result<PlaneIntegral<K>, ConfintError>
where
    F: Fn(Complex64) -> [Complex64; K],
{
    spec.validate()?;
    if points.is_empty() {
        return Err(ConfintError::Parameter(
            "at least one chart center is required".into(),
        ));
    }
    for (i, p) in points.iter().enumerate() {
        if points[..i].contains(p) {
            return Err(ConfintError::Coincident(format!(
                "chart center {p} is repeated"
            )));
        }
    }
    let theta_range = match region {
        Region::Plane => (0.0, 2.0 * PI),
        Region::Upper | Region::Lower => {
            if points.iter().any(|p| p.im != 0.0) {
                return Err(ConfintError::Parameter(
                    "half-plane integration needs real chart centers".into(),
                ));
            }
            if region == Region::Upper {
                (0.0, PI)
            } else {
                (PI, 2.0 * PI)
            }
        }
    };
    let charts: Vec<Chart> = points
        .iter()
        .enumerate()
        .map(|(i, &c)| Chart {
            center: c,
            others: points
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &q)| q)
                .collect(),
            all: points,
        })
        .collect();
    let rules = Rules::new(spec.rule_order);
    let mut bad_point: Option<Complex64> = None;

    let eval_rule = |chart: &Chart,
                     rule: &[(f64, f64)],
                     s: (f64, f64),
                     th: (f64, f64),
                     bad: &mut Option<Complex64>|
     -> [Complex64; K] {
        let hs = 0.5 * (s.1 - s.0);
        let ht = 0.5 * (th.1 - th.0);
        let mut acc = [Complex64::new(0.0, 0.0); K];
        for &(xs, ws) in rule {
            let sv = s.0 + hs * (xs + 1.0);
            let r = sv.exp();
            let jac = r * r;
            for &(xt, wt) in rule {
                let tv = th.0 + ht * (xt + 1.0);
                let w = chart.center + Complex64::from_polar(r, tv);
                let chi = chart.weight(w);
                if chi == 0.0 {
                    continue;
                }
                let vals = f(w);
                let scale = ws * wt * hs * ht * jac * chi;
                for (a, v) in acc.iter_mut().zip(vals.iter()) {
                    if !v.is_finite() {
                        bad.get_or_insert(w);
                        continue;
                    }
                    *a += v * scale;
                }
            }
        }
        acc
    };

    let mut nodes = 0usize;
    let mut next_id = 0u64;
    let mut make_cell = |chart: usize,
                         s: (f64, f64),
                         theta: (f64, f64),
                         nodes: &mut usize,
                         bad: &mut Option<Complex64>|
     -> Cell<K> {
        let hi = eval_rule(&charts[chart], &rules.high, s, theta, bad);
        let lo = eval_rule(&charts[chart], &rules.low, s, theta, bad);
        *nodes += rules.nodes_per_cell();
        let mut diff = [Complex64::new(0.0, 0.0); K];
        for k in 0..K {
            diff[k] = hi[k] - lo[k];
        }
        let id = next_id;
        next_id += 1;
        Cell {
            id,
            chart,
            s,
            theta,
            values: hi,
            err: max_norm(&diff),
        }
    };

    let mut heap: BinaryHeap<Cell<K>> = BinaryHeap::new();
    let (ns, nt) = spec.initial_cells;
    let r = spec.radial_range;
    for chart in 0..charts.len() {
        for i in 0..ns {
            let s = (
                -r + 2.0 * r * i as f64 / ns as f64,
                -r + 2.0 * r * (i + 1) as f64 / ns as f64,
            );
            for j in 0..nt {
                let span = theta_range.1 - theta_range.0;
                let th = (
                    theta_range.0 + span * j as f64 / nt as f64,
                    theta_range.0 + span * (j + 1) as f64 / nt as f64,
                );
                heap.push(make_cell(chart, s, th, &mut nodes, &mut bad_point));
            }
        }
    }

    let totals = |heap: &BinaryHeap<Cell<K>>| -> ([Complex64; K], f64) {
        let mut cells: Vec<&Cell<K>> = heap.iter().collect();
        cells.sort_by_key(|c| c.id);
        let mut v = [Complex64::new(0.0, 0.0); K];
        let mut e = 0.0;
        for c in cells {
            for k in 0..K {
                v[k] += c.values[k];
            }
            e += c.err;
        }
        (v, e)
    };

    let (mut value, mut error) = totals(&heap);
    let mut since_resum = 0usize;
    loop {
        if let Some(w) = bad_point {
            return Err(ConfintError::NonFinite(format!("{w}")));
        }
        let target = (spec.tol * max_norm(&value)).max(spec.abs_tol);
        if error <= target {
            break;
        }
        if nodes + 4 * rules.nodes_per_cell() > spec.max_nodes {
            let (v, e) = totals(&heap);
            return Err(ConfintError::Tolerance {
                value: format!("{:?}", v),
                error: e,
                tol: spec.tol,
                nodes,
            });
        }
        let cell = heap.pop().expect("heap is nonempty");
        let sm = 0.5 * (cell.s.0 + cell.s.1);
        let tm = 0.5 * (cell.theta.0 + cell.theta.1);
        for k in 0..K {
            value[k] -= cell.values[k];
        }
        error -= cell.err;
        for s in [(cell.s.0, sm), (sm, cell.s.1)] {
            for th in [(cell.theta.0, tm), (tm, cell.theta.1)] {
                let child = make_cell(cell.chart, s, th, &mut nodes, &mut bad_point);
                for k in 0..K {
                    value[k] += child.values[k];
                }
                error += child.err;
                heap.push(child);
            }
        }
        since_resum += 1;
        if since_resum == 4096 {
            (value, error) = totals(&heap);
            since_resum = 0;
        }
    }
    let (values, error) = totals(&heap);
    Ok(PlaneIntegral {
        values,
        error,
        nodes,
    })
}
