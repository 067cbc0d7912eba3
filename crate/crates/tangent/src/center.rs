use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use ncalg::{lyndon_table, LieSeries};
use scalars::{Rational, Scalar};

use crate::error::TangentError;
use crate::tder::{eval_bracketing, TDerElem};

/// Decomposition of an element of the image of `t_3` in `tder_3` as
/// `central · c + lie(t_12, t_23)` with `c = t_12 + t_13 + t_23`.
#[derive(Clone, Debug, PartialEq)]
pub struct CenterSplit<S> {
    pub central: S,
    /// Lie series in two letters `a, b`, evaluated at `a = t_12, b = t_23`.
    pub lie: LieSeries<S>,
}

/// Rational left inverse of the evaluation map in one degree.
struct DegreeSolver {
    /// Rows of the evaluation matrix (flattened component coefficients).
    rows: usize,
    /// Columns: the Lyndon basis of `Lie(a, b)` in this degree, plus `c` in
    /// degree 1.
    matrix: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
    inverse: Vec<Vec<Rational>>,
}

fn solver(d: usize) -> Arc<DegreeSolver> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<DegreeSolver>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(s) = cache.lock().expect("solver cache poisoned").get(&d) {
        return s.clone();
    }
    let s = Arc::new(build_solver(d));
    cache
        .lock()
        .expect("solver cache poisoned")
        .entry(d)
        .or_insert(s)
        .clone()
}

fn degree_vector<S: Scalar>(u: &TDerElem<S>, d: usize) -> Vec<S> {
    u.components_nc()
        .iter()
        .flat_map(|c| c.degree_slice(d).iter().cloned())
        .collect()
}

fn build_solver(d: usize) -> DegreeSolver {
    let t12 = TDerElem::<Rational>::tk_generator(1, 2, 3, d).expect("valid");
    let t23 = TDerElem::<Rational>::tk_generator(2, 3, 3, d).expect("valid");
    let images = [t12, t23];
    let table = lyndon_table(2, d);
    let mut memo = HashMap::new();
    let mut cols: Vec<Vec<Rational>> = table
        .brackets
        .iter()
        .map(|b| degree_vector(&eval_bracketing(b, &images, &mut memo).1, d))
        .collect();
    if d == 1 {
        cols.push(degree_vector(
            &TDerElem::<Rational>::central_element(3, 1),
            1,
        ));
    }
    let rows = if cols.is_empty() { 0 } else { cols[0].len() };
    let ncols = cols.len();
    let matrix: Vec<Vec<Rational>> = (0..rows)
        .map(|r| (0..ncols).map(|c| cols[c][r].clone()).collect())
        .collect();

    // greedily pick rows that raise the rank, keeping an echelon basis
    let mut basis: Vec<(usize, Vec<Rational>)> = Vec::new();
    let mut pivots = Vec::new();
    for (r, row) in matrix.iter().enumerate() {
        if pivots.len() == ncols {
            break;
        }
        let mut v = row.clone();
        for (p, b) in &basis {
            if !v[*p].is_zero() {
                let f = v[*p].clone() / b[*p].clone();
                for (x, y) in v.iter_mut().zip(b) {
                    *x -= f.clone() * y.clone();
                }
            }
        }
        if let Some(p) = v.iter().position(|x| !x.is_zero()) {
            basis.push((p, v));
            pivots.push(r);
        }
    }
    let inverse = invert(pivots.iter().map(|&r| matrix[r].clone()).collect());
    DegreeSolver {
        rows,
        matrix,
        pivots,
        inverse,
    }
}

/// Gauss–Jordan inverse of a square rational matrix (possibly 0×0); rows
/// beyond the rank are left zero.
fn invert(mut a: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    let n = a.len();
    let m = if n == 0 { 0 } else { a[0].len() };
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        <Rational as Scalar>::one()
                    } else {
                        <Rational as Scalar>::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut row = 0;
    for col in 0..m.min(n) {
        let Some(p) = (row..n).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        inv.swap(row, p);
        let f = <Rational as Scalar>::one() / a[row][col].clone();
        a[row].iter_mut().for_each(|x| *x *= f.clone());
        inv[row].iter_mut().for_each(|x| *x *= f.clone());
        for r in 0..n {
            if r != row && !a[r][col].is_zero() {
                let g = a[r][col].clone();
                for c in 0..m {
                    let v = a[row][c].clone();
                    a[r][c] -= g.clone() * v;
                }
                for c in 0..n {
                    let v = inv[row][c].clone();
                    inv[r][c] -= g.clone() * v;
                }
            }
        }
        row += 1;
    }
    inv
}

/// Writes `u` as `central · c + ℓ(t_12, t_23)`.
///
/// Each degree is solved exactly over the rationals and the residual
/// `u − (central · c + ℓ(t_12, t_23))` is checked against `tol`; a larger
/// residual means `u` is not in the image of `t_3`.
pub fn center_decompose_t3<S: Scalar>(
    u: &TDerElem<S>,
    tol: f64,
) -> Result<CenterSplit<S>, TangentError> {
    if u.arity() != 3 {
        return Err(TangentError::Arity(3, u.arity()));
    }
    let n = u.order();
    let mut lie = LieSeries::zero(2, n);
    let mut central = S::zero();
    for d in 1..=n {
        let s = solver(d);
        let rhs = degree_vector(u, d);
        debug_assert_eq!(rhs.len(), s.rows);
        let ncols = s.matrix.first().map_or(0, |r| r.len());
        let x: Vec<S> = (0..ncols)
            .map(|j| {
                let mut acc = S::zero();
                for (t, &r) in s.pivots.iter().enumerate() {
                    if !s.inverse[j][t].is_zero() && !rhs[r].is_zero() {
                        acc += rhs[r].scale_q(&s.inverse[j][t]);
                    }
                }
                acc
            })
            .collect();
        let mut residual: f64 = 0.0;
        for (r, row) in s.matrix.iter().enumerate() {
            let mut v = rhs[r].clone();
            for (c, m) in row.iter().enumerate() {
                if !m.is_zero() {
                    v -= x[c].scale_q(m);
                }
            }
            residual = residual.max(v.mag());
        }
        if residual > tol {
            return Err(TangentError::NotInT3 {
                degree: d,
                residual,
            });
        }
        let nl = lyndon_table(2, d).len();
        lie.degree_coords_mut(d).clone_from_slice(&x[..nl]);
        if d == 1 {
            central = x[nl].clone();
        }
    }
    Ok(CenterSplit { central, lie })
}
