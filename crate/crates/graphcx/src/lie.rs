use ncalg::{witt_dimension, LieSeries, NCSeries};
use scalars::{q, Rational, Scalar};
use tangent::{lie_eval, TDerElem};

use crate::error::GcError;
use crate::graph::Graph;
use crate::lincomb::GraphLinComb;
use crate::ops::{differential, psi_map};

/// Elements of `grt_1`, Lie series in `X, Y` with rational coefficients.
pub type GrtElem = LieSeries<Rational>;

/// Residuals of the three defining equations of `grt_1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GrtResiduals {
    pub anti: f64,
    pub hexa: f64,
    pub penta: f64,
}

impl GrtResiduals {
    pub fn max(&self) -> f64 {
        self.anti.max(self.hexa).max(self.penta)
    }
}

/// Parity of the permutation taking `0..len` to `seq`.
fn perm_sign(seq: &[usize]) -> i64 {
    let mut inv = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The Lie monomial of the subtree below `node`, entered through `parent`,
/// appending the visited edges in tree order.
fn subtree(
    g: &Graph,
    node: usize,
    parent: usize,
    order: usize,
    seq: &mut Vec<usize>,
) -> NCSeries<Rational> {
    if node < g.externals() {
        return NCSeries::gen(2, order, node + 1);
    }
    let children: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .enumerate()
        .filter(|&(i, &(a, b))| i != parent && (a == node || b == node))
        .map(|(i, &(a, b))| (i, if a == node { b } else { a }))
        .collect();
    let (a, va) = children[0];
    let (b, vb) = children[1];
    seq.push(a);
    let ta = subtree(g, va, a, order, seq);
    seq.push(b);
    let tb = subtree(g, vb, b, order, seq);
    ta.bracket(&tb)
}

/// Whether the internal vertices are trivalent and span a tree, with no edge
/// joining the two external vertices unless there is nothing else.
fn is_internal_tree(g: &Graph) -> bool {
    let ext = g.externals();
    let m = g.vertices() - ext;
    if m == 0 {
        return g.edges() == [(0, 1)];
    }
    let val = g.valences();
    if val[ext..].iter().any(|&v| v != 3) || g.has_loops() {
        return false;
    }
    let internal = g
        .edges()
        .iter()
        .filter(|&&(a, b)| a >= ext && b >= ext)
        .count();
    if internal != m - 1 || g.edges().iter().any(|&(a, b)| a < ext && b < ext) {
        return false;
    }
    let keep: Vec<bool> = (0..g.vertices()).map(|v| v >= ext).collect();
    g.connected_on(&keep)
}

/// `π`: keeps the graphs with two external vertices whose internal part is a
/// trivalent tree and reads each as a pair of Lie monomials. Cutting the
/// tree at an edge from external vertex `i` and orienting it away from that
/// edge gives a binary tree whose leaves are external vertices; it
/// contributes to component `i`, with the sign of the edge permutation that
/// lists the cut edge first and then each internal vertex's two outgoing
/// edges, each followed by its subtree. Terms above word length `order` are
/// dropped.
pub fn pi_project(x: &GraphLinComb, order: usize) -> TDerElem<Rational> {
    let mut u = vec![NCSeries::<Rational>::zero(2, order); 2];
    for (g, c) in x.terms() {
        if g.externals() != 2 || !is_internal_tree(g) {
            continue;
        }
        if g.vertices() - 2 + 1 > order {
            continue;
        }
        if g.vertices() == 2 {
            // the bare edge between X_1 and X_2 is t_12 = (X_2, X_1)
            u[0].add_assign_ref(&NCSeries::gen(2, order, 2).scale(c));
            u[1].add_assign_ref(&NCSeries::gen(2, order, 1).scale(c));
            continue;
        }
        for (e0, &(a, b)) in g.edges().iter().enumerate() {
            let (i, r) = match (a < 2, b < 2) {
                (true, false) => (a, b),
                (false, true) => (b, a),
                _ => continue,
            };
            let mut seq = vec![e0];
            let t = subtree(g, r, e0, order, &mut seq);
            let sign = q(perm_sign(&seq), 1);
            u[i].add_assign_ref(&t.scale(&(c * &sign)));
        }
    }
    TDerElem::from_nc_unchecked(u)
}

/// Checks that `γ` is a degree-zero cocycle all of whose graphs are
/// one-vertex irreducible.
fn check_cocycle(gamma: &GraphLinComb) -> Result<(), GcError> {
    for (g, _) in gamma.terms() {
        if g.degree() != 0 {
            return Err(GcError::Degree(g.degree()));
        }
        if !g.is_one_vertex_irreducible() {
            return Err(GcError::Reducible);
        }
    }
    let d = differential(gamma);
    if !d.is_zero() {
        return Err(GcError::NotCocycle { terms: d.len() });
    }
    Ok(())
}

/// `φ(γ) = π(ψ(γ))` read as an element of `grt_1`: the first component
/// `u_1 = ψ(−X−Y, X)` determines `ψ`, and the whole derivation must equal
/// its image `(ψ(−X−Y, X), ψ(−X−Y, Y))`.
pub fn phi_map(gamma: &GraphLinComb) -> Result<GrtElem, GcError> {
    check_cocycle(gamma)?;
    let order = gamma
        .terms()
        .map(|(g, _)| g.vertices().saturating_sub(1))
        .max()
        .unwrap_or(1)
        .max(1);
    let u = pi_project(&psi_map(gamma), order);
    let x = NCSeries::<Rational>::gen(2, order, 1);
    let y = NCSeries::<Rational>::gen(2, order, 2);
    let psi_nc = u
        .component_nc(1)
        .substitute(&[y, x.add(&NCSeries::gen(2, order, 2)).neg()])?;
    let psi = LieSeries::from_nc(&psi_nc, 0.0)?;
    let back = nu(&psi)?;
    let dist = back.distance(&u);
    if dist > 0.0 {
        return Err(GcError::NotGrt(dist));
    }
    Ok(psi)
}

/// `ψ ↦ (ψ(−X−Y, X), ψ(−X−Y, Y))`.
fn nu<S: Scalar>(psi: &LieSeries<S>) -> Result<TDerElem<S>, GcError> {
    let n = psi.order();
    let x = NCSeries::<S>::gen(2, n, 1);
    let y = NCSeries::<S>::gen(2, n, 2);
    let z = x.add(&y).neg();
    let p = psi.to_nc();
    Ok(TDerElem::from_nc_unchecked(vec![
        p.substitute(&[z.clone(), x])?,
        p.substitute(&[z, y])?,
    ]))
}

fn anti_hexa<S: Scalar>(psi: &LieSeries<S>) -> Result<(NCSeries<S>, NCSeries<S>), GcError> {
    let n = psi.order();
    let x = NCSeries::<S>::gen(2, n, 1);
    let y = NCSeries::<S>::gen(2, n, 2);
    let z = x.add(&y).neg();
    let p = psi.to_nc();
    let anti = p.add(&p.substitute(&[y.clone(), x.clone()])?);
    let hexa = p
        .add(&p.substitute(&[y.clone(), z.clone()])?)
        .add(&p.substitute(&[z, x])?);
    Ok((anti, hexa))
}

/// `ψ(t12, t23+t24) + ψ(t13+t23, t34) − ψ(t23, t34) − ψ(t12+t13, t24+t34)
/// − ψ(t12, t23)` in `tder_4`.
fn penta<S: Scalar>(psi: &LieSeries<S>) -> Result<TDerElem<S>, GcError> {
    let n = psi.order();
    let t = |i, j| TDerElem::<S>::tk_generator(i, j, 4, n);
    let (t12, t13, t23, t24, t34) = (t(1, 2)?, t(1, 3)?, t(2, 3)?, t(2, 4)?, t(3, 4)?);
    let f = |a: &TDerElem<S>, b: &TDerElem<S>| lie_eval(psi, &[a.clone(), b.clone()]);
    Ok(f(&t12, &t23.add(&t24))?
        .add(&f(&t13.add(&t23), &t34)?)
        .sub(&f(&t23, &t34)?)
        .sub(&f(&t12.add(&t13), &t24.add(&t34))?)
        .sub(&f(&t12, &t23)?))
}

/// Residuals of the antisymmetry, hexagon and pentagon equations of
/// `grt_1` for a Lie series in two letters.
pub fn grt_check<S: Scalar>(psi: &LieSeries<S>) -> Result<GrtResiduals, GcError> {
    if psi.alphabet() != 2 {
        return Err(GcError::Alphabet(psi.alphabet()));
    }
    let (anti, hexa) = anti_hexa(psi)?;
    Ok(GrtResiduals {
        anti: anti.max_abs(),
        hexa: hexa.max_abs(),
        penta: penta(psi)?.max_abs(),
    })
}

/// A basis of the homogeneous part of `grt_1` in word length `d`: the
/// rational nullspace of the three equations on the Lyndon basis.
pub fn grt_basis(d: usize) -> Result<Vec<GrtElem>, GcError> {
    let dim = witt_dimension(2, d);
    let mut columns = Vec::with_capacity(dim);
    for p in 0..dim {
        let mut e = LieSeries::<Rational>::zero(2, d);
        e.degree_coords_mut(d)[p] = q(1, 1);
        let (anti, hexa) = anti_hexa(&e)?;
        let pen = penta(&e)?;
        let mut col: Vec<Rational> = anti.degree_slice(d).to_vec();
        col.extend_from_slice(hexa.degree_slice(d));
        for c in pen.components_nc() {
            col.extend_from_slice(c.degree_slice(d));
        }
        columns.push(col);
    }
    Ok(nullspace(&columns)
        .into_iter()
        .map(|v| {
            let mut e = LieSeries::<Rational>::zero(2, d);
            e.degree_coords_mut(d).clone_from_slice(&v);
            e
        })
        .collect())
}

/// Nullspace of the matrix with the given columns, by exact row reduction.
fn nullspace(columns: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let ncols = columns.len();
    let nrows = columns.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Rational>> = (0..nrows)
        .map(|r| columns.iter().map(|c| c[r].clone()).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = q(1, 1) / m[row][col].clone();
        for x in m[row].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..nrows {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for k in 0..ncols {
                    let sub = &f * &m[row][k];
                    m[r][k] -= sub;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = q(1, 1);
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

/// `{ψ_1, ψ_2} = D_{ψ_1}(ψ_2) − D_{ψ_2}(ψ_1) + [ψ_1, ψ_2]` with
/// `D_ψ = (0, ψ)`, i.e. `X ↦ 0`, `Y ↦ [Y, ψ]`.
pub fn ihara_bracket<S: Scalar>(
    a: &LieSeries<S>,
    b: &LieSeries<S>,
) -> Result<LieSeries<S>, GcError> {
    if a.alphabet() != 2 || b.alphabet() != 2 {
        return Err(GcError::Alphabet(a.alphabet().max(b.alphabet())));
    }
    if a.order() != b.order() {
        return Err(GcError::Order(a.order(), b.order()));
    }
    let n = a.order();
    let d = |p: &LieSeries<S>| TDerElem::from_nc_unchecked(vec![NCSeries::zero(2, n), p.to_nc()]);
    let (an, bn) = (a.to_nc(), b.to_nc());
    let out = d(a)
        .apply_nc(&bn)
        .sub(&d(b).apply_nc(&an))
        .add(&an.bracket(&bn));
    Ok(LieSeries::from_nc_exact(&out))
}
