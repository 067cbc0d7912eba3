use std::collections::HashMap;

use scalars::{q, Rational, Scalar};

use crate::graph::{builtin, Graph};
use crate::lincomb::GraphLinComb;

type Raw = HashMap<Graph, Rational>;

fn push(raw: &mut Raw, g: Graph, c: Rational) {
    *raw.entry(g).or_insert_with(Rational::zero) += c;
}

fn koszul(e1: usize, e2: usize) -> Rational {
    if e1 % 2 == 1 && e2 % 2 == 1 {
        q(-1, 1)
    } else {
        q(1, 1)
    }
}

/// Half-edges at `v`: `(edge index, end)` with end 0 or 1.
fn half_edges(g: &Graph, v: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, &(a, b)) in g.edges().iter().enumerate() {
        if a == v {
            out.push((i, 0));
        }
        if b == v {
            out.push((i, 1));
        }
    }
    out
}

/// Calls `f` on every map from `count` slots to `0..targets`.
fn for_each_assignment(count: usize, targets: usize, f: &mut dyn FnMut(&[usize])) {
    let mut a = vec![0usize; count];
    loop {
        f(&a);
        let mut i = 0;
        loop {
            if i == count {
                return;
            }
            a[i] += 1;
            if a[i] < targets {
                break;
            }
            a[i] = 0;
            i += 1;
        }
    }
}

/// Pre-Lie insertion `a • b` of graphs without external vertices: replace
/// each vertex `v` of `a` by `b`, reconnecting the half-edges at `v` to the
/// vertices of `b` in all ways; the edges of `a` come first.
pub fn pre_lie_graph(a: &Graph, b: &Graph) -> GraphLinComb {
    let mut raw = Raw::new();
    let na = a.vertices();
    let nb = b.vertices();
    let n = na - 1 + nb;
    for v in 0..na {
        let relabel = |x: usize| {
            if x <= v {
                x.min(na.saturating_sub(2))
            } else {
                x - 1
            }
        };
        let offset = na - 1;
        let halves = half_edges(a, v);
        for_each_assignment(halves.len(), nb, &mut |f| {
            let mut edges: Vec<(usize, usize)> = a
                .edges()
                .iter()
                .map(|&(x, y)| (relabel(x), relabel(y)))
                .collect();
            for (k, &(i, end)) in halves.iter().enumerate() {
                let e = &mut edges[i];
                if end == 0 {
                    e.0 = offset + f[k];
                } else {
                    e.1 = offset + f[k];
                }
            }
            edges.extend(b.edges().iter().map(|&(x, y)| (offset + x, offset + y)));
            push(&mut raw, Graph::raw(0, n, edges), q(1, 1));
        });
    }
    GraphLinComb::from_raw(raw)
}

pub fn pre_lie(a: &GraphLinComb, b: &GraphLinComb) -> GraphLinComb {
    let mut out = GraphLinComb::zero();
    for (ga, ca) in a.terms() {
        for (gb, cb) in b.terms() {
            out = out.add(&pre_lie_graph(ga, gb).scale(&(ca * cb)));
        }
    }
    out
}

/// `[a, b] = a • b − (−1)^{|a||b|} b • a`, graded by edge parity.
pub fn gc_bracket(a: &GraphLinComb, b: &GraphLinComb) -> GraphLinComb {
    let mut out = GraphLinComb::zero();
    for (ga, ca) in a.terms() {
        for (gb, cb) in b.terms() {
            let c = ca * cb;
            let ab = pre_lie_graph(ga, gb);
            let ba = pre_lie_graph(gb, ga).scale(&koszul(ga.edge_count(), gb.edge_count()));
            out = out.add(&ab.sub(&ba).scale(&c));
        }
    }
    out
}

/// `δ = ½ [Γ_edge, ·]`: splitting of vertices.
pub fn differential(a: &GraphLinComb) -> GraphLinComb {
    let edge = GraphLinComb::from_graph(&builtin("edge").expect("built-in"));
    gc_bracket(&edge, a).scale(&q(1, 2))
}

/// Bracket with the tadpole graph in the ambient complex that allows loops.
/// On loop-free input the loop terms cancel, so the result is again
/// loop-free.
pub fn divergence(a: &GraphLinComb) -> GraphLinComb {
    let tadpole = GraphLinComb::from_graph(&builtin("tadpole").expect("built-in"));
    gc_bracket(&tadpole, a)
}

/// `ψ`: for every edge and both orientations of it, mark its ends as the
/// external vertices 1 and 2 and delete it, after moving it to the front of
/// the edge order.
pub fn psi_map(a: &GraphLinComb) -> GraphLinComb {
    let mut raw = Raw::new();
    for (g, c) in a.terms() {
        let n = g.vertices();
        for (p, &(u, w)) in g.edges().iter().enumerate() {
            if u == w {
                continue;
            }
            let sign = if p % 2 == 0 { q(1, 1) } else { q(-1, 1) };
            for (x, y) in [(u, w), (w, u)] {
                // x ↦ 0, y ↦ 1, the rest keep their order
                let mut map = vec![0usize; n];
                map[x] = 0;
                map[y] = 1;
                let mut next = 2;
                for v in 0..n {
                    if v != x && v != y {
                        map[v] = next;
                        next += 1;
                    }
                }
                let edges: Vec<(usize, usize)> = g
                    .edges()
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != p)
                    .map(|(_, &(s, t))| (map[s], map[t]))
                    .collect();
                push(&mut raw, Graph::raw(2, n, edges), c * &sign);
            }
        }
    }
    GraphLinComb::from_raw(raw)
}

/// Differential on graphs with external vertices, `½(Γ_edge • X − (−1)^{|X|} X • Γ_edge)`.
///
/// `Γ_edge • X` attaches an antenna (new internal univalent vertex, new edge
/// first) at every vertex, twice. `X • Γ_edge` splits every vertex `v` into
/// `v` and a new internal vertex joined by a new last edge, distributing the
/// half-edges at `v` in all ways; at an external vertex either end of the
/// new edge may stay external, which doubles those terms.
pub fn ext_differential(x: &GraphLinComb) -> GraphLinComb {
    let mut raw = Raw::new();
    for (g, c) in x.terms() {
        let n = g.vertices();
        let ext = g.externals();
        let e = g.edge_count();
        for u in 0..n {
            let mut edges = vec![(u, n)];
            edges.extend_from_slice(g.edges());
            push(&mut raw, Graph::raw(ext, n + 1, edges), c.clone());
        }
        let split_sign = if e % 2 == 0 { q(-1, 2) } else { q(1, 2) };
        for v in 0..n {
            let weight = if v < ext { q(2, 1) } else { q(1, 1) };
            let halves = half_edges(g, v);
            for_each_assignment(halves.len(), 2, &mut |f| {
                let mut edges = g.edges().to_vec();
                for (k, &(i, end)) in halves.iter().enumerate() {
                    if f[k] == 1 {
                        if end == 0 {
                            edges[i].0 = n;
                        } else {
                            edges[i].1 = n;
                        }
                    }
                }
                edges.push((v, n));
                push(
                    &mut raw,
                    Graph::raw(ext, n + 1, edges),
                    c * &split_sign * &weight,
                );
            });
        }
    }
    GraphLinComb::from_raw(raw)
}

/// `γ₁ ∘ Γ₀₀ − Γ₀₀ ∘ γ₁`: for every vertex `u` of `γ`, the sum over ways of
/// splitting `u` into the two external vertices, minus the two terms where
/// one external vertex receives everything.
pub fn gamma1_compositions(a: &GraphLinComb) -> GraphLinComb {
    let mut raw = Raw::new();
    for (g, c) in a.terms() {
        let n = g.vertices();
        for u in 0..n {
            let mut map = vec![0usize; n];
            let mut next = 2;
            for v in 0..n {
                if v != u {
                    map[v] = next;
                    next += 1;
                }
            }
            let halves = half_edges(g, u);
            let h = halves.len();
            for_each_assignment(h, 2, &mut |f| {
                if h > 0 && (f.iter().all(|&x| x == 0) || f.iter().all(|&x| x == 1)) {
                    return;
                }
                let mut edges: Vec<(usize, usize)> =
                    g.edges().iter().map(|&(s, t)| (map[s], map[t])).collect();
                for (k, &(i, end)) in halves.iter().enumerate() {
                    if end == 0 {
                        edges[i].0 = f[k];
                    } else {
                        edges[i].1 = f[k];
                    }
                }
                push(&mut raw, Graph::raw(2, n + 1, edges), c.clone());
            });
        }
    }
    GraphLinComb::from_raw(raw)
}

/// `δψ(γ) + ψ(δγ) + γ₁∘Γ₀₀ − Γ₀₀∘γ₁`, which vanishes identically: `ψ`
/// removes an odd edge, so it anticommutes with the differentials up to the
/// terms where the split edge is the deleted one.
pub fn psi_prop_residual(a: &GraphLinComb) -> GraphLinComb {
    ext_differential(&psi_map(a))
        .add(&psi_map(&differential(a)))
        .add(&gamma1_compositions(a))
}
