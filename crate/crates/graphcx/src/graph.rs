use serde_json::{json, Value};

use crate::error::GcError;

/// Largest vertex count accepted by canonicalization.
pub const MAX_VERTICES: usize = 10;

/// A graph with an ordered list of undirected edges.
///
/// Edges have odd degree, so reordering them multiplies by the sign of the
/// permutation, and a repeated edge makes the graph vanish. Vertices
/// `0..externals` are external: they keep their labels under
/// canonicalization. Loops (tadpoles) are allowed; they only occur in the
/// ambient complex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Graph {
    externals: usize,
    n: usize,
    edges: Vec<(usize, usize)>,
}

pub type GcGraph = Graph;
pub type ExtGraph2 = Graph;

impl Graph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GcError> {
        Self::with_externals(0, n, edges)
    }

    /// Graph whose first `externals` vertices are external.
    pub fn with_externals(
        externals: usize,
        n: usize,
        edges: &[(usize, usize)],
    ) -> Result<Self, GcError> {
        if n > MAX_VERTICES {
            return Err(GcError::TooLarge {
                n,
                max: MAX_VERTICES,
            });
        }
        if externals > n {
            return Err(GcError::Vertex {
                vertex: externals,
                n,
            });
        }
        for &(a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(GcError::Vertex { vertex: v, n });
                }
            }
        }
        Ok(Self::raw(externals, n, edges.to_vec()))
    }

    pub(crate) fn raw(externals: usize, n: usize, edges: Vec<(usize, usize)>) -> Self {
        let edges = edges
            .into_iter()
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        Graph {
            externals,
            n,
            edges,
        }
    }

    pub fn externals(&self) -> usize {
        self.externals
    }

    pub fn vertices(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Cohomological degree `2n − 2 − e` (vertices of degree 2, edges of
    /// degree −1, shifted by 2).
    pub fn degree(&self) -> i64 {
        2 * self.n as i64 - 2 - self.edges.len() as i64
    }

    /// Number of half-edges at each vertex; a loop counts twice.
    pub fn valences(&self) -> Vec<usize> {
        let mut val = vec![0; self.n];
        for &(a, b) in &self.edges {
            val[a] += 1;
            val[b] += 1;
        }
        val
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(|&(a, b)| a == b)
    }

    fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            if a != b {
                adj[b].push(a);
            }
        }
        adj
    }

    /// Whether the vertices in `keep` span a connected subgraph.
    pub(crate) fn connected_on(&self, keep: &[bool]) -> bool {
        let adj = self.neighbours();
        let Some(start) = keep.iter().position(|&k| k) else {
            return true;
        };
        let mut seen = vec![false; self.n];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if keep[w] && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        (0..self.n).all(|v| !keep[v] || seen[v])
    }

    pub fn is_connected(&self) -> bool {
        self.connected_on(&vec![true; self.n])
    }

    /// No vertex whose removal disconnects the graph.
    pub fn is_one_vertex_irreducible(&self) -> bool {
        if !self.is_connected() {
            return false;
        }
        (0..self.n).all(|v| {
            let mut keep = vec![true; self.n];
            keep[v] = false;
            self.connected_on(&keep)
        })
    }

    /// Connected, loop-free, simple, all vertices at least trivalent.
    pub fn in_gc(&self) -> bool {
        self.externals == 0
            && self.n > 0
            && !self.has_loops()
            && !self.has_repeated_edge()
            && self.valences().iter().all(|&v| v >= 3)
            && self.is_connected()
    }

    fn has_repeated_edge(&self) -> bool {
        let mut e = self.edges.clone();
        e.sort_unstable();
        e.windows(2).any(|w| w[0] == w[1])
    }

    /// Canonical representative and the sign relating it to `self`, or
    /// `None` when the graph vanishes (a repeated edge, or an automorphism
    /// that permutes the edges oddly).
    ///
    /// Internal vertices are first partitioned by colour refinement; the
    /// representative is the lexicographically least sorted edge list over
    /// all labelings compatible with that partition.
    pub fn canonical(&self) -> Option<(Graph, i32)> {
        if self.has_repeated_edge() {
            return None;
        }
        let classes = self.refined_classes();
        let mut best: Option<(Vec<(usize, usize)>, i32)> = None;
        let mut odd_automorphism = false;
        let mut label = vec![0usize; self.n];
        for v in 0..self.externals {
            label[v] = v;
        }
        let mut visit = |label: &[usize]| {
            let mapped: Vec<(usize, usize)> = self
                .edges
                .iter()
                .map(|&(a, b)| {
                    let (x, y) = (label[a], label[b]);
                    (x.min(y), x.max(y))
                })
                .collect();
            let sign = sort_sign(&mapped);
            let mut sorted = mapped;
            sorted.sort_unstable();
            match &best {
                Some((b, s)) if *b == sorted => {
                    if *s != sign {
                        odd_automorphism = true;
                    }
                }
                Some((b, _)) if *b < sorted => {}
                _ => {
                    best = Some((sorted, sign));
                    odd_automorphism = false;
                }
            }
        };
        for_each_labeling(&classes, self.externals, 0, &mut label, &mut visit);
        if odd_automorphism {
            return None;
        }
        let (edges, sign) = best.expect("at least one labeling");
        Some((
            Graph {
                externals: self.externals,
                n: self.n,
                edges,
            },
            sign,
        ))
    }

    /// Classes of internal vertices, ordered by an isomorphism-invariant
    /// colour.
    fn refined_classes(&self) -> Vec<Vec<usize>> {
        let adj = self.neighbours();
        let val = self.valences();
        let loops: Vec<usize> = (0..self.n)
            .map(|v| {
                self.edges
                    .iter()
                    .filter(|&&(a, b)| a == v && b == v)
                    .count()
            })
            .collect();
        let init: Vec<(usize, usize, usize, usize)> = (0..self.n)
            .map(|v| {
                if v < self.externals {
                    (0, v, 0, 0)
                } else {
                    (1, 0, val[v], loops[v])
                }
            })
            .collect();
        let mut colour = reindex(&init);
        loop {
            let sig: Vec<(usize, Vec<usize>)> = (0..self.n)
                .map(|v| {
                    let mut nb: Vec<usize> = adj[v].iter().map(|&w| colour[w]).collect();
                    nb.sort_unstable();
                    (colour[v], nb)
                })
                .collect();
            let next = reindex(&sig);
            let count = |c: &[usize]| c.iter().max().map_or(0, |m| m + 1);
            let done = count(&next) == count(&colour);
            colour = next;
            if done {
                break;
            }
        }
        let mut classes: Vec<(usize, Vec<usize>)> = Vec::new();
        for v in self.externals..self.n {
            match classes.iter_mut().find(|(c, _)| *c == colour[v]) {
                Some((_, members)) => members.push(v),
                None => classes.push((colour[v], vec![v])),
            }
        }
        classes.sort_by_key(|(c, _)| *c);
        classes.into_iter().map(|(_, m)| m).collect()
    }

    /// `{"vertices": n, "edges": [[i, j], …]}` with 1-based vertices, plus
    /// `"externals"` when nonzero.
    pub fn to_json(&self) -> Value {
        let edges: Vec<Value> = self
            .edges
            .iter()
            .map(|&(a, b)| json!([a + 1, b + 1]))
            .collect();
        let mut v = json!({ "vertices": self.n, "edges": edges });
        if self.externals > 0 {
            v["externals"] = json!(self.externals);
        }
        v
    }

    pub fn from_json(v: &Value) -> Result<Self, GcError> {
        let bad = |m: &str| GcError::Json(format!("{m}: {v}"));
        let n = v
            .get("vertices")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing vertices"))?;
        let ext = v.get("externals").and_then(Value::as_u64).unwrap_or(0);
        let edges = v
            .get("edges")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing edges"))?;
        let mut out = Vec::with_capacity(edges.len());
        for e in edges {
            let pair = e
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| bad("bad edge"))?;
            let end = |x: &Value| {
                x.as_u64()
                    .filter(|&i| i >= 1)
                    .map(|i| i as usize - 1)
                    .ok_or_else(|| bad("bad vertex"))
            };
            out.push((end(&pair[0])?, end(&pair[1])?));
        }
        Self::with_externals(ext as usize, n as usize, &out)
    }
}

fn reindex<T: Ord + Clone>(sig: &[T]) -> Vec<usize> {
    let mut uniq: Vec<T> = sig.to_vec();
    uniq.sort();
    uniq.dedup();
    sig.iter()
        .map(|s| uniq.binary_search(s).expect("present"))
        .collect()
}

/// Sign of the permutation that sorts `edges` (all distinct).
fn sort_sign(edges: &[(usize, usize)]) -> i32 {
    let mut inv = 0usize;
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            if edges[i] > edges[j] {
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

/// Calls `f` on every labeling that sends class `c` onto the next block of
/// consecutive labels, in class order.
fn for_each_labeling(
    classes: &[Vec<usize>],
    next: usize,
    c: usize,
    label: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize]),
) {
    if c == classes.len() {
        f(label);
        return;
    }
    let mut members = classes[c].clone();
    permute(&mut members, 0, &mut |perm| {
        for (i, &v) in perm.iter().enumerate() {
            label[v] = next + i;
        }
        for_each_labeling(classes, next + perm.len(), c + 1, label, f);
    });
}

fn permute(items: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, f);
        items.swap(k, i);
    }
}

/// Built-in graphs: `edge`, `triangle`, `tadpole`, `tetrahedron`, `wheel5`.
pub fn builtin(name: &str) -> Result<Graph, GcError> {
    let g = match name {
        "edge" => Graph::new(2, &[(0, 1)]),
        "triangle" => Graph::new(3, &[(0, 1), (1, 2), (0, 2)]),
        "tadpole" => Graph::new(1, &[(0, 0)]),
        "tetrahedron" => Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
        "wheel5" => {
            let mut e: Vec<(usize, usize)> = (1..=5).map(|i| (0, i)).collect();
            e.extend((1..=5).map(|i| (i, i % 5 + 1)));
            Graph::new(6, &e)
        }
        _ => return Err(GcError::UnknownGraph(name.into())),
    };
    g
}

/// All canonical, nonvanishing graphs of the graph complex (connected,
/// simple, at least trivalent) on exactly `n` vertices.
pub fn enumerate_gc(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    let mut out = std::collections::BTreeSet::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let edges: Vec<(usize, usize)> = (0..pairs.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| pairs[i])
            .collect();
        let g = Graph::raw(0, n, edges);
        if !g.in_gc() {
            continue;
        }
        if let Some((c, _)) = g.canonical() {
            out.insert(c);
        }
    }
    out.into_iter().collect()
}
