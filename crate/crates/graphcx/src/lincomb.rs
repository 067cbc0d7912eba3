use std::collections::{BTreeMap, HashMap};

use scalars::{rational_from_json, rational_to_json, Rational, Scalar};
use serde_json::{json, Value};

use crate::error::GcError;
use crate::graph::Graph;

/// Linear combination of canonical graphs with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct GraphLinComb {
    terms: BTreeMap<Graph, Rational>,
}

impl GraphLinComb {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_graph(g: &Graph) -> Self {
        let mut out = Self::zero();
        out.add_term(g, &<Rational as Scalar>::one());
        out
    }

    /// Adds `c · g`, bringing `g` to canonical form.
    pub fn add_term(&mut self, g: &Graph, c: &Rational) {
        if let Some((cg, sign)) = g.canonical() {
            self.add_canonical(cg, c.scale_q(&Rational::from_integer(sign.into())));
        }
    }

    fn add_canonical(&mut self, g: Graph, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(g.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&g);
        }
    }

    /// Canonicalizes a raw sum, merging identical labeled graphs first.
    pub(crate) fn from_raw(raw: HashMap<Graph, Rational>) -> Self {
        let mut out = Self::zero();
        for (g, c) in raw {
            out.add_term(&g, &c);
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Graph, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, g: &Graph) -> Rational {
        match g.canonical() {
            Some((cg, sign)) => {
                self.terms.get(&cg).cloned().unwrap_or_else(Rational::zero)
                    * Rational::from_integer(sign.into())
            }
            None => Rational::zero(),
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.add_canonical(g.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (g, x) in &self.terms {
            out.add_canonical(g.clone(), x * c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Rational::from_integer((-1).into())))
    }

    /// Keeps the terms satisfying `keep`.
    pub fn filter(&self, keep: impl Fn(&Graph) -> bool) -> Self {
        GraphLinComb {
            terms: self
                .terms
                .iter()
                .filter(|(g, _)| keep(g))
                .map(|(g, c)| (g.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(g, c)| json!({ "coeff": rational_to_json(c), "graph": g.to_json() }))
            .collect();
        json!({ "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<Self, GcError> {
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| GcError::Json(format!("missing \"terms\": {v}")))?;
        let mut out = Self::zero();
        for t in terms {
            let g = Graph::from_json(t.get("graph").unwrap_or(&Value::Null))?;
            let c = rational_from_json(t.get("coeff").unwrap_or(&Value::Null))
                .map_err(|e| GcError::Json(e.to_string()))?;
            out.add_term(&g, &c);
        }
        Ok(out)
    }
}
