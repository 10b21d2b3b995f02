use std::collections::BTreeMap;

use super::{EdgeId, Multigraph, VertexId, Word};
use crate::error::Result;
use crate::field::Field;
use crate::linalg::Matrix;

/// A finitely supported formal combination of keys. Zero coefficients are never
/// stored, so structural equality is equality of chains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain<K: Ord, F: Field> {
    field: F,
    coeffs: BTreeMap<K, F::Elem>,
}

/// 1-chains: combinations of edges.
pub type Chain1<F> = Chain<EdgeId, F>;
/// 0-chains: combinations of vertices.
pub type Chain0<F> = Chain<VertexId, F>;

impl<K: Ord + Clone, F: Field> Chain<K, F> {
    pub fn zero(field: F) -> Self {
        Self {
            field,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_terms(field: F, terms: impl IntoIterator<Item = (K, F::Elem)>) -> Self {
        let mut c = Self::zero(field);
        for (k, x) in terms {
            c.add_term(k, &x);
        }
        c
    }

    /// Integer-coefficient shorthand.
    pub fn from_i64_terms<Q: Into<K>>(field: F, terms: impl IntoIterator<Item = (Q, i64)>) -> Self {
        Self::from_terms(
            field,
            terms
                .into_iter()
                .map(|(k, x)| (k.into(), field.from_i64(x))),
        )
    }

    pub fn add_term(&mut self, key: K, x: &F::Elem) {
        let f = self.field;
        let entry = self.coeffs.entry(key.clone()).or_insert_with(|| f.zero());
        *entry = f.add(entry, x);
        if f.is_zero(entry) {
            self.coeffs.remove(&key);
        }
    }

    pub fn coeff(&self, key: &K) -> F::Elem {
        self.coeffs
            .get(key)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn terms(&self) -> &BTreeMap<K, F::Elem> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn field(&self) -> F {
        self.field
    }
}

impl<F: Field> Chain1<F> {
    /// The chain of a word: the sum of `sign * e` over its letters.
    pub fn of_word(field: F, word: &Word) -> Self {
        let mut c = Self::zero(field);
        for l in word.letters() {
            c.add_term(l.edge.clone(), &field.from_i64(l.sign.value()));
        }
        c
    }

    /// Dense coordinates in the given edge order.
    pub fn to_row(&self, order: &[EdgeId]) -> Vec<F::Elem> {
        order.iter().map(|e| self.coeff(e)).collect()
    }
}

/// `d(e) = head(e) - tail(e)`, extended linearly. Loops have zero boundary.
pub fn boundary<F: Field>(c: &Chain1<F>, g: &Multigraph) -> Result<Chain0<F>> {
    let f = c.field();
    let mut out = Chain0::zero(f);
    for (id, x) in c.terms() {
        let e = g.edge(id)?;
        out.add_term(e.head.clone(), x);
        out.add_term(e.tail.clone(), &f.neg(x));
    }
    Ok(out)
}

/// Canonical basis of the kernel of the boundary map, coordinates in sorted
/// edge order. Computed from the full incidence matrix, independently of any
/// spanning tree.
pub fn cycle_space<F: Field>(field: F, g: &Multigraph) -> Result<Matrix<F>> {
    g.require_connected()?;
    let vertices: Vec<_> = g.vertices().iter().collect();
    let mut incidence = Matrix::empty(field, g.edge_count());
    for v in vertices {
        let row = g
            .edges()
            .values()
            .map(|e| {
                let n = i64::from(&e.head == v) - i64::from(&e.tail == v);
                field.from_i64(n)
            })
            .collect();
        incidence.push_row(row)?;
    }
    Ok(incidence.kernel())
}
