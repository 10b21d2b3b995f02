//! The image of the based fundamental group in the truncated free algebra on
//! the edges, and the equality test for two such images under an edge
//! bijection.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::graph::{
    fundamental_cycles, fundamental_cycles_for_tree, EdgeBijection, EdgeId, Multigraph, Word,
};
use crate::linalg::{reduce_against_rref, Matrix};
use crate::trunc::{Level, TruncElement};

/// A subspace of `T_k(E)` containing 1 and closed under multiplication, kept
/// as an rref basis over the flattened coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subalgebra<F: Field> {
    level: Level,
    edge_order: Vec<EdgeId>,
    basis: Matrix<F>,
}

impl<F: Field> Subalgebra<F> {
    pub fn level(&self) -> Level {
        self.level
    }

    pub fn edge_order(&self) -> &[EdgeId] {
        &self.edge_order
    }

    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn field(&self) -> F {
        self.basis.field()
    }

    /// Basis rows as algebra elements.
    pub fn elements(&self) -> Vec<TruncElement<F>> {
        self.basis
            .iter_rows()
            .map(|r| {
                TruncElement::from_row(self.field(), self.level, &self.edge_order, r)
                    .expect("rows have ambient width")
            })
            .collect()
    }

    /// Image of the basis under `phi`, flattened in `target_order`. Not
    /// reduced.
    pub fn pushforward_rows(
        &self,
        phi: &EdgeBijection,
        target_order: &[EdgeId],
    ) -> Result<Matrix<F>> {
        let f = self.field();
        let mut out = Matrix::empty(f, self.level.ambient_dim(target_order.len()));
        for a in self.elements() {
            out.push_row(a.pushforward(phi)?.flatten(target_order)?)?;
        }
        Ok(out)
    }

    /// True iff `phi_*(self) == other` as subspaces of the target algebra.
    pub fn pushes_forward_to(&self, phi: &EdgeBijection, other: &Subalgebra<F>) -> Result<bool> {
        if self.level != other.level {
            return Err(Error::LevelMismatch(
                self.level.as_u8(),
                other.level.as_u8(),
            ));
        }
        check_phi_orders(phi, &self.edge_order, &other.edge_order)?;
        // phi_* is an algebra isomorphism, so it preserves dimension, and with
        // equal dimensions containment is equality.
        if self.dim() != other.dim() {
            return Ok(false);
        }
        let f = self.field();
        for a in self.elements() {
            let row = a.pushforward(phi)?.flatten(&other.edge_order)?;
            if !reduce_against_rref(&row, &other.basis).iter().all(|x| f.is_zero(x)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True iff the product of every pair of basis elements stays in the span.
    pub fn is_closed_under_multiplication(&self) -> bool {
        let elems = self.elements();
        let mut all = self.basis.clone();
        for a in &elems {
            for b in &elems {
                let row = a.multiply(b).and_then(|p| p.flatten(&self.edge_order));
                all.push_row(row.expect("same level and edges"))
                    .expect("same width");
            }
        }
        all.rank() == self.dim()
    }
}

fn check_phi_orders(phi: &EdgeBijection, source: &[EdgeId], target: &[EdgeId]) -> Result<()> {
    let domain: BTreeSet<_> = phi.iter().map(|(e, _)| e).collect();
    let image: BTreeSet<_> = phi.iter().map(|(_, (e, _))| e).collect();
    if domain != source.iter().collect() || image != target.iter().collect() {
        return Err(Error::NotBijection(
            "edge map does not match the two edge sets".into(),
        ));
    }
    Ok(())
}

/// `w_*` of the truncated group algebra of `pi_1(g, v0)`, using the fundamental
/// cycles of the deterministic spanning tree.
pub fn image_subalgebra<F: Field>(field: F, g: &Multigraph, level: Level) -> Result<Subalgebra<F>> {
    image_subalgebra_from_generators(field, g, &fundamental_cycles(g)?, level)
}

/// Same subalgebra computed from the fundamental cycles of an arbitrary
/// spanning tree.
pub fn image_subalgebra_for_tree<F: Field>(
    field: F,
    g: &Multigraph,
    tree: &BTreeSet<EdgeId>,
    level: Level,
) -> Result<Subalgebra<F>> {
    image_subalgebra_from_generators(field, g, &fundamental_cycles_for_tree(g, tree)?, level)
}

/// The smallest subspace containing 1 and closed under right multiplication by
/// the images of the given closed walks and their inverses. When the walks
/// generate `pi_1`, this is the span of the images of all closed walks.
pub fn image_subalgebra_from_generators<F: Field>(
    field: F,
    g: &Multigraph,
    generators: &[Word],
    level: Level,
) -> Result<Subalgebra<F>> {
    g.require_connected()?;
    let order = g.edge_order();
    let gens: Vec<TruncElement<F>> = generators
        .iter()
        .flat_map(|w| [w.clone(), w.inverse()])
        .map(|w| TruncElement::embed_word(field, level, &w))
        .collect();

    let mut span = Matrix::empty(field, level.ambient_dim(order.len()));
    span.push_row(TruncElement::one(field, level).flatten(&order)?)?;
    loop {
        let grown = close_once(&span, &gens, &order, level, Side::Right)?;
        if grown.rows() == span.rows() {
            break;
        }
        span = grown;
    }

    #[cfg(debug_assertions)]
    {
        let left = close_once(&span, &gens, &order, level, Side::Left)?;
        debug_assert_eq!(left, span, "left multiplication enlarged the image");
    }

    Ok(Subalgebra {
        level,
        edge_order: order,
        basis: span,
    })
}

#[derive(Clone, Copy)]
#[cfg_attr(not(debug_assertions), allow(dead_code))]
enum Side {
    Left,
    Right,
}

/// `rref(S ∪ S·gens)` (or `gens·S` for `Side::Left`).
fn close_once<F: Field>(
    span: &Matrix<F>,
    gens: &[TruncElement<F>],
    order: &[EdgeId],
    level: Level,
    side: Side,
) -> Result<Matrix<F>> {
    let field = span.field();
    let mut rows = span.clone();
    for r in span.iter_rows() {
        let a = TruncElement::from_row(field, level, order, r)?;
        for u in gens {
            let p = match side {
                Side::Right => a.multiply(u)?,
                Side::Left => u.multiply(&a)?,
            };
            rows.push_row(p.flatten(order)?)?;
        }
    }
    Ok(rows.rref())
}

/// Options for [`invariants_equal_with`].
#[derive(Debug, Clone, Copy, Default)]
pub struct CompareOptions {
    /// Permit comparison over a field of characteristic 2, where `e` and
    /// `e^{-1}` have the same level-1 image.
    pub allow_characteristic_two: bool,
}

/// Decides `phi_*(w_*(k[pi_1(g)]/J^{k+1})) == w'_*(k[pi_1(g2)]/J^{k+1})`.
pub fn invariants_equal<F: Field>(
    field: F,
    g: &Multigraph,
    g2: &Multigraph,
    phi: &EdgeBijection,
    level: Level,
) -> Result<bool> {
    invariants_equal_with(field, g, g2, phi, level, CompareOptions::default())
}

pub fn invariants_equal_with<F: Field>(
    field: F,
    g: &Multigraph,
    g2: &Multigraph,
    phi: &EdgeBijection,
    level: Level,
    options: CompareOptions,
) -> Result<bool> {
    if field.characteristic() == 2 && !options.allow_characteristic_two {
        return Err(Error::CharacteristicTwo);
    }
    phi.check_between(g, g2)?;
    let s = image_subalgebra(field, g, level)?;
    let s2 = image_subalgebra(field, g2, level)?;
    s.pushes_forward_to(phi, &s2)
}

/// The cycle-space part: degree-one coordinates of the augmentation-ideal
/// rows, reduced.
pub fn degree_one_part<F: Field>(s: &Subalgebra<F>) -> Matrix<F> {
    let f = s.field();
    let m = s.edge_order.len();
    let mut out = Matrix::empty(f, m);
    for r in s.basis.iter_rows() {
        if f.is_zero(&r[0]) {
            out.push_row(r[1..=m].to_vec()).expect("width m");
        }
    }
    out.rref()
}
