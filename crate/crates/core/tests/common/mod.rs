//! Generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use trunc_pi1::field::{Field, Rationals};
use proptest::prelude::*;
use trunc_pi1::graph::{Edge, EdgeBijection, EdgeId, Letter, Multigraph, Sign, VertexId, VertexMap, Word};
use trunc_pi1::trunc::{Level, TruncElement};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn edge_ids(m: usize) -> Vec<EdgeId> {
    (1..=m).map(|i| EdgeId::new(format!("e{i}"))).collect()
}

pub fn random_word<R: Rng>(rng: &mut R, edges: &[EdgeId], max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| {
            let e = edges.choose(rng).unwrap().clone();
            let s = if rng.gen_bool(0.5) {
                Sign::Plus
            } else {
                Sign::Minus
            };
            Letter::new(e, s)
        })
        .collect()
}

/// A level-2 element with zero constant term and small integer coefficients.
pub fn random_augmentation_element<R: Rng>(
    rng: &mut R,
    edges: &[EdgeId],
) -> TruncElement<Rationals> {
    let mut x = TruncElement::zero(Rationals, Level::Two);
    for e in edges {
        x.add_deg1(e.clone(), &Rationals.from_i64(rng.gen_range(-3..=3)));
        for f in edges {
            x.add_deg2(
                e.clone(),
                f.clone(),
                &Rationals.from_i64(rng.gen_range(-3..=3)),
            );
        }
    }
    x
}

/// Oracle for the level-2 image of a word, written out term by term:
/// `1 + sum b_j X_j + sum_{j<k} b_j b_k X_j X_k + sum_{b_j = -1} X_j X_j`
/// with `X_j = (x_{i_j} - 1)`. Uses no multiplication of algebra elements.
pub fn closed_formula_embedding<F: Field>(field: F, word: &Word) -> TruncElement<F> {
    let mut out = TruncElement::one(field, Level::Two);
    let ls = word.letters();
    for (j, a) in ls.iter().enumerate() {
        out.add_deg1(a.edge.clone(), &field.from_i64(a.sign.value()));
        for b in &ls[j + 1..] {
            out.add_deg2(
                a.edge.clone(),
                b.edge.clone(),
                &field.from_i64(a.sign.value() * b.sign.value()),
            );
        }
        if a.sign == Sign::Minus {
            out.add_deg2(a.edge.clone(), a.edge.clone(), &field.one());
        }
    }
    out
}

/// Plain Gauss-Jordan on a dense rational grid, returning the nonzero rows of
/// the reduced form. Kept deliberately separate from the library routine.
pub fn oracle_rref(rows: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let mut a: Vec<Vec<BigRational>> = rows.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = BigRational::one() / a[r][c].clone();
        for x in a[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let k = a[i][c].clone();
                for j in 0..cols {
                    let d = k.clone() * a[r][j].clone();
                    a[i][j] = a[i][j].clone() - d;
                }
            }
        }
        r += 1;
    }
    a.truncate(r);
    a
}

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn vid(s: String) -> VertexId {
    VertexId::new(s)
}

/// A random valid Whitney twist: a graph glued from two connected pieces along
/// `{u, v}`, 2-edge-connected, based outside the second piece. Returns the
/// graph and the second piece's edges.
pub fn random_twist_input<R: Rng>(
    rng: &mut R,
) -> (Multigraph, VertexId, VertexId, BTreeSet<EdgeId>) {
    let (u, v) = (vid("u".into()), vid("v".into()));
    loop {
        let mut edges = BTreeMap::new();
        let ka = rng.gen_range(0..=2);
        let na = rng.gen_range(1..=4);
        let kb = rng.gen_range(1..=2);
        let nb = rng.gen_range(2..=5);
        let a_vertices = piece(rng, &u, &v, "a", ka, na, &mut edges);
        let b_vertices = piece(rng, &u, &v, "b", kb, nb, &mut edges);
        let side: BTreeSet<EdgeId> = edges
            .keys()
            .filter(|id| id.as_str().starts_with('b'))
            .cloned()
            .collect();
        let base = a_vertices[rng.gen_range(0..a_vertices.len())].clone();
        let vertices = a_vertices.into_iter().chain(b_vertices).collect();
        let Ok(g) = Multigraph::new(vertices, edges, base) else {
            continue;
        };
        if g.is_two_edge_connected() {
            return (g, u, v, side);
        }
    }
}

fn piece<R: Rng>(
    rng: &mut R,
    u: &VertexId,
    v: &VertexId,
    prefix: &str,
    extra: usize,
    count: usize,
    edges: &mut BTreeMap<EdgeId, Edge>,
) -> Vec<VertexId> {
    let mut vs = vec![u.clone(), v.clone()];
    vs.extend((1..=extra).map(|i| vid(format!("{prefix}{i}"))));
    for i in 1..=count {
        let tail = vs.choose(rng).unwrap().clone();
        let head = vs.choose(rng).unwrap().clone();
        edges.insert(EdgeId::new(format!("{prefix}e{i}")), Edge { tail, head });
    }
    vs
}

/// Any multigraph on 1..=`max_vertices` vertices `v0..` with up to
/// `max_edges` edges `e1..`, based at a random vertex. Loops and parallel
/// edges included; not necessarily connected.
pub fn arb_graph(max_vertices: usize, max_edges: usize) -> impl Strategy<Value = Multigraph> {
    (1..=max_vertices).prop_flat_map(move |n| {
        (
            prop::collection::vec((0..n, 0..n), 0..=max_edges),
            0..n,
        )
            .prop_map(move |(pairs, base)| {
                let name = |i: usize| VertexId::new(format!("v{i}"));
                let edges = pairs
                    .iter()
                    .enumerate()
                    .map(|(k, &(a, b))| (EdgeId::new(format!("e{}", k + 1)), Edge { tail: name(a), head: name(b) }))
                    .collect();
                Multigraph::new((0..n).map(name).collect(), edges, name(base)).unwrap()
            })
    })
}

/// Connected graphs from [`arb_graph`].
pub fn arb_connected(max_vertices: usize, max_edges: usize) -> impl Strategy<Value = Multigraph> {
    arb_graph(max_vertices, max_edges).prop_filter("connected", Multigraph::is_connected)
}

/// A copy of `g` with fresh vertex and edge names, shuffled edge ids and some
/// edges reversed, with the bijection and vertex map that relate the two.
pub fn random_relabel<R: Rng>(rng: &mut R, g: &Multigraph) -> (Multigraph, EdgeBijection, VertexMap) {
    let mut targets: Vec<usize> = (0..g.vertex_count()).collect();
    targets.shuffle(rng);
    let psi: BTreeMap<VertexId, VertexId> = g
        .vertices()
        .iter()
        .zip(&targets)
        .map(|(v, &i)| (v.clone(), VertexId::new(format!("w{i}"))))
        .collect();
    let mut ids: Vec<usize> = (0..g.edge_count()).collect();
    ids.shuffle(rng);
    let mut edges = BTreeMap::new();
    let mut phi = BTreeMap::new();
    for ((id, e), &k) in g.edges().iter().zip(&ids) {
        let new_id = EdgeId::new(format!("f{k}"));
        let (tail, head) = (psi[&e.tail].clone(), psi[&e.head].clone());
        if rng.gen_bool(0.5) {
            edges.insert(new_id.clone(), Edge { tail: head, head: tail });
            phi.insert(id.clone(), (new_id, Sign::Minus));
        } else {
            edges.insert(new_id.clone(), Edge { tail, head });
            phi.insert(id.clone(), (new_id, Sign::Plus));
        }
    }
    let g2 = Multigraph::new(psi.values().cloned().collect(), edges, psi[g.basepoint()].clone()).unwrap();
    (g2, EdgeBijection::new(phi).unwrap(), VertexMap(psi))
}

/// Proptest settings for integration tests, which have no source file for
/// regression persistence to sit beside.
pub fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}
