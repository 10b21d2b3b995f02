//! Whitney twists and vertex identification: moves that keep the cycle space
//! but can change the graph.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeBijection, EdgeId, Multigraph, Sign, VertexId};

/// Re-attaches `side` across the 2-separation `{u, v}` with `u` and `v`
/// exchanged.
///
/// Side edges with both endpoints in `{u, v}` are left on the untwisted side.
/// The returned bijection is the identity on ids, reversing every twisted
/// edge; with that convention the signed cycle spaces correspond.
pub fn whitney_twist(
    g: &Multigraph,
    u: &VertexId,
    v: &VertexId,
    side: &BTreeSet<EdgeId>,
) -> Result<(Multigraph, EdgeBijection)> {
    let invalid = |msg: String| Err(Error::InvalidTwist(msg));
    if u == v {
        return invalid(format!("cut vertices coincide ({u})"));
    }
    for w in [u, v] {
        if !g.vertices().contains(w) {
            return Err(Error::UnknownVertex(w.clone()));
        }
    }
    let cut = |w: &VertexId| w == u || w == v;
    let mut twisted = BTreeSet::new();
    for id in side {
        let e = g.edge(id)?;
        if !(cut(&e.tail) && cut(&e.head)) {
            twisted.insert(id.clone());
        }
    }
    let interior: BTreeSet<&VertexId> = twisted
        .iter()
        .flat_map(|id| {
            let e = &g.edges()[id];
            [&e.tail, &e.head]
        })
        .filter(|w| !cut(w))
        .collect();
    for (id, e) in g.edges() {
        if twisted.contains(id) {
            continue;
        }
        if interior.contains(&e.tail) || interior.contains(&e.head) {
            return invalid(format!(
                "edge {id} joins the twisted side to the rest outside {{{u}, {v}}}"
            ));
        }
    }
    if interior.contains(g.basepoint()) {
        return invalid(format!(
            "basepoint {} lies inside the twisted side",
            g.basepoint()
        ));
    }

    let swap = |w: &VertexId| {
        if w == u {
            v.clone()
        } else if w == v {
            u.clone()
        } else {
            w.clone()
        }
    };
    let mut edges = BTreeMap::new();
    let mut phi = BTreeMap::new();
    for (id, e) in g.edges() {
        if twisted.contains(id) {
            edges.insert(
                id.clone(),
                Edge {
                    tail: swap(&e.tail),
                    head: swap(&e.head),
                },
            );
            phi.insert(id.clone(), (id.clone(), Sign::Minus));
        } else {
            edges.insert(id.clone(), e.clone());
            phi.insert(id.clone(), (id.clone(), Sign::Plus));
        }
    }
    let twisted_graph = Multigraph::new(g.vertices().clone(), edges, g.basepoint().clone())?;
    Ok((twisted_graph, EdgeBijection::new(phi)?))
}

/// Glues `p` and `q` into one vertex named `min(p, q)`. Edges keep their ids;
/// edges between `p` and `q` become loops.
pub fn identify_vertices(g: &Multigraph, p: &VertexId, q: &VertexId) -> Result<Multigraph> {
    if p == q {
        return Err(Error::SameVertex(p.clone()));
    }
    for w in [p, q] {
        if !g.vertices().contains(w) {
            return Err(Error::UnknownVertex(w.clone()));
        }
    }
    let keep = std::cmp::min(p, q).clone();
    let rename = |w: &VertexId| {
        if w == p || w == q {
            keep.clone()
        } else {
            w.clone()
        }
    };
    let vertices = g.vertices().iter().map(rename).collect();
    let edges = g
        .edges()
        .iter()
        .map(|(id, e)| {
            (
                id.clone(),
                Edge {
                    tail: rename(&e.tail),
                    head: rename(&e.head),
                },
            )
        })
        .collect();
    Multigraph::new(vertices, edges, rename(g.basepoint()))
}

/// The standard twist pair: a 4-cycle-like graph whose twist changes the
/// degree sequence from `(3,3,3,3)` to `(2,3,3,4)`. Returns `(W, W', phi)`.
pub fn twist_example() -> (Multigraph, Multigraph, EdgeBijection) {
    let w = Multigraph::from_edges(
        "u",
        &[
            ("ua", "u", "a"),
            ("ua2", "u", "a"),
            ("av", "a", "v"),
            ("ub", "u", "b"),
            ("bv", "b", "v"),
            ("bv2", "b", "v"),
        ],
    )
    .expect("valid graph");
    let side = ["ub", "bv", "bv2"].into_iter().map(EdgeId::from).collect();
    let (w2, phi) = whitney_twist(&w, &"u".into(), &"v".into(), &side).expect("valid twist");
    (w, w2, phi)
}
