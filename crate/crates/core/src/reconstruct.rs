//! Growing a vertex isomorphism out of an edge bijection, one edge at a time.
//!
//! Starting from `psi(v0) = v0'`, the frontier edge with the smallest id is
//! attached to the matched region `H`. Its image must start at the image of
//! the endpoint already in `H`; its far endpoint is either already matched (and
//! must agree) or new on both sides. When the level-2 invariants agree these
//! checks never fail, so any failure is reported rather than searched around.
//! Self-loops at the base vertex are set aside and matched at the end.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::graph::{Chain1, EdgeBijection, EdgeId, Multigraph, Sign, VertexId, VertexMap, Word};
use crate::trunc::{Level, TruncElement};

/// Why an extension step failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureKind {
    /// The image edge does not start at the image of the matched endpoint.
    StartMismatch,
    /// Both endpoints were matched but the image edge ends elsewhere.
    EndMismatch,
    /// The far endpoint is new but the image edge ends inside the matched
    /// region.
    EndAlreadyMatched,
    /// A base self-loop is not sent to a base self-loop, or vice versa.
    BaseLoopMismatch,
    /// Vertex counts differ.
    VertexCount,
}

/// A structured account of the first violated step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureReport {
    pub kind: FailureKind,
    pub edge: Option<EdgeId>,
    pub expected: Option<VertexId>,
    pub found: Option<VertexId>,
}

impl std::fmt::Display for FailureReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.kind)?;
        if let Some(e) = &self.edge {
            write!(f, " at edge {e}")?;
        }
        if let Some(v) = &self.expected {
            write!(f, ", expected {v}")?;
        }
        if let Some(v) = &self.found {
            write!(f, ", found {v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Reconstruction {
    Isomorphism { vertex_map: VertexMap },
    Failure { report: FailureReport },
}

impl Reconstruction {
    pub fn is_success(&self) -> bool {
        matches!(self, Reconstruction::Isomorphism { .. })
    }

    pub fn vertex_map(&self) -> Option<&VertexMap> {
        match self {
            Reconstruction::Isomorphism { vertex_map } => Some(vertex_map),
            Reconstruction::Failure { .. } => None,
        }
    }
}

fn fail(
    kind: FailureKind,
    edge: Option<&EdgeId>,
    expected: Option<&VertexId>,
    found: Option<&VertexId>,
) -> Reconstruction {
    Reconstruction::Failure {
        report: FailureReport {
            kind,
            edge: edge.cloned(),
            expected: expected.cloned(),
            found: found.cloned(),
        },
    }
}

/// Extends `psi(v0) = v0'` to an isomorphism compatible with `phi`, or reports
/// the edge at which that is impossible. Both graphs must be 2-edge-connected.
pub fn reconstruct_isomorphism(
    g: &Multigraph,
    g2: &Multigraph,
    phi: &EdgeBijection,
) -> Result<Reconstruction> {
    g.require_two_edge_connected()?;
    g2.require_two_edge_connected()?;
    phi.check_between(g, g2)?;

    let v0 = g.basepoint();
    let v0_image = g2.basepoint();
    if g.vertex_count() != g2.vertex_count() {
        return Ok(fail(FailureKind::VertexCount, None, None, None));
    }

    let base_loops: BTreeSet<&EdgeId> = g
        .edges()
        .iter()
        .filter(|(_, e)| e.is_loop() && &e.tail == v0)
        .map(|(id, _)| id)
        .collect();

    let mut psi: BTreeMap<VertexId, VertexId> = BTreeMap::from([(v0.clone(), v0_image.clone())]);
    let mut image: BTreeSet<VertexId> = BTreeSet::from([v0_image.clone()]);
    let mut done: BTreeSet<&EdgeId> = base_loops.clone();

    loop {
        // Smallest-id unprocessed edge with an endpoint in H, oriented out of H.
        let next = g.edges().iter().find_map(|(id, e)| {
            if done.contains(id) {
                None
            } else if psi.contains_key(&e.tail) {
                Some((id, Sign::Plus))
            } else if psi.contains_key(&e.head) {
                Some((id, Sign::Minus))
            } else {
                None
            }
        });
        let Some((id, dir)) = next else { break };
        done.insert(id);

        let e = &g.edges()[id];
        let (x, y) = (e.start(dir), e.end(dir));
        let (id2, s) = phi.get(id)?;
        let e2 = &g2.edges()[id2];
        let s = dir * *s;
        let (x2, y2) = (e2.start(s), e2.end(s));

        let px = &psi[x];
        if px != x2 {
            return Ok(fail(
                FailureKind::StartMismatch,
                Some(id),
                Some(px),
                Some(x2),
            ));
        }
        match psi.get(y) {
            Some(py) => {
                if py != y2 {
                    return Ok(fail(FailureKind::EndMismatch, Some(id), Some(py), Some(y2)));
                }
            }
            None => {
                if image.contains(y2) {
                    return Ok(fail(
                        FailureKind::EndAlreadyMatched,
                        Some(id),
                        None,
                        Some(y2),
                    ));
                }
                psi.insert(y.clone(), y2.clone());
                image.insert(y2.clone());
            }
        }
    }
    debug_assert_eq!(psi.len(), g.vertex_count(), "connected graph fully matched");

    for id in &base_loops {
        let (id2, _) = phi.get(id)?;
        let e2 = &g2.edges()[id2];
        if !(e2.is_loop() && &e2.tail == v0_image) {
            return Ok(fail(
                FailureKind::BaseLoopMismatch,
                Some(id),
                Some(v0_image),
                Some(&e2.tail),
            ));
        }
    }
    let image_loops = g2
        .edges()
        .values()
        .filter(|e| e.is_loop() && &e.tail == v0_image)
        .count();
    if image_loops != base_loops.len() {
        return Ok(fail(
            FailureKind::BaseLoopMismatch,
            None,
            Some(v0_image),
            None,
        ));
    }

    let witness = VertexMap(psi);
    debug_assert!(witness.is_witness(g, g2, phi));
    Ok(Reconstruction::Isomorphism {
        vertex_map: witness,
    })
}

/// For a closed walk `gamma = gamma_- e gamma_+` in which `e` occurs once and
/// positively, the chain whose coefficient on `f` is the coefficient of
/// `(f-1)(e-1)` in the level-2 image of `gamma`. It equals the chain of the
/// prefix `gamma_-`, so its boundary is `tail(e) - v0`.
pub fn eta_chain<F: Field>(field: F, gamma: &Word, e: &EdgeId) -> Result<Chain1<F>> {
    let hits: Vec<Sign> = gamma
        .letters()
        .iter()
        .filter(|l| &l.edge == e)
        .map(|l| l.sign)
        .collect();
    let reason = match hits.as_slice() {
        [] => Some("absent"),
        [Sign::Minus] => Some("reversed"),
        [Sign::Plus] => None,
        _ => Some("repeated"),
    };
    if let Some(reason) = reason {
        return Err(Error::InadmissibleEdge {
            edge: e.clone(),
            reason,
        });
    }
    let image = TruncElement::embed_word(field, Level::Two, gamma);
    Ok(Chain1::from_terms(
        field,
        image
            .deg2()
            .iter()
            .filter(|((_, second), _)| second == e)
            .map(|((first, _), x)| (first.clone(), x.clone())),
    ))
}
