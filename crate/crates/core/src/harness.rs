//! Exhaustive desk-scale verification.
//!
//! Enumerates every connected bridgeless multigraph with at most `max_edges`
//! edges up to isomorphism, takes every basepoint, and for every ordered pair
//! with equal edge counts and every signed edge bijection records three
//! verdicts: invariant equality, the brute-force isomorphism test, and the
//! edge-by-edge reconstruction. They must agree.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::graph::{phi_is_isomorphism, Edge, EdgeBijection, EdgeId, Multigraph, Sign, VertexId};
use crate::invariant::{image_subalgebra, Subalgebra};
use crate::reconstruct::reconstruct_isomorphism;
use crate::text::write_bijection;
use crate::trunc::Level;

pub const DEFAULT_EDGE_CAP: usize = 5;
const MAX_REPORTED_DISAGREEMENTS: usize = 20;

/// Unlabeled multigraph as a sorted list of vertex-index pairs `(i <= j)`.
type PairList = Vec<(usize, usize)>;

fn relabel(pairs: &[(usize, usize)], perm: &[usize]) -> PairList {
    let mut out: PairList = pairs
        .iter()
        .map(|&(a, b)| {
            let (x, y) = (perm[a], perm[b]);
            (x.min(y), x.max(y))
        })
        .collect();
    out.sort_unstable();
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Lexicographically least relabeling; equal keys iff isomorphic.
fn canonical_key(pairs: &[(usize, usize)], perms: &[Vec<usize>]) -> PairList {
    perms
        .iter()
        .map(|p| relabel(pairs, p))
        .min()
        .unwrap_or_default()
}

fn multisets(
    items: &[(usize, usize)],
    size: usize,
    start: usize,
    cur: &mut PairList,
    out: &mut Vec<PairList>,
) {
    if cur.len() == size {
        out.push(cur.clone());
        return;
    }
    for i in start..items.len() {
        cur.push(items[i]);
        multisets(items, size, i, cur, out);
        cur.pop();
    }
}

fn build_graph(n: usize, pairs: &[(usize, usize)]) -> Multigraph {
    let name = |i: usize| VertexId::new(format!("v{i}"));
    let vertices = (0..n).map(name).collect();
    let edges = pairs
        .iter()
        .enumerate()
        .map(|(k, &(a, b))| {
            (
                EdgeId::new(format!("e{}", k + 1)),
                Edge {
                    tail: name(a),
                    head: name(b),
                },
            )
        })
        .collect();
    Multigraph::new(vertices, edges, name(0)).expect("endpoints are vertices")
}

/// One representative per isomorphism class of connected, 2-edge-connected
/// multigraphs with at most `max_edges` edges (loops and parallel edges
/// allowed), based at `v0`. Sorted by edge count, then vertex count, then
/// canonical form.
pub fn enumerate_two_edge_connected(max_edges: usize) -> Vec<Multigraph> {
    let mut classes: BTreeSet<(usize, usize, PairList)> = BTreeSet::new();
    // A bridgeless graph on n >= 2 vertices has minimum degree 2, so n <= m.
    for n in 1..=max_edges.max(1) {
        let perms = permutations(n);
        let pairs: PairList = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        for m in 0..=max_edges {
            if n >= 2 && m < n {
                continue;
            }
            let mut candidates = Vec::new();
            multisets(&pairs, m, 0, &mut Vec::new(), &mut candidates);
            for cand in candidates {
                let g = build_graph(n, &cand);
                if g.is_two_edge_connected() {
                    classes.insert((m, n, canonical_key(&cand, &perms)));
                }
            }
        }
    }
    classes
        .into_iter()
        .map(|(_, n, pairs)| build_graph(n, &pairs))
        .collect()
}

/// The graph based at each of its vertices in turn.
pub fn based_variants(g: &Multigraph) -> Vec<Multigraph> {
    g.vertices()
        .iter()
        .map(|v| g.rebased(v).expect("own vertex"))
        .collect()
}

/// All `m! * 2^m` signed bijections between two equally sized edge lists.
pub fn signed_bijections(source: &[EdgeId], target: &[EdgeId]) -> Vec<EdgeBijection> {
    assert_eq!(source.len(), target.len(), "edge counts differ");
    let m = source.len();
    let mut out = Vec::new();
    for perm in permutations(m) {
        for mask in 0u32..(1 << m) {
            let map: BTreeMap<EdgeId, (EdgeId, Sign)> = source
                .iter()
                .enumerate()
                .map(|(i, e)| {
                    let s = if mask >> i & 1 == 1 {
                        Sign::Minus
                    } else {
                        Sign::Plus
                    };
                    (e.clone(), (target[perm[i]].clone(), s))
                })
                .collect();
            out.push(EdgeBijection::new(map).expect("permutation is injective"));
        }
    }
    out
}

/// Verdict counts keyed by `(invariants equal, isomorphic, reconstructed)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub all_true: usize,
    pub all_false: usize,
    pub mixed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub source: String,
    pub target: String,
    pub bijection: String,
    pub invariants_equal: bool,
    pub isomorphic: bool,
    pub reconstructed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub max_edges: usize,
    pub level: Level,
    pub characteristic: u64,
    pub graphs: usize,
    pub based_graphs: usize,
    pub ordered_pairs: usize,
    pub cells: usize,
    pub tally: Tally,
    /// Cells where the brute-force and reconstructed witnesses both exist but
    /// differ.
    pub witness_mismatches: usize,
    pub disagreement_count: usize,
    pub disagreements: Vec<Disagreement>,
}

impl Report {
    pub fn is_consistent(&self) -> bool {
        self.disagreement_count == 0 && self.witness_mismatches == 0
    }
}

#[derive(Default)]
struct PairOutcome {
    tally: Tally,
    witness_mismatches: usize,
    disagreements: Vec<Disagreement>,
    disagreement_count: usize,
}

fn check_pair<F: Field>(
    g: &Multigraph,
    s: &Subalgebra<F>,
    g2: &Multigraph,
    s2: &Subalgebra<F>,
    bijections: &[EdgeBijection],
) -> Result<PairOutcome> {
    let mut out = PairOutcome::default();
    for phi in bijections {
        let equal = s.pushes_forward_to(phi, s2)?;
        let witness = phi_is_isomorphism(g, g2, phi);
        let rebuilt = reconstruct_isomorphism(g, g2, phi)?;
        let verdicts = (equal, witness.is_some(), rebuilt.is_success());
        match verdicts {
            (true, true, true) => out.tally.all_true += 1,
            (false, false, false) => out.tally.all_false += 1,
            _ => {
                out.tally.mixed += 1;
                out.disagreement_count += 1;
                out.disagreements.push(Disagreement {
                    source: describe(g),
                    target: describe(g2),
                    bijection: write_bijection(phi),
                    invariants_equal: verdicts.0,
                    isomorphic: verdicts.1,
                    reconstructed: verdicts.2,
                });
            }
        }
        if let (Some(w), Some(r)) = (witness.as_ref(), rebuilt.vertex_map()) {
            if w != r {
                out.witness_mismatches += 1;
            }
        }
    }
    out.disagreements.truncate(MAX_REPORTED_DISAGREEMENTS);
    Ok(out)
}

fn describe(g: &Multigraph) -> String {
    let edges: Vec<String> = g
        .edges()
        .iter()
        .map(|(id, e)| format!("{id}:{}{}", e.tail, e.head))
        .collect();
    format!("base {} [{}]", g.basepoint(), edges.join(" "))
}

/// Runs the exhaustive comparison. `cap` bounds `max_edges`.
pub fn enumerate_and_verify<F: Field>(
    field: F,
    max_edges: usize,
    level: Level,
    cap: usize,
) -> Result<Report> {
    if max_edges > cap {
        return Err(Error::CapExceeded {
            requested: max_edges,
            cap,
        });
    }
    let graphs = enumerate_two_edge_connected(max_edges);
    let based: Vec<Multigraph> = graphs.iter().flat_map(based_variants).collect();
    let algebras: Vec<Subalgebra<F>> = based
        .par_iter()
        .map(|g| image_subalgebra(field, g, level))
        .collect::<Result<_>>()?;

    let mut bijections: BTreeMap<usize, Vec<EdgeBijection>> = BTreeMap::new();
    for g in &based {
        bijections.entry(g.edge_count()).or_insert_with(|| {
            // Every enumerated graph uses the ids e1..em.
            let ids = g.edge_order();
            signed_bijections(&ids, &ids)
        });
    }

    let pairs: Vec<(usize, usize)> = (0..based.len())
        .flat_map(|i| (0..based.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| based[i].edge_count() == based[j].edge_count())
        .collect();
    let outcomes: Vec<PairOutcome> = pairs
        .par_iter()
        .map(|&(i, j)| {
            check_pair(
                &based[i],
                &algebras[i],
                &based[j],
                &algebras[j],
                &bijections[&based[i].edge_count()],
            )
        })
        .collect::<Result<_>>()?;

    let mut report = Report {
        max_edges,
        level,
        characteristic: field.characteristic(),
        graphs: graphs.len(),
        based_graphs: based.len(),
        ordered_pairs: pairs.len(),
        cells: pairs
            .iter()
            .map(|&(i, _)| bijections[&based[i].edge_count()].len())
            .sum(),
        tally: Tally::default(),
        witness_mismatches: 0,
        disagreement_count: 0,
        disagreements: Vec::new(),
    };
    for o in outcomes {
        report.tally.all_true += o.tally.all_true;
        report.tally.all_false += o.tally.all_false;
        report.tally.mixed += o.tally.mixed;
        report.witness_mismatches += o.witness_mismatches;
        report.disagreement_count += o.disagreement_count;
        for d in o.disagreements {
            if report.disagreements.len() < MAX_REPORTED_DISAGREEMENTS {
                report.disagreements.push(d);
            }
        }
    }
    Ok(report)
}
