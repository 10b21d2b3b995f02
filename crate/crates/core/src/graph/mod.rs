//! Based multigraphs with a reference orientation on every edge.
//!
//! Parallel edges and self-loops are allowed. Vertex and edge identifiers are
//! opaque strings compared lexicographically; every deterministic choice in
//! the crate (tree construction, coordinate order, reconstruction order)
//! follows that order.

mod bijection;
mod chain;
mod tree;
mod word;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use bijection::{phi_is_isomorphism, EdgeBijection, VertexMap};
pub use chain::{boundary, cycle_space, Chain, Chain0, Chain1};
pub use tree::{
    fundamental_cycles, fundamental_cycles_for_tree, random_spanning_tree, spanning_tree,
};
pub use word::{Letter, Sign, Word};

macro_rules! string_id {
    ($name:ident) => {
        #[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(String);

        impl $name {
            pub fn new(s: impl Into<String>) -> Self {
                Self(s.into())
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl From<&str> for $name {
            fn from(s: &str) -> Self {
                Self(s.to_owned())
            }
        }

        impl From<String> for $name {
            fn from(s: String) -> Self {
                Self(s)
            }
        }
    };
}

string_id!(VertexId);
string_id!(EdgeId);

/// An edge with its reference orientation `tail -> head`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub tail: VertexId,
    pub head: VertexId,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }

    /// Start vertex when traversed with the given sign.
    pub fn start(&self, sign: Sign) -> &VertexId {
        match sign {
            Sign::Plus => &self.tail,
            Sign::Minus => &self.head,
        }
    }

    /// End vertex when traversed with the given sign.
    pub fn end(&self, sign: Sign) -> &VertexId {
        self.start(sign.flip())
    }

    /// The endpoint across the edge from `v`, if `v` is an endpoint.
    pub fn other(&self, v: &VertexId) -> Option<&VertexId> {
        if &self.tail == v {
            Some(&self.head)
        } else if &self.head == v {
            Some(&self.tail)
        } else {
            None
        }
    }
}

/// A finite multigraph with a distinguished base vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multigraph {
    vertices: BTreeSet<VertexId>,
    edges: BTreeMap<EdgeId, Edge>,
    basepoint: VertexId,
}

impl Multigraph {
    pub fn new(
        vertices: BTreeSet<VertexId>,
        edges: BTreeMap<EdgeId, Edge>,
        basepoint: VertexId,
    ) -> Result<Self> {
        if !vertices.contains(&basepoint) {
            return Err(Error::UnknownVertex(basepoint));
        }
        for e in edges.values() {
            for v in [&e.tail, &e.head] {
                if !vertices.contains(v) {
                    return Err(Error::UnknownVertex(v.clone()));
                }
            }
        }
        Ok(Self {
            vertices,
            edges,
            basepoint,
        })
    }

    /// Builds a graph from `(id, tail, head)` triples; vertices are the
    /// basepoint plus every edge endpoint.
    ///
    /// ```
    /// use trunc_pi1::graph::Multigraph;
    /// let theta = Multigraph::from_edges("a", &[("e1", "a", "b"), ("e2", "a", "b"), ("e3", "a", "b")]).unwrap();
    /// assert_eq!(theta.cyclomatic_number(), 2);
    /// ```
    pub fn from_edges(basepoint: &str, edges: &[(&str, &str, &str)]) -> Result<Self> {
        let mut vertices = BTreeSet::from([VertexId::from(basepoint)]);
        let mut map = BTreeMap::new();
        for &(id, tail, head) in edges {
            vertices.insert(tail.into());
            vertices.insert(head.into());
            let edge = Edge {
                tail: tail.into(),
                head: head.into(),
            };
            if map.insert(EdgeId::from(id), edge).is_some() {
                return Err(Error::DuplicateEdge(id.into()));
            }
        }
        Self::new(vertices, map, basepoint.into())
    }

    /// Adds an isolated vertex (no-op if present).
    pub fn with_vertex(mut self, v: &str) -> Self {
        self.vertices.insert(v.into());
        self
    }

    /// Same graph, different base vertex.
    pub fn rebased(&self, basepoint: &VertexId) -> Result<Self> {
        if !self.vertices.contains(basepoint) {
            return Err(Error::UnknownVertex(basepoint.clone()));
        }
        Ok(Self {
            basepoint: basepoint.clone(),
            ..self.clone()
        })
    }

    pub fn basepoint(&self) -> &VertexId {
        &self.basepoint
    }

    pub fn vertices(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeMap<EdgeId, Edge> {
        &self.edges
    }

    pub fn edge(&self, id: &EdgeId) -> Result<&Edge> {
        self.edges
            .get(id)
            .ok_or_else(|| Error::UnknownEdge(id.clone()))
    }

    /// Edge ids in coordinate order.
    pub fn edge_order(&self) -> Vec<EdgeId> {
        self.edges.keys().cloned().collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// `|E| - |V| + 1`, the rank of the cycle space of a connected graph.
    pub fn cyclomatic_number(&self) -> usize {
        (self.edges.len() + 1).saturating_sub(self.vertices.len())
    }

    /// Incident edges of every vertex, loops listed once.
    pub(crate) fn incidence(&self) -> BTreeMap<&VertexId, Vec<&EdgeId>> {
        let mut inc: BTreeMap<&VertexId, Vec<&EdgeId>> =
            self.vertices.iter().map(|v| (v, Vec::new())).collect();
        for (id, e) in &self.edges {
            inc.get_mut(&e.tail).expect("validated").push(id);
            if !e.is_loop() {
                inc.get_mut(&e.head).expect("validated").push(id);
            }
        }
        inc
    }

    pub fn degree(&self, v: &VertexId) -> usize {
        self.edges
            .values()
            .map(|e| usize::from(&e.tail == v) + usize::from(&e.head == v))
            .sum()
    }

    /// Sorted multiset of vertex degrees (loops count twice).
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<_> = self.vertices.iter().map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }

    pub fn is_connected(&self) -> bool {
        self.reachable_from(&self.basepoint, None).len() == self.vertices.len()
    }

    pub(crate) fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    /// Vertices reachable from `start`, optionally ignoring one edge.
    pub(crate) fn reachable_from(
        &self,
        start: &VertexId,
        skip: Option<&EdgeId>,
    ) -> BTreeSet<VertexId> {
        let inc = self.incidence();
        let mut seen = BTreeSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for id in &inc[v] {
                if Some(*id) == skip {
                    continue;
                }
                let w = self.edges[*id].other(v).expect("incident");
                if seen.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// Edges whose removal disconnects their endpoints. Low-link DFS keyed on
    /// edge ids, so a parallel copy of the tree edge counts as a back edge.
    pub fn bridges(&self) -> BTreeSet<EdgeId> {
        let inc = self.incidence();
        let index: BTreeMap<&VertexId, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v, i))
            .collect();
        let n = self.vertices.len();
        let mut order = vec![usize::MAX; n];
        let mut low = vec![usize::MAX; n];
        let mut bridges = BTreeSet::new();
        let mut counter = 0;

        for root in &self.vertices {
            if order[index[root]] != usize::MAX {
                continue;
            }
            // Frames: (vertex, edge used to enter it, next incidence position).
            let mut stack: Vec<(&VertexId, Option<&EdgeId>, usize)> = vec![(root, None, 0)];
            order[index[root]] = counter;
            low[index[root]] = counter;
            counter += 1;
            while let Some(frame) = stack.last_mut() {
                let (v, parent_edge, pos) = (frame.0, frame.1, frame.2);
                if let Some(&id) = inc[v].get(pos) {
                    frame.2 += 1;
                    if Some(id) == parent_edge {
                        continue;
                    }
                    let w = self.edges[id].other(v).expect("incident");
                    let (vi, wi) = (index[v], index[w]);
                    if order[wi] == usize::MAX {
                        order[wi] = counter;
                        low[wi] = counter;
                        counter += 1;
                        stack.push((w, Some(id), 0));
                    } else {
                        low[vi] = low[vi].min(order[wi]);
                    }
                } else {
                    stack.pop();
                    if let (Some(id), Some(parent)) = (parent_edge, stack.last()) {
                        let (vi, pi) = (index[v], index[parent.0]);
                        low[pi] = low[pi].min(low[vi]);
                        if low[vi] > order[pi] {
                            bridges.insert(id.clone());
                        }
                    }
                }
            }
        }
        bridges
    }

    /// Connected with no bridge. A single vertex with any number of loops
    /// qualifies.
    pub fn is_two_edge_connected(&self) -> bool {
        self.is_connected() && self.bridges().is_empty()
    }

    pub(crate) fn require_two_edge_connected(&self) -> Result<()> {
        if self.is_two_edge_connected() {
            Ok(())
        } else {
            Err(Error::NotTwoEdgeConnected)
        }
    }

    /// Walk check: consecutive letters share endpoints, and the walk starts
    /// and ends at `at`. The empty word is closed at every vertex.
    pub fn is_closed_walk(&self, word: &Word, at: &VertexId) -> bool {
        let mut here = at;
        for letter in word.letters() {
            let Some(e) = self.edges.get(&letter.edge) else {
                return false;
            };
            if e.start(letter.sign) != here {
                return false;
            }
            here = e.end(letter.sign);
        }
        here == at
    }
}
