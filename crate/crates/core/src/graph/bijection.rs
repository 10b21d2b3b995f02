use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{EdgeId, Letter, Multigraph, Sign, VertexId, Word};
use crate::error::{Error, Result};

/// A bijection of oriented edges. `e -> (f, Minus)` sends `e` to `f^{-1}`, and
/// therefore `e^{-1}` to `f`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeBijection {
    map: BTreeMap<EdgeId, (EdgeId, Sign)>,
}

impl EdgeBijection {
    pub fn new(map: BTreeMap<EdgeId, (EdgeId, Sign)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (target, _) in map.values() {
            if !seen.insert(target) {
                return Err(Error::NotBijection(format!("{target} is hit twice")));
            }
        }
        Ok(Self { map })
    }

    pub fn from_triples(triples: &[(&str, &str, Sign)]) -> Result<Self> {
        Self::new(
            triples
                .iter()
                .map(|&(a, b, s)| (EdgeId::from(a), (EdgeId::from(b), s)))
                .collect(),
        )
    }

    pub fn identity<'a>(edges: impl IntoIterator<Item = &'a EdgeId>) -> Self {
        Self {
            map: edges
                .into_iter()
                .map(|e| (e.clone(), (e.clone(), Sign::Plus)))
                .collect(),
        }
    }

    pub fn get(&self, e: &EdgeId) -> Result<&(EdgeId, Sign)> {
        self.map.get(e).ok_or_else(|| Error::UnknownEdge(e.clone()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&EdgeId, &(EdgeId, Sign))> {
        self.map.iter()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Self {
            map: self
                .map
                .iter()
                .map(|(a, (b, s))| (b.clone(), (a.clone(), *s)))
                .collect(),
        }
    }

    /// `other ∘ self`: first apply `self`, then `other`.
    pub fn then(&self, other: &EdgeBijection) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (a, (b, s)) in &self.map {
            let (c, t) = other.get(b)?;
            map.insert(a.clone(), (c.clone(), *s * *t));
        }
        Self::new(map)
    }

    /// Checks that the domain is exactly `E(g)` and the image exactly `E(g2)`.
    pub fn check_between(&self, g: &Multigraph, g2: &Multigraph) -> Result<()> {
        let domain: BTreeSet<_> = self.map.keys().collect();
        let image: BTreeSet<_> = self.map.values().map(|(e, _)| e).collect();
        if domain != g.edges().keys().collect() {
            return Err(Error::NotBijection(
                "domain differs from the source edge set".into(),
            ));
        }
        if image != g2.edges().keys().collect() {
            return Err(Error::NotBijection(
                "image differs from the target edge set".into(),
            ));
        }
        Ok(())
    }

    /// Letterwise image of a word in the free group.
    pub fn apply_word(&self, word: &Word) -> Result<Word> {
        word.letters()
            .iter()
            .map(|l| {
                let (e, s) = self.get(&l.edge)?;
                Ok(Letter::new(e.clone(), l.sign * *s))
            })
            .collect()
    }
}

/// Vertex correspondence `psi`, the vertex part of an isomorphism witness.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexMap(pub BTreeMap<VertexId, VertexId>);

impl VertexMap {
    pub fn get(&self, v: &VertexId) -> Option<&VertexId> {
        self.0.get(v)
    }

    /// True iff `self` is a vertex bijection `V(g) -> V(g2)` sending the
    /// base to the base, under which every edge maps onto its `phi` image with
    /// signed endpoints.
    pub fn is_witness(&self, g: &Multigraph, g2: &Multigraph, phi: &EdgeBijection) -> bool {
        let keys: BTreeSet<_> = self.0.keys().collect();
        let values: BTreeSet<_> = self.0.values().collect();
        if keys != g.vertices().iter().collect()
            || values != g2.vertices().iter().collect()
            || self.0.len() != values.len()
            || self.get(g.basepoint()) != Some(g2.basepoint())
            || phi.check_between(g, g2).is_err()
        {
            return false;
        }
        g.edges().iter().all(|(id, e)| {
            let Ok((id2, s)) = phi.get(id) else {
                return false;
            };
            let e2 = &g2.edges()[id2];
            self.get(&e.tail) == Some(e2.start(*s)) && self.get(&e.head) == Some(e2.end(*s))
        })
    }
}

/// Searches for a base-preserving vertex bijection compatible with `phi`.
///
/// Edge endpoints force the map on every non-isolated vertex; isolated
/// vertices are matched by backtracking over the remaining ones.
pub fn phi_is_isomorphism(
    g: &Multigraph,
    g2: &Multigraph,
    phi: &EdgeBijection,
) -> Option<VertexMap> {
    if g.vertex_count() != g2.vertex_count() || phi.check_between(g, g2).is_err() {
        return None;
    }
    let mut psi: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    let mut used: BTreeSet<VertexId> = BTreeSet::new();
    let mut assign = |psi: &mut BTreeMap<VertexId, VertexId>, v: &VertexId, w: &VertexId| -> bool {
        match psi.get(v) {
            Some(x) => x == w,
            None => {
                if !used.insert(w.clone()) {
                    return false;
                }
                psi.insert(v.clone(), w.clone());
                true
            }
        }
    };
    if !assign(&mut psi, g.basepoint(), g2.basepoint()) {
        return None;
    }
    for (id, e) in g.edges() {
        let (id2, s) = phi.get(id).ok()?;
        let e2 = &g2.edges()[id2];
        if !assign(&mut psi, &e.tail, e2.start(*s)) || !assign(&mut psi, &e.head, e2.end(*s)) {
            return None;
        }
    }
    let free: Vec<&VertexId> = g
        .vertices()
        .iter()
        .filter(|v| !psi.contains_key(*v))
        .collect();
    let targets: BTreeSet<&VertexId> = psi.values().collect();
    let open: Vec<&VertexId> = g2
        .vertices()
        .iter()
        .filter(|v| !targets.contains(v))
        .collect();
    let mut chosen = vec![usize::MAX; free.len()];
    let mut taken = vec![false; open.len()];
    if !match_isolated(g, g2, &free, &open, 0, &mut chosen, &mut taken) {
        return None;
    }
    for (v, &j) in free.iter().zip(&chosen) {
        psi.insert((*v).clone(), open[j].clone());
    }
    let witness = VertexMap(psi);
    debug_assert!(witness.is_witness(g, g2, phi));
    Some(witness)
}

// Vertices left unassigned after edge propagation carry no edges, so they may
// only go to vertices of g2 without edges.
fn match_isolated(
    g: &Multigraph,
    g2: &Multigraph,
    free: &[&VertexId],
    open: &[&VertexId],
    i: usize,
    chosen: &mut [usize],
    taken: &mut [bool],
) -> bool {
    if i == free.len() {
        return true;
    }
    for j in 0..open.len() {
        if taken[j] || g.degree(free[i]) != g2.degree(open[j]) {
            continue;
        }
        taken[j] = true;
        chosen[i] = j;
        if match_isolated(g, g2, free, open, i + 1, chosen, taken) {
            return true;
        }
        taken[j] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theta() -> Multigraph {
        Multigraph::from_edges("a", &[("e1", "a", "b"), ("e2", "a", "b"), ("e3", "a", "b")])
            .unwrap()
    }

    #[test]
    fn identity_is_isomorphism() {
        let g = theta();
        let psi = phi_is_isomorphism(&g, &g, &EdgeBijection::identity(g.edges().keys())).unwrap();
        assert_eq!(psi.get(&"a".into()), Some(&"a".into()));
        assert_eq!(psi.get(&"b".into()), Some(&"b".into()));
    }

    #[test]
    fn one_reversed_edge_fails() {
        let g = theta();
        let phi = EdgeBijection::from_triples(&[
            ("e1", "e1", Sign::Minus),
            ("e2", "e2", Sign::Plus),
            ("e3", "e3", Sign::Plus),
        ])
        .unwrap();
        assert!(phi_is_isomorphism(&g, &g, &phi).is_none());
    }

    #[test]
    fn vertex_counts_differ() {
        let d = Multigraph::from_edges("a", &[("e1", "a", "b"), ("e2", "a", "b")]).unwrap();
        let ll = Multigraph::from_edges("a", &[("e1", "a", "a"), ("e2", "a", "a")]).unwrap();
        for phi in [
            EdgeBijection::from_triples(&[("e1", "e1", Sign::Plus), ("e2", "e2", Sign::Plus)])
                .unwrap(),
            EdgeBijection::from_triples(&[("e1", "e2", Sign::Minus), ("e2", "e1", Sign::Plus)])
                .unwrap(),
        ] {
            assert!(phi_is_isomorphism(&d, &ll, &phi).is_none());
        }
    }

    #[test]
    fn isolated_vertices_matched() {
        let g = Multigraph::from_edges("a", &[("e1", "a", "a")])
            .unwrap()
            .with_vertex("x");
        let h = Multigraph::from_edges("p", &[("f1", "p", "p")])
            .unwrap()
            .with_vertex("q");
        let phi = EdgeBijection::from_triples(&[("e1", "f1", Sign::Minus)]).unwrap();
        let psi = phi_is_isomorphism(&g, &h, &phi).unwrap();
        assert_eq!(psi.get(&"x".into()), Some(&"q".into()));
    }

    #[test]
    fn non_injective_map_rejected() {
        assert!(
            EdgeBijection::from_triples(&[("e1", "f", Sign::Plus), ("e2", "f", Sign::Plus)])
                .is_err()
        );
    }

    #[test]
    fn composition_and_inverse() {
        let phi = EdgeBijection::from_triples(&[("a", "b", Sign::Minus), ("b", "a", Sign::Plus)])
            .unwrap();
        let id = phi.then(&phi.inverse()).unwrap();
        assert_eq!(
            id,
            EdgeBijection::from_triples(&[("a", "a", Sign::Plus), ("b", "b", Sign::Plus)]).unwrap()
        );
    }
}
