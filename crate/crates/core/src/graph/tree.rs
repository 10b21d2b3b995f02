use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::Rng;

use super::{EdgeId, Letter, Multigraph, Sign, VertexId, Word};
use crate::error::{Error, Result};

/// Grows a tree from the basepoint, always taking the frontier edge with the
/// smallest id. Loops never enter the tree.
pub fn spanning_tree(g: &Multigraph) -> Result<BTreeSet<EdgeId>> {
    grow_tree(g, |frontier| frontier.first().copied())
}

/// Same growth process with the frontier edge chosen uniformly at random.
/// Every spanning tree has positive probability.
pub fn random_spanning_tree<R: Rng + ?Sized>(
    g: &Multigraph,
    rng: &mut R,
) -> Result<BTreeSet<EdgeId>> {
    grow_tree(g, |frontier| {
        if frontier.is_empty() {
            None
        } else {
            Some(frontier[rng.gen_range(0..frontier.len())])
        }
    })
}

fn grow_tree<'g>(
    g: &'g Multigraph,
    mut pick: impl FnMut(&[&'g EdgeId]) -> Option<&'g EdgeId>,
) -> Result<BTreeSet<EdgeId>> {
    g.require_connected()?;
    let mut inside = BTreeSet::from([g.basepoint()]);
    let mut tree = BTreeSet::new();
    while inside.len() < g.vertex_count() {
        let frontier: Vec<&EdgeId> = g
            .edges()
            .iter()
            .filter(|(_, e)| inside.contains(&e.tail) != inside.contains(&e.head))
            .map(|(id, _)| id)
            .collect();
        let id = pick(&frontier).ok_or(Error::Disconnected)?;
        let e = &g.edges()[id];
        inside.insert(&e.tail);
        inside.insert(&e.head);
        tree.insert(id.clone());
    }
    Ok(tree)
}

/// Fundamental cycles for the deterministic spanning tree.
pub fn fundamental_cycles(g: &Multigraph) -> Result<Vec<Word>> {
    fundamental_cycles_for_tree(g, &spanning_tree(g)?)
}

/// For each non-tree edge `e = xy`, in increasing id order, the closed walk
/// `(tree path v0 -> x) e (tree path y -> v0)`.
pub fn fundamental_cycles_for_tree(g: &Multigraph, tree: &BTreeSet<EdgeId>) -> Result<Vec<Word>> {
    let to_root = paths_to_base(g, tree)?;
    let mut cycles = Vec::new();
    for (id, e) in g.edges() {
        if tree.contains(id) {
            continue;
        }
        let mut w = to_root[&e.tail].inverse();
        w.push(Letter::new(id.clone(), Sign::Plus));
        let w = w.concat(&to_root[&e.head]);
        cycles.push(w);
    }
    Ok(cycles)
}

/// Tree path from every vertex to the basepoint.
fn paths_to_base<'g>(
    g: &'g Multigraph,
    tree: &BTreeSet<EdgeId>,
) -> Result<BTreeMap<&'g VertexId, Word>> {
    let not_tree = || Error::NotSpanningTree(tree.iter().cloned().collect());
    if tree.len() + 1 != g.vertex_count() {
        return Err(not_tree());
    }
    let mut adj: BTreeMap<&VertexId, Vec<(&EdgeId, &VertexId, Sign)>> = BTreeMap::new();
    for id in tree {
        let (id, e) = g
            .edges()
            .get_key_value(id)
            .ok_or_else(|| Error::UnknownEdge(id.clone()))?;
        if e.is_loop() {
            return Err(not_tree());
        }
        adj.entry(&e.tail)
            .or_default()
            .push((id, &e.head, Sign::Plus));
        adj.entry(&e.head)
            .or_default()
            .push((id, &e.tail, Sign::Minus));
    }
    // paths[w] walks from w to the base; stepping v -> w across a tree edge
    // means w's path starts with the reverse step w -> v.
    let mut paths: BTreeMap<&VertexId, Word> = BTreeMap::from([(g.basepoint(), Word::empty())]);
    let mut queue = VecDeque::from([g.basepoint()]);
    while let Some(v) = queue.pop_front() {
        for &(id, w, sign) in adj.get(v).map(Vec::as_slice).unwrap_or_default() {
            if paths.contains_key(w) {
                continue;
            }
            let mut p = Word::new(vec![Letter::new(id.clone(), sign.flip())]);
            p = p.concat(&paths[v]);
            paths.insert(w, p);
            queue.push_back(w);
        }
    }
    if paths.len() != g.vertex_count() {
        return Err(not_tree());
    }
    Ok(paths)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(xs: &[&str]) -> BTreeSet<EdgeId> {
        xs.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn tree_examples() {
        let theta =
            Multigraph::from_edges("a", &[("e1", "a", "b"), ("e2", "a", "b"), ("e3", "a", "b")])
                .unwrap();
        assert_eq!(spanning_tree(&theta).unwrap(), ids(&["e1"]));
        let d = Multigraph::from_edges("a", &[("e1", "a", "b"), ("e2", "a", "b")]).unwrap();
        assert_eq!(spanning_tree(&d).unwrap(), ids(&["e1"]));
        let l = Multigraph::from_edges("a", &[("e1", "a", "a")]).unwrap();
        assert!(spanning_tree(&l).unwrap().is_empty());
    }

    #[test]
    fn cycle_examples() {
        let theta =
            Multigraph::from_edges("a", &[("e1", "a", "b"), ("e2", "a", "b"), ("e3", "a", "b")])
                .unwrap();
        let cycles = fundamental_cycles(&theta).unwrap();
        assert_eq!(
            cycles,
            vec![
                Word::from_powers(&[("e2", 1), ("e1", -1)]),
                Word::from_powers(&[("e3", 1), ("e1", -1)]),
            ]
        );
        let l = Multigraph::from_edges("a", &[("e1", "a", "a")]).unwrap();
        assert_eq!(
            fundamental_cycles(&l).unwrap(),
            vec![Word::from_powers(&[("e1", 1)])]
        );
        let d = Multigraph::from_edges("a", &[("e1", "a", "b"), ("e2", "a", "b")]).unwrap();
        assert_eq!(
            fundamental_cycles(&d).unwrap(),
            vec![Word::from_powers(&[("e2", 1), ("e1", -1)])]
        );
    }

    #[test]
    fn deeper_tree_paths() {
        // Square a-b-c-d-a with the chord missing; base a.
        let g = Multigraph::from_edges(
            "a",
            &[
                ("e1", "a", "b"),
                ("e2", "c", "b"),
                ("e3", "c", "d"),
                ("e4", "a", "d"),
            ],
        )
        .unwrap();
        assert_eq!(spanning_tree(&g).unwrap(), ids(&["e1", "e2", "e3"]));
        let cycles = fundamental_cycles(&g).unwrap();
        assert_eq!(
            cycles,
            vec![Word::from_powers(&[
                ("e4", 1),
                ("e3", -1),
                ("e2", 1),
                ("e1", -1)
            ])]
        );
        assert!(g.is_closed_walk(&cycles[0], g.basepoint()));
    }

    #[test]
    fn disconnected_rejected() {
        let g = Multigraph::from_edges("a", &[("e1", "a", "a")])
            .unwrap()
            .with_vertex("z");
        assert_eq!(spanning_tree(&g), Err(Error::Disconnected));
        assert_eq!(fundamental_cycles(&g), Err(Error::Disconnected));
    }

    #[test]
    fn bad_tree_rejected() {
        let d = Multigraph::from_edges("a", &[("e1", "a", "b"), ("e2", "a", "b")]).unwrap();
        assert!(fundamental_cycles_for_tree(&d, &ids(&[])).is_err());
        assert!(fundamental_cycles_for_tree(&d, &ids(&["e1", "e2"])).is_err());
    }
}
