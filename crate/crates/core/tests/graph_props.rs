mod common;

use std::collections::BTreeMap;

use proptest::prelude::*;

use trunc_pi1::field::Rationals;
use trunc_pi1::graph::{
    boundary, cycle_space, fundamental_cycles, fundamental_cycles_for_tree, phi_is_isomorphism,
    random_spanning_tree, spanning_tree, Chain1, EdgeId, Multigraph, VertexId,
};
use trunc_pi1::harness::{based_variants, enumerate_two_edge_connected, signed_bijections};
use trunc_pi1::linalg::{subspace_equal, Matrix};
use trunc_pi1::text::{parse_graph, write_graph};
use trunc_pi1::whitney::whitney_twist;

use common::*;

/// Connected components by union-find, ignoring one edge.
fn components_without(g: &Multigraph, skip: Option<&EdgeId>) -> usize {
    let index: BTreeMap<&VertexId, usize> = g.vertices().iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut parent: Vec<usize> = (0..index.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            p[x] = find(p, p[x]);
        }
        p[x]
    }
    for (id, e) in g.edges() {
        if Some(id) == skip {
            continue;
        }
        let (a, b) = (find(&mut parent, index[&e.tail]), find(&mut parent, index[&e.head]));
        parent[a] = b;
    }
    (0..index.len()).filter(|&i| find(&mut parent, i) == i).count()
}

fn chain_rows(g: &Multigraph, cycles: &[trunc_pi1::graph::Word]) -> Matrix<Rationals> {
    let order = g.edge_order();
    let mut m = Matrix::empty(Rationals, order.len());
    for w in cycles {
        m.push_row(Chain1::of_word(Rationals, w).to_row(&order)).unwrap();
    }
    m
}

proptest! {
    #![proptest_config(config(256))]

    #[test]
    fn bridges_match_edge_removal(g in arb_graph(5, 7)) {
        let base = components_without(&g, None);
        for id in g.edges().keys() {
            let is_bridge = components_without(&g, Some(id)) > base;
            prop_assert_eq!(g.bridges().contains(id), is_bridge, "edge {}", id);
        }
        prop_assert_eq!(g.is_two_edge_connected(), base == 1 && g.bridges().is_empty());
    }

    #[test]
    fn fundamental_cycles_are_closed(g in arb_connected(5, 7)) {
        let cycles = fundamental_cycles(&g).unwrap();
        prop_assert_eq!(cycles.len(), g.cyclomatic_number());
        for w in &cycles {
            prop_assert!(g.is_closed_walk(w, g.basepoint()));
            prop_assert!(boundary(&Chain1::of_word(Rationals, w), &g).unwrap().is_zero());
        }
    }

    #[test]
    fn cycle_space_is_spanned_by_fundamental_cycles(g in arb_connected(5, 7), seed in any::<u64>()) {
        let z = cycle_space(Rationals, &g).unwrap();
        prop_assert_eq!(z.rows(), g.cyclomatic_number());
        prop_assert!(subspace_equal(&chain_rows(&g, &fundamental_cycles(&g).unwrap()), &z).unwrap());
        let mut rng = rng(seed);
        for _ in 0..20 {
            let tree = random_spanning_tree(&g, &mut rng).unwrap();
            prop_assert_eq!(tree.len() + 1, g.vertex_count());
            let cycles = fundamental_cycles_for_tree(&g, &tree).unwrap();
            prop_assert!(subspace_equal(&chain_rows(&g, &cycles), &z).unwrap());
        }
    }

    #[test]
    fn text_round_trip(g in arb_graph(4, 6)) {
        prop_assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn relabeled_copy_is_isomorphic(g in arb_graph(4, 6), seed in any::<u64>()) {
        let (g2, phi, psi) = random_relabel(&mut rng(seed), &g);
        prop_assert!(psi.is_witness(&g, &g2, &phi));
        let found = phi_is_isomorphism(&g, &g2, &phi);
        prop_assert!(found.as_ref().is_some_and(|w| w.is_witness(&g, &g2, &phi)));
        prop_assert!(phi_is_isomorphism(&g2, &g, &phi.inverse()).is_some());
    }
}

#[test]
fn enumerated_graphs_round_trip() {
    for g in enumerate_two_edge_connected(4).iter().flat_map(based_variants) {
        assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
    }
}

#[test]
fn isomorphism_test_is_symmetric() {
    let based: Vec<Multigraph> = enumerate_two_edge_connected(3).iter().flat_map(based_variants).collect();
    for g in &based {
        for g2 in based.iter().filter(|h| h.edge_count() == g.edge_count()) {
            for phi in signed_bijections(&g.edge_order(), &g2.edge_order()) {
                let forward = phi_is_isomorphism(g, g2, &phi);
                let backward = phi_is_isomorphism(g2, g, &phi.inverse());
                assert_eq!(forward.is_some(), backward.is_some(), "{g:?} {g2:?} {phi:?}");
                if let (Some(f), Some(b)) = (forward, backward) {
                    for (v, w) in &f.0 {
                        assert_eq!(b.get(w), Some(v));
                    }
                }
            }
        }
    }
}

#[test]
fn deterministic_tree_is_a_tree() {
    for g in enumerate_two_edge_connected(5).iter().flat_map(based_variants) {
        let tree = spanning_tree(&g).unwrap();
        assert_eq!(tree.len() + 1, g.vertex_count());
        assert_eq!(spanning_tree(&g).unwrap(), tree);
    }
}

#[test]
fn random_twists_stay_two_edge_connected() {
    let mut rng = rng(11);
    for _ in 0..200 {
        let (g, u, v, side) = random_twist_input(&mut rng);
        let (g2, phi) = whitney_twist(&g, &u, &v, &side).unwrap();
        assert!(g2.is_two_edge_connected(), "{g:?} -> {g2:?}");
        assert_eq!(g2.vertex_count(), g.vertex_count());
        let z = cycle_space(Rationals, &g).unwrap();
        let z2 = cycle_space(Rationals, &g2).unwrap();
        // Reversing the twisted edges carries one cycle space onto the other.
        let order = g.edge_order();
        let mut pushed = Matrix::empty(Rationals, order.len());
        for row in z.iter_rows() {
            let mut c = Chain1::zero(Rationals);
            for (e, x) in order.iter().zip(row) {
                let (f, s) = phi.get(e).unwrap();
                c.add_term(f.clone(), &(x.clone() * q(s.value())));
            }
            pushed.push_row(c.to_row(&g2.edge_order())).unwrap();
        }
        assert!(subspace_equal(&pushed, &z2).unwrap());
    }
}

#[test]
fn enumeration_classes_are_pairwise_non_isomorphic() {
    let graphs = enumerate_two_edge_connected(4);
    for (i, g) in graphs.iter().enumerate() {
        assert!(g.is_two_edge_connected());
        for h in &graphs[i + 1..] {
            if g.edge_count() != h.edge_count() || g.vertex_count() != h.vertex_count() {
                continue;
            }
            // Unbased isomorphism: some basing of h matches g under some bijection.
            let iso = based_variants(h).iter().any(|hb| {
                signed_bijections(&g.edge_order(), &hb.edge_order())
                    .iter()
                    .any(|phi| phi_is_isomorphism(g, hb, phi).is_some())
            });
            assert!(!iso, "{g:?} and {h:?} are isomorphic");
        }
    }
}
