use graphvar::graph::{EdgeSet, Graph};
use graphvar::rigidity::{
    coupled_spanning_trees, is_pseudocircuit, laman_by_vertex_subsets, laman_independent,
    rigidity_circuits, rigidity_rank, DEFAULT_EDGE_CAP,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn pebble_game_matches_laman_on_all_subgraphs_of_k6() {
    let k6 = Graph::complete(6);
    for bits in 0u64..1 << k6.num_edges() {
        let f = EdgeSet(bits);
        assert_eq!(
            laman_independent(&k6, f),
            laman_by_vertex_subsets(&k6, f),
            "{f:?}"
        );
    }
}

#[test]
fn pebble_game_matches_laman_on_random_subgraphs_of_k7() {
    let k7 = Graph::complete(7);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        // bias toward dense subsets, where dependence is common
        let f = EdgeSet(rng.gen::<u64>() | rng.gen::<u64>()).intersection(k7.all_edges());
        assert_eq!(
            laman_independent(&k7, f),
            laman_by_vertex_subsets(&k7, f),
            "{f:?}"
        );
    }
}

#[test]
fn rank_is_monotone_and_submodular() {
    let k6 = Graph::complete(6);
    let all = k6.all_edges().bits();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..100 {
        let a = EdgeSet(rng.gen::<u64>() & all);
        let b = a.union(EdgeSet(rng.gen::<u64>() & all));
        let c = EdgeSet(rng.gen::<u64>() & all);
        let r = |f| rigidity_rank(&k6, f);
        assert!(r(a) <= r(b));
        assert!(r(b) <= b.len());
        assert!(r(a.union(c)) + r(a.intersection(c)) <= r(a) + r(c));
    }
}

#[test]
fn circuits_are_minimal_dependent_with_two_tree_decompositions() {
    for g in [Graph::complete(5), Graph::complete(6)] {
        for c in rigidity_circuits(&g, DEFAULT_EDGE_CAP).unwrap() {
            assert_eq!(c.len() + 2, 2 * g.support_size(c));
            assert!(!laman_independent(&g, c));
            assert!(c.iter().all(|e| laman_independent(&g, c.without(e))));
            if g.num_vertices() == 5 {
                assert!(is_pseudocircuit(&g.edge_subgraph(c)).is_some());
            }
        }
    }
    for r in 3..=6 {
        let w = Graph::wheel(r);
        let d = is_pseudocircuit(&w).expect("wheels are circuits");
        assert!(w.is_spanning_tree(d.tree_a) && w.is_spanning_tree(d.tree_b));
        assert_eq!(d.tree_a.union(d.tree_b), w.all_edges());
    }
}

#[test]
fn k6_circuit_count_matches_subset_filter() {
    // independent count: every edge subset whose support satisfies the
    // circuit count and all of whose single deletions are independent
    let k6 = Graph::complete(6);
    let found = rigidity_circuits(&k6, DEFAULT_EDGE_CAP).unwrap();
    let expected = (0u64..1 << k6.num_edges())
        .map(EdgeSet)
        .filter(|&f| {
            !f.is_empty()
                && f.len() + 2 == 2 * k6.support_size(f)
                && f.iter().all(|e| laman_by_vertex_subsets(&k6, f.without(e)))
        })
        .count();
    assert_eq!(found.len(), expected);
}

#[test]
fn coupled_trees_are_complement_closed() {
    let k4_with_ear = Graph::parse("1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n3 5\n4 5\n").unwrap();
    for g in [Graph::complete(4), Graph::wheel(5), k4_with_ear] {
        let trees = coupled_spanning_trees(&g);
        assert!(!trees.is_empty());
        for &t in &trees {
            let s = g.all_edges().difference(t);
            assert!(g.is_spanning_tree(t) && g.is_spanning_tree(s));
            assert!(trees.contains(&s));
        }
    }
}

proptest! {
    #[test]
    fn pebble_game_agrees_with_vertex_subset_count(bits in any::<u64>()) {
        let k7 = Graph::complete(7);
        let f = EdgeSet(bits).intersection(k7.all_edges());
        prop_assert_eq!(laman_independent(&k7, f), laman_by_vertex_subsets(&k7, f));
    }
}
