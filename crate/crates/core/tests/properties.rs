mod common;

use common::*;
use depcross::arrangement::c_max;
use depcross::extremal::d_min_noncrossing;
use depcross::{count_crossings, sum_lengths, LinearArrangement, Tree};
use proptest::prelude::*;
use proptest::sample::Index;

fn tree_and_order() -> impl Strategy<Value = (Tree, Vec<usize>, Vec<usize>)> {
    (2usize..=14).prop_flat_map(|n| {
        let ids: Vec<usize> = (0..n).collect();
        (
            proptest::collection::vec(any::<Index>(), n - 1),
            Just(ids.clone()).prop_shuffle(),
            Just(ids.clone()).prop_shuffle(),
            Just(ids).prop_shuffle(),
        )
            .prop_map(|(picks, relabel, positions, perm)| {
                let parents: Vec<usize> = picks.iter().enumerate().map(|(i, ix)| ix.index(i + 1)).collect();
                (tree_from_parents(&parents, &relabel), positions, perm)
            })
    })
}

proptest! {
    #[test]
    fn crossings_agree_with_oracle((tree, positions, _) in tree_and_order()) {
        let arr = arrangement(&positions);
        let count = count_crossings(&arr, &tree).unwrap();
        prop_assert_eq!(count.total, crossings_oracle(&tree, &positions));
        prop_assert_eq!(sum_lengths(&arr, &tree).unwrap(), length_oracle(&tree, &positions));
        prop_assert!(count.total <= c_max(&tree));
        prop_assert_eq!(count.per_edge.values().sum::<u64>(), 2 * count.total);
        for (&(u, v), &k) in &count.per_edge {
            prop_assert!(k as usize <= tree.n() - tree.degree(u) - tree.degree(v));
        }
    }

    #[test]
    fn reversal_and_relabeling_preserve_c_and_d((tree, positions, perm) in tree_and_order()) {
        let arr = arrangement(&positions);
        let c = count_crossings(&arr, &tree).unwrap().total;
        let d = sum_lengths(&arr, &tree).unwrap();
        let rev = arr.reversed();
        prop_assert_eq!(count_crossings(&rev, &tree).unwrap().total, c);
        prop_assert_eq!(sum_lengths(&rev, &tree).unwrap(), d);
        // rename vertex v to perm[v], keeping every word in place
        let edges: Vec<(usize, usize)> = tree.edges().iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        let renamed = Tree::from_edges(tree.n(), &edges).unwrap();
        let mut moved = vec![0; tree.n()];
        for v in 0..tree.n() {
            moved[perm[v]] = positions[v];
        }
        let moved = arrangement(&moved);
        prop_assert_eq!(count_crossings(&moved, &renamed).unwrap().total, c);
        prop_assert_eq!(sum_lengths(&moved, &renamed).unwrap(), d);
        prop_assert!(d as usize >= tree.n() - 1);
    }

    #[test]
    fn noncrossing_minimum_is_planar((tree, _, _) in tree_and_order()) {
        let e = d_min_noncrossing(&tree);
        prop_assert_eq!(crossings_oracle(&tree, e.witness.positions()), 0);
        prop_assert_eq!(length_oracle(&tree, e.witness.positions()), e.d);
        let n = tree.n();
        prop_assert!(e.d as usize <= n * (n - 1) / 2);
        prop_assert!(e.d as usize >= n - 1);
    }

    #[test]
    fn position_order_round_trip(perm in Just((0..12usize).collect::<Vec<_>>()).prop_shuffle()) {
        let arr = LinearArrangement::from_order(&perm).unwrap();
        prop_assert_eq!(arr.order(), perm.clone());
        prop_assert_eq!(LinearArrangement::from_positions(arr.positions().to_vec()).unwrap(), arr);
    }
}
