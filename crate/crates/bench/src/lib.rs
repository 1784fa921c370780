//! Trees shared by the benchmarks.

use depcross::{LinearArrangement, Tree};

/// Caterpillar: a spine of `n / 2` vertices with one leaf on each.
pub fn caterpillar(n: usize) -> Tree {
    let spine = n / 2;
    let mut edges: Vec<(usize, usize)> = (1..spine).map(|v| (v - 1, v)).collect();
    edges.extend((spine..n).map(|v| (v - spine, v)));
    Tree::from_edges(n, &edges).expect("a caterpillar is a tree")
}

/// Arrangement interleaving the two halves, which creates crossings.
pub fn interleaved(n: usize) -> LinearArrangement {
    let half = n / 2;
    let order: Vec<usize> = (0..half).flat_map(|i| [i, half + i]).chain(2 * half..n).collect();
    LinearArrangement::from_order(&order).expect("a permutation")
}
