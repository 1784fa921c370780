//! Extremal values of `D` over all arrangements of a tree.
//!
//! `D_min` and `D_max` are exact: `D` equals the sum, over the `n - 1` cuts
//! between consecutive positions, of the number of edges crossing the cut,
//! so the optimum is a shortest (longest) path through the lattice of vertex
//! subsets. That costs `O(2^n n)` time and memory, hence [`MAX_EXACT_N`].
//!
//! The minimum over non-crossing arrangements is polynomial. An arrangement
//! without crossings is projective with respect to its leftmost vertex, so
//! the minimum is taken over roots of the minimum projective arrangement,
//! where every subtree occupies an interval.

use crate::arrangement::LinearArrangement;
use crate::error::{Error, Result};
use crate::tree::Tree;

/// Largest `n` accepted by [`d_min`] and [`d_max`].
pub const MAX_EXACT_N: usize = 22;

/// An optimal value of `D` with an arrangement attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extremum {
    pub d: u64,
    pub witness: LinearArrangement,
}

#[derive(Clone, Copy)]
enum Goal {
    Min,
    Max,
}

/// Minimum sum of dependency lengths. Among optimal arrangements the witness
/// has the lexicographically smallest vertex order.
pub fn d_min(tree: &Tree) -> Result<Extremum> {
    subset_optimum(tree, Goal::Min)
}

/// Maximum sum of dependency lengths, witness chosen as in [`d_min`].
pub fn d_max(tree: &Tree) -> Result<Extremum> {
    subset_optimum(tree, Goal::Max)
}

fn subset_optimum(tree: &Tree, goal: Goal) -> Result<Extremum> {
    let n = tree.n();
    if n > MAX_EXACT_N {
        return Err(Error::TooLarge { what: "exact linear arrangement", n, max: MAX_EXACT_N });
    }
    let full: usize = (1 << n) - 1;
    let neighbor_mask: Vec<u32> =
        (0..n).map(|v| tree.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w)).collect();

    // cut[S] = number of edges with exactly one endpoint in S
    let mut cut = vec![0u16; full + 1];
    for s in 1..=full {
        let v = s.trailing_zeros() as usize;
        let rest = s & (s - 1);
        let inside = (neighbor_mask[v] & rest as u32).count_ones() as i32;
        cut[s] = (cut[rest] as i32 + tree.degree(v) as i32 - 2 * inside) as u16;
    }

    // best[S] = optimal cost of placing the vertices outside S after the
    // prefix S, counting the cuts of every prefix that strictly contains S.
    let better = |a: u32, b: u32| match goal {
        Goal::Min => a < b,
        Goal::Max => a > b,
    };
    let mut best = vec![0u32; full + 1];
    for s in (0..full).rev() {
        let mut acc: Option<u32> = None;
        let mut free = full & !s;
        while free != 0 {
            let v = free.trailing_zeros();
            free &= free - 1;
            let next = s | 1 << v;
            let cost = best[next] + if next == full { 0 } else { cut[next] as u32 };
            if acc.is_none_or(|a| better(cost, a)) {
                acc = Some(cost);
            }
        }
        best[s] = acc.unwrap_or(0);
    }

    let mut order = Vec::with_capacity(n);
    let mut s = 0usize;
    while s != full {
        let v = (0..n)
            .find(|&v| {
                let next = s | 1 << v;
                s & 1 << v == 0
                    && best[next] + if next == full { 0 } else { cut[next] as u32 } == best[s]
            })
            .expect("some extension attains the optimum");
        order.push(v);
        s |= 1 << v;
    }
    Ok(Extremum { d: best[0] as u64, witness: LinearArrangement::from_order(&order)? })
}

/// Minimum `D` among arrangements without crossings. Every tree has one.
pub fn d_min_noncrossing(tree: &Tree) -> Extremum {
    let n = tree.n();
    let mut best: Option<(u64, usize)> = None;
    for root in 0..n {
        let plan = ProjectivePlan::new(tree, root);
        let cost = plan.root_cost();
        if best.is_none_or(|(b, _)| cost < b) {
            best = Some((cost, root));
        }
    }
    let (d, root) = best.expect("a tree has at least one vertex");
    let order = ProjectivePlan::new(tree, root).order();
    Extremum { d, witness: LinearArrangement::from_order(&order).expect("a permutation") }
}

/// Minimum `D` over arrangements that are projective for `root` (no edge
/// covers the root and nothing crosses).
pub fn d_min_projective(tree: &Tree, root: usize) -> Extremum {
    let plan = ProjectivePlan::new(tree, root);
    let d = plan.root_cost();
    let order = plan.order();
    Extremum { d, witness: LinearArrangement::from_order(&order).expect("a permutation") }
}

/// Optimal interval layout of every subtree hanging from `root`.
///
/// For a vertex `u` with children `c_1..c_m`, each child's subtree is an
/// interval on the left or right of `u`. The edge `u - c` is as long as the
/// intervals between `u` and the interval of `c`, plus the offset of `c`
/// from the inner end of its own interval, plus one. Summed over children,
/// a child's size is counted once for each sibling placed further out on the
/// same side. When `u` is not the root, its parent sits outside the interval
/// of `u` (say to the left) and every subtree placed left of `u` also
/// stretches the parent edge, which adds one more unit of weight there.
///
/// Assigning the largest subtrees the smallest weights is optimal by the
/// rearrangement inequality, and the available weights are `0, 1, 2, ...`
/// on the right and `1, 2, ...` (or `0, 1, ...` at the root) on the left.
struct ProjectivePlan<'a> {
    tree: &'a Tree,
    root: usize,
    parent: Vec<usize>,
    size: Vec<usize>,
    /// Internal cost plus offset of the vertex from the end facing its parent.
    anchored: Vec<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

impl<'a> ProjectivePlan<'a> {
    fn new(tree: &'a Tree, root: usize) -> ProjectivePlan<'a> {
        let n = tree.n();
        let mut parent = vec![usize::MAX; n];
        let mut preorder = Vec::with_capacity(n);
        let mut stack = vec![root];
        parent[root] = root;
        while let Some(u) = stack.pop() {
            preorder.push(u);
            for &w in tree.neighbors(u) {
                if parent[w] == usize::MAX {
                    parent[w] = u;
                    stack.push(w);
                }
            }
        }
        let mut plan =
            ProjectivePlan { tree, root, parent, size: vec![1; n], anchored: vec![0; n] };
        for &u in preorder.iter().rev() {
            let children = plan.sorted_children(u);
            plan.size[u] += children.iter().map(|&c| plan.size[c]).sum::<usize>();
            plan.anchored[u] = plan.layout_cost(&children, true);
        }
        plan
    }

    /// Children by decreasing subtree size, ties by label.
    fn sorted_children(&self, u: usize) -> Vec<usize> {
        let mut children: Vec<usize> =
            self.tree.neighbors(u).iter().copied().filter(|&w| self.parent[w] == u && w != u).collect();
        children.sort_by(|&a, &b| self.size[b].cmp(&self.size[a]).then(a.cmp(&b)));
        children
    }

    /// Side and weight for the i-th largest child.
    fn slot(i: usize, anchored: bool) -> (Side, u64) {
        if anchored {
            // weights 0R, 1R, 1L, 2R, 2L, ...
            if i == 0 {
                (Side::Right, 0)
            } else if i % 2 == 1 {
                (Side::Right, (i as u64).div_ceil(2))
            } else {
                (Side::Left, i as u64 / 2)
            }
        } else if i.is_multiple_of(2) {
            // weights 0R, 0L, 1R, 1L, ...
            (Side::Right, i as u64 / 2)
        } else {
            (Side::Left, i as u64 / 2)
        }
    }

    fn layout_cost(&self, children: &[usize], anchored: bool) -> u64 {
        children
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                let (_, weight) = Self::slot(i, anchored);
                weight * self.size[c] as u64 + self.anchored[c] + 1
            })
            .sum()
    }

    fn root_cost(&self) -> u64 {
        self.layout_cost(&self.sorted_children(self.root), false)
    }

    fn order(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.tree.n());
        self.emit(self.root, false, false, &mut out);
        out
    }

    /// Appends the subtree of `u`, left to right. `mirrored` flips the layout
    /// so that an anchored vertex sits near the right end.
    fn emit(&self, u: usize, anchored: bool, mirrored: bool, out: &mut Vec<usize>) {
        let children = self.sorted_children(u);
        let mut left: Vec<(u64, usize)> = Vec::new();
        let mut right: Vec<(u64, usize)> = Vec::new();
        for (i, &c) in children.iter().enumerate() {
            let (side, weight) = Self::slot(i, anchored);
            let side = match (side, mirrored) {
                (s, false) => s,
                (Side::Left, true) => Side::Right,
                (Side::Right, true) => Side::Left,
            };
            match side {
                Side::Left => left.push((weight, c)),
                Side::Right => right.push((weight, c)),
            }
        }
        // Weight 0 is the outermost slot on its side.
        left.sort();
        right.sort_by(|a, b| b.cmp(a));
        for &(_, c) in &left {
            self.emit(c, true, true, out);
        }
        out.push(u);
        for &(_, c) in &right {
            self.emit(c, true, false, out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{count_crossings, sum_lengths};

    #[test]
    fn path_and_star() {
        let path = Tree::path(9);
        assert_eq!(d_min(&path).unwrap().d, 8);
        assert_eq!(d_min_noncrossing(&path).d, 8);
        // star with the hub in the middle: 2 * (1 + 2 + 3 + 4) = 20
        let star = Tree::star(9);
        assert_eq!(d_min(&star).unwrap().d, 20);
        assert_eq!(d_min_noncrossing(&star).d, 20);
        let witness = d_min_noncrossing(&star).witness;
        assert_eq!(witness.position(0), 4);
        // hub at an end: n(n-1)/2
        assert_eq!(d_max(&star).unwrap().d, 36);
    }

    #[test]
    fn witnesses_attain_the_optimum() {
        let t = Tree::from_edges(7, &[(0, 1), (1, 2), (1, 3), (3, 4), (4, 5), (4, 6)]).unwrap();
        for e in [d_min(&t).unwrap(), d_max(&t).unwrap(), d_min_noncrossing(&t)] {
            assert_eq!(sum_lengths(&e.witness, &t).unwrap(), e.d);
        }
        let nc = d_min_noncrossing(&t);
        assert_eq!(count_crossings(&nc.witness, &t).unwrap().total, 0);
    }

    #[test]
    fn lexicographically_smallest_witness() {
        // every order of the path 0-1-2 with 1 in the middle has D = 2
        let e = d_min(&Tree::path(3)).unwrap();
        assert_eq!(e.witness.order(), vec![0, 1, 2]);
        let e = d_max(&Tree::path(3)).unwrap();
        assert_eq!(e.d, 3);
        assert_eq!(e.witness.order(), vec![0, 2, 1]);
    }

    #[test]
    fn tiny_trees() {
        let single = Tree::path(1);
        assert_eq!(d_min(&single).unwrap().d, 0);
        assert_eq!(d_max(&single).unwrap().d, 0);
        assert_eq!(d_min_noncrossing(&single).d, 0);
        assert_eq!(d_min(&Tree::path(2)).unwrap().d, 1);
    }

    #[test]
    fn too_large() {
        assert!(matches!(d_min(&Tree::path(MAX_EXACT_N + 1)), Err(Error::TooLarge { .. })));
        // the non-crossing minimum has no size limit
        assert_eq!(d_min_noncrossing(&Tree::path(60)).d, 59);
    }
}
