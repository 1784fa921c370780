//! Linear arrangements and the quantities observed on them: dependency
//! lengths, their sum `D`, and edge crossings `C`.

use crate::error::{Error, Result};
use crate::tree::Tree;
use crate::Rational;
use std::collections::BTreeMap;

/// Bijection from vertices to positions. Positions are stored 0-based;
/// only differences between positions are ever observable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearArrangement {
    positions: Vec<usize>,
}

impl LinearArrangement {
    pub fn identity(n: usize) -> LinearArrangement {
        LinearArrangement { positions: (0..n).collect() }
    }

    /// `positions[v]` is the 0-based position of vertex `v`.
    pub fn from_positions(positions: Vec<usize>) -> Result<LinearArrangement> {
        let n = positions.len();
        let mut used = vec![false; n];
        for &p in &positions {
            if p >= n || std::mem::replace(&mut used[p], true) {
                return Err(Error::NotBijective { n });
            }
        }
        Ok(LinearArrangement { positions })
    }

    /// `order[i]` is the vertex at 0-based position `i`.
    pub fn from_order(order: &[usize]) -> Result<LinearArrangement> {
        let n = order.len();
        let mut positions = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            if v >= n || positions[v] != usize::MAX {
                return Err(Error::NotBijective { n });
            }
            positions[v] = i;
        }
        Ok(LinearArrangement { positions })
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// 0-based position of `v`.
    pub fn position(&self, v: usize) -> usize {
        self.positions[v]
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    /// Vertices listed by increasing position.
    pub fn order(&self) -> Vec<usize> {
        let mut order = vec![0; self.len()];
        for (v, &p) in self.positions.iter().enumerate() {
            order[p] = v;
        }
        order
    }

    /// The mirror image, `pi(v) -> n + 1 - pi(v)`.
    pub fn reversed(&self) -> LinearArrangement {
        let n = self.len();
        LinearArrangement { positions: self.positions.iter().map(|&p| n - 1 - p).collect() }
    }

    pub(crate) fn check_covers(&self, tree: &Tree) -> Result<()> {
        if self.len() != tree.n() {
            return Err(Error::SizeMismatch { expected: tree.n(), found: self.len() });
        }
        Ok(())
    }
}

/// `|pi(u) - pi(v)|`.
pub fn edge_length(arr: &LinearArrangement, u: usize, v: usize) -> Result<usize> {
    if u == v {
        return Err(Error::SameVertex { vertex: u });
    }
    Ok(arr.position(u).abs_diff(arr.position(v)))
}

/// Sum of dependency lengths `D`.
pub fn sum_lengths(arr: &LinearArrangement, tree: &Tree) -> Result<u64> {
    arr.check_covers(tree)?;
    Ok(tree.edges().iter().map(|&(u, v)| arr.position(u).abs_diff(arr.position(v)) as u64).sum())
}

/// Mean dependency length `D / (n - 1)`; `None` for the single-vertex tree.
pub fn mean_length(arr: &LinearArrangement, tree: &Tree) -> Result<Option<Rational>> {
    let d = sum_lengths(arr, tree)?;
    Ok((tree.n() > 1).then(|| Rational::new(d as i64, tree.n() as i64 - 1)))
}

/// Whether two edges cross. Edges sharing a vertex never cross.
pub fn edges_cross(arr: &LinearArrangement, e1: (usize, usize), e2: (usize, usize)) -> bool {
    if e1.0 == e2.0 || e1.0 == e2.1 || e1.1 == e2.0 || e1.1 == e2.1 {
        return false;
    }
    let span = |(u, v): (usize, usize)| {
        let (a, b) = (arr.position(u), arr.position(v));
        (a.min(b), a.max(b))
    };
    intervals_interleave(span(e1), span(e2))
}

#[inline]
pub(crate) fn intervals_interleave((a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

/// Number of crossings `C`, plus `C(u, v)` for each edge (keyed by the
/// normalized edge).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingCount {
    pub total: u64,
    pub per_edge: BTreeMap<(usize, usize), u64>,
}

pub fn count_crossings(arr: &LinearArrangement, tree: &Tree) -> Result<CrossingCount> {
    arr.check_covers(tree)?;
    let edges = tree.edges();
    let mut per_edge: BTreeMap<_, _> = edges.iter().map(|&e| (e, 0)).collect();
    let mut total = 0;
    for (i, &e1) in edges.iter().enumerate() {
        for &e2 in &edges[i + 1..] {
            if edges_cross(arr, e1, e2) {
                total += 1;
                *per_edge.get_mut(&e1).unwrap() += 1;
                *per_edge.get_mut(&e2).unwrap() += 1;
            }
        }
    }
    Ok(CrossingCount { total, per_edge })
}

/// Pairs of edges (as indices into `tree.edges()`) that share no vertex:
/// the only pairs that can cross.
pub fn independent_edge_pairs(tree: &Tree) -> Vec<(usize, usize)> {
    let edges = tree.edges();
    let mut pairs = Vec::new();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let ((a, b), (c, d)) = (edges[i], edges[j]);
            if a != c && a != d && b != c && b != d {
                pairs.push((i, j));
            }
        }
    }
    pairs
}

/// Potential number of crossings, `C_max = n(n - 1 - <k^2>)/2`: the number
/// of pairs of edges that share no vertex.
pub fn c_max(tree: &Tree) -> u64 {
    let n = tree.n() as u64;
    (n * (n - 1) - tree.degree_profile().k2) / 2
}
