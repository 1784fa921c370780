//! Undirected trees over the words of a sentence, their degree sequences and
//! topology classes.
//!
//! Vertices are dense indices `0..n`. [`Tree::from_labels`] accepts the
//! 1-based labels used in edge-list files and treebanks.

use crate::error::{Error, NotATreeReason, Result};
use crate::Rational;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tree {
    n: usize,
    /// Normalized `(min, max)` pairs, sorted.
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl Tree {
    /// Builds a tree from 0-based edges, validating edge count, self-loops,
    /// duplicates and connectivity.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Tree> {
        if n == 0 {
            return Err(Error::NotATree(NotATreeReason::Empty));
        }
        let mut normalized = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::NotATree(NotATreeReason::LabelOutOfRange { label: w }));
                }
            }
            if u == v {
                return Err(Error::NotATree(NotATreeReason::SelfLoop { vertex: u }));
            }
            normalized.push((u.min(v), u.max(v)));
        }
        normalized.sort_unstable();
        if let Some(w) = normalized.windows(2).find(|w| w[0] == w[1]) {
            let (u, v) = w[0];
            return Err(Error::NotATree(NotATreeReason::Duplicate { u, v }));
        }

        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &normalized {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        let reached = component_size(&adjacency, 0);
        if normalized.len() != n - 1 {
            let reason = if normalized.len() >= n && reached == n {
                NotATreeReason::Cycle
            } else {
                NotATreeReason::WrongEdgeCount { expected: n - 1, found: normalized.len() }
            };
            return Err(Error::NotATree(reason));
        }
        if reached != n {
            // n - 1 edges but not spanning: some component carries a cycle.
            return Err(Error::NotATree(NotATreeReason::Disconnected));
        }
        Ok(Tree { n, edges: normalized, adjacency })
    }

    /// Builds a tree from 1-based vertex labels.
    pub fn from_labels(n: usize, edges: &[(usize, usize)]) -> Result<Tree> {
        let mut zero_based = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            for w in [u, v] {
                if w == 0 || w > n {
                    return Err(Error::NotATree(NotATreeReason::LabelOutOfRange { label: w }));
                }
            }
            zero_based.push((u - 1, v - 1));
        }
        Tree::from_edges(n, &zero_based)
    }

    /// Star tree with the hub at vertex 0.
    pub fn star(n: usize) -> Tree {
        let edges: Vec<_> = (1..n).map(|v| (0, v)).collect();
        Tree::from_edges(n, &edges).expect("star is a tree")
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Tree {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Tree::from_edges(n, &edges).expect("path is a tree")
    }

    /// Quasi-star: hub 0 joined to `1..n-1`, and vertex `n-1` hanging from 1.
    pub fn quasi_star(n: usize) -> Result<Tree> {
        if n < 3 {
            return Err(Error::DomainTooSmall { what: "quasi-star tree", n, min: 3 });
        }
        let mut edges: Vec<_> = (1..n - 1).map(|v| (0, v)).collect();
        edges.push((1, n - 1));
        Tree::from_edges(n, &edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    pub fn leaves(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&v| self.degree(v) == 1)
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        DegreeProfile::new(self.degrees())
    }

    pub fn classify(&self) -> TreeClass {
        TreeClass::of_degrees(&self.degrees())
    }

    /// Removes `leaf` and compacts the labels above it. Returns the reduced
    /// tree and the degree (in `self`) of the vertex the leaf hung from, so
    /// that `K2(self) = K2(reduced) + 2k`.
    pub fn reduce_leaf(&self, leaf: usize) -> Result<(Tree, usize)> {
        if self.n < 2 {
            return Err(Error::DomainTooSmall { what: "leaf removal", n: self.n, min: 2 });
        }
        if leaf >= self.n || self.degree(leaf) != 1 {
            return Err(Error::NotALeaf { vertex: leaf });
        }
        let attachment = self.adjacency[leaf][0];
        let k = self.degree(attachment);
        let relabel = |w: usize| if w > leaf { w - 1 } else { w };
        let edges: Vec<_> = self
            .edges
            .iter()
            .filter(|&&(u, v)| u != leaf && v != leaf)
            .map(|&(u, v)| (relabel(u), relabel(v)))
            .collect();
        Ok((Tree::from_edges(self.n - 1, &edges)?, k))
    }
}

fn component_size(adjacency: &[Vec<usize>], start: usize) -> usize {
    let mut seen = vec![false; adjacency.len()];
    let mut stack = vec![start];
    seen[start] = true;
    let mut count = 0;
    while let Some(v) = stack.pop() {
        count += 1;
        for &w in &adjacency[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    count
}

/// Degree sequence and its moments. `K_a` is the sum of degrees raised to `a`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    pub degrees: Vec<usize>,
    pub k1: u64,
    pub k2: u64,
}

impl DegreeProfile {
    pub fn new(degrees: Vec<usize>) -> DegreeProfile {
        let k1 = degrees.iter().map(|&k| k as u64).sum();
        let k2 = degrees.iter().map(|&k| (k * k) as u64).sum();
        DegreeProfile { degrees, k1, k2 }
    }

    pub fn n(&self) -> usize {
        self.degrees.len()
    }

    /// `<k> = K1 / n`.
    pub fn mean_k(&self) -> Rational {
        Rational::new(self.k1 as i64, self.n() as i64)
    }

    /// `<k^2> = K2 / n`.
    pub fn mean_k2(&self) -> Rational {
        Rational::new(self.k2 as i64, self.n() as i64)
    }

    /// `V[k] = <k^2> - <k>^2`.
    pub fn var_k(&self) -> Rational {
        let mean = self.mean_k();
        self.mean_k2() - mean * mean
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0)
    }
}

/// Topology class. The classes overlap for small trees; [`TreeClass::of_degrees`]
/// resolves overlaps by the precedence `Star > QuasiStar > Linear`, so the
/// 3-vertex path is a `Star`. Quasi-stars are only reported from `n = 5` on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum TreeClass {
    Star,
    QuasiStar,
    Linear,
    Other,
}

impl TreeClass {
    pub fn of_degrees(degrees: &[usize]) -> TreeClass {
        let n = degrees.len();
        let max = degrees.iter().copied().max().unwrap_or(0);
        if n <= 1 || max == n - 1 {
            return TreeClass::Star;
        }
        // At n = 4 the path also matches the quasi-star degree multiset
        // {2, 2, 1, 1}; it is reported as Linear.
        if n >= 5 && max == n - 2 {
            let twos = degrees.iter().filter(|&&k| k == 2).count();
            let ones = degrees.iter().filter(|&&k| k == 1).count();
            if twos == 1 && ones == n - 2 {
                return TreeClass::QuasiStar;
            }
        }
        if max <= 2 {
            TreeClass::Linear
        } else {
            TreeClass::Other
        }
    }
}

/// Sum of squared degrees of a quasi-star tree, `n^2 - 3n + 6`.
pub fn k2_quasi(n: usize) -> Result<u64> {
    if n < 3 {
        return Err(Error::DomainTooSmall { what: "quasi-star tree", n, min: 3 });
    }
    let n = n as u64;
    Ok(n * n - 3 * n + 6)
}

/// Sum of squared degrees of a star tree, `n(n - 1)`.
pub fn k2_star(n: usize) -> Result<u64> {
    if n < 2 {
        return Err(Error::DomainTooSmall { what: "star tree", n, min: 2 });
    }
    let n = n as u64;
    Ok(n * (n - 1))
}

const UNLABELED_TREES: [u64; 19] = [
    1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551, 1301, 3159, 7741, 19320, 48629, 123867, 317955,
];

/// Number of unlabeled trees on `n` vertices (OEIS A000055), tabulated for `1..=19`.
pub fn unlabeled_tree_count(n: usize) -> Result<u64> {
    match n {
        1..=19 => Ok(UNLABELED_TREES[n - 1]),
        _ => Err(Error::OutOfTableRange { n }),
    }
}
