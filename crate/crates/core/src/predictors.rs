//! Closed-form predictors of `C` and `D` under random-arrangement null
//! hypotheses. All results are exact rationals.

use crate::arrangement::LinearArrangement;
use crate::error::{Error, Result};
use crate::tree::Tree;
use crate::Rational;
use serde::Serialize;

fn int(x: i64) -> Rational {
    Rational::from_integer(x)
}

/// `E0[C] = (n/6)(n - 1 - <k^2>)`: expected crossings in a uniformly random
/// arrangement of a tree with the given degree second moment.
pub fn e0_crossings(n: usize, mean_k2: Rational) -> Rational {
    Rational::new(n as i64, 6) * (int(n as i64 - 1) - mean_k2)
}

pub fn e0_crossings_of(tree: &Tree) -> Rational {
    e0_crossings(tree.n(), tree.degree_profile().mean_k2())
}

/// `E0[C]` of a linear tree, `n(n - 5)/6 + 1`; the maximum over trees of size `n`.
pub fn e0_crossings_linear(n: usize) -> Result<Rational> {
    if n < 2 {
        return Err(Error::DomainTooSmall { what: "linear tree", n, min: 2 });
    }
    let n = n as i64;
    Ok(Rational::new(n * (n - 5), 6) + 1)
}

/// `E0[C]` of a quasi-star tree, `n/3 - 1`.
pub fn e0_crossings_quasi(n: usize) -> Result<Rational> {
    if n < 3 {
        return Err(Error::DomainTooSmall { what: "quasi-star tree", n, min: 3 });
    }
    Ok(Rational::new(n as i64, 3) - 1)
}

/// Average of `E0[C]` over uniformly random labeled trees,
/// `(1/6)(n - 1)(n - 5 + 6/n)`.
pub fn expected_e0_random_labeled(n: usize) -> Rational {
    let n = n as i64;
    Rational::new(n - 1, 6) * (int(n - 5) + Rational::new(6, n))
}

/// Degree variance of uniformly random labeled trees, `(1 - 1/n)(1 - 2/n)`.
pub fn degree_variance_random_labeled(n: usize) -> Rational {
    let n = n as i64;
    (int(1) - Rational::new(1, n)) * (int(1) - Rational::new(2, n))
}

/// Expected `<k^2>` of uniformly random labeled trees, `(1 - 1/n)(5 - 6/n)`.
pub fn mean_k2_random_labeled(n: usize) -> Rational {
    let n = n as i64;
    (int(1) - Rational::new(1, n)) * (int(5) - Rational::new(6, n))
}

/// Smallest `<k^2>` compatible with `E0[C] <= a`: `n - 1 - 6a/n`.
pub fn min_k2_for_crossing_budget(n: usize, a: Rational) -> Result<Rational> {
    if n == 0 {
        return Err(Error::DomainTooSmall { what: "crossing budget", n, min: 1 });
    }
    if a < int(0) {
        return Err(Error::InvalidParameter(format!("crossing budget must be >= 0, got {a}")));
    }
    Ok(int(n as i64 - 1) - a * 6 / n as i64)
}

/// `3a + 3`: for `n` strictly above this, only a star tree keeps `E0[C] <= a`.
pub fn star_forced_threshold(a: Rational) -> Result<Rational> {
    if a < int(0) {
        return Err(Error::InvalidParameter(format!("crossing budget must be >= 0, got {a}")));
    }
    Ok(a * 3 + 3)
}

/// `E0[D] = (n - 1)(n + 1)/3`.
pub fn e0_length(n: usize) -> Rational {
    let n = n as i64;
    Rational::new((n - 1) * (n + 1), 3)
}

/// Probability that two vertex-disjoint edges cross when one of them has
/// length `d` and the other is placed at random: `2(d-1)(n-d-1)/((n-2)(n-3))`.
pub fn p_cross_given_d(n: usize, d: usize) -> Result<Rational> {
    if n < 4 {
        return Err(Error::TooFewVertices { n });
    }
    check_length(n, d)?;
    let (n, d) = (n as i64, d as i64);
    Ok(Rational::new(2 * (d - 1) * (n - d - 1), (n - 2) * (n - 3)))
}

/// Probability that a randomly placed edge has length `d`: `2(n-d)/(n(n-1))`.
pub fn p_length(n: usize, d: usize) -> Result<Rational> {
    if n < 2 {
        return Err(Error::DomainTooSmall { what: "edge length distribution", n, min: 2 });
    }
    check_length(n, d)?;
    let (n, d) = (n as i64, d as i64);
    Ok(Rational::new(2 * (n - d), n * (n - 1)))
}

fn check_length(n: usize, d: usize) -> Result<()> {
    if d == 0 || d >= n {
        return Err(Error::LengthOutOfRange { n, d, max: n - 1 });
    }
    Ok(())
}

/// Upper bound of `p(cross|d)` attained at `d = n/2`: `(n^2/2 - 2(n-1))/((n-2)(n-3))`.
pub fn p_cross_max(n: usize) -> Result<Rational> {
    if n < 4 {
        return Err(Error::TooFewVertices { n });
    }
    let n = n as i64;
    Ok((Rational::new(n * n, 2) - 2 * (n - 1)) / ((n - 2) * (n - 3)))
}

/// `E1[C]` and its decomposition `E1[C] = (B2 - B1)/((n-2)(n-3))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct E1Report {
    pub e1: Rational,
    /// `n(n-1)(n-1-<k^2>)`, depends only on degrees.
    pub b1: i64,
    /// `sum over edges of (n - k_u - k_v)(n - d_uv) d_uv`.
    pub b2: i64,
}

/// Per-edge weight `n - k_u - k_v`: the number of edges that could cross it.
pub(crate) fn crossable_weights(tree: &Tree) -> Vec<i64> {
    let n = tree.n() as i64;
    tree.edges()
        .iter()
        .map(|&(u, v)| n - tree.degree(u) as i64 - tree.degree(v) as i64)
        .collect()
}

pub(crate) fn b1(tree: &Tree) -> i64 {
    (tree.n() as i64 - 1) * crossable_weights(tree).iter().sum::<i64>()
}

/// `B2` of an arrangement given precomputed [`crossable_weights`].
#[inline]
pub(crate) fn b2_with(tree: &Tree, weights: &[i64], positions: &[usize]) -> i64 {
    let n = tree.n() as i64;
    tree.edges()
        .iter()
        .zip(weights)
        .map(|(&(u, v), &w)| {
            let d = positions[u].abs_diff(positions[v]) as i64;
            w * (n - d) * d
        })
        .sum()
}

pub(crate) fn e1_from_b(n: usize, b1: i64, b2: Rational) -> Rational {
    if n < 4 {
        return int(0);
    }
    let n = n as i64;
    (b2 - b1) / ((n - 2) * (n - 3))
}

/// Predictor of `C` knowing the length of one edge of every pair that might
/// cross. Zero for `n < 4`, where no crossing is possible.
pub fn e1_crossings(tree: &Tree, arr: &LinearArrangement) -> Result<E1Report> {
    arr.check_covers(tree)?;
    let weights = crossable_weights(tree);
    let b1 = b1(tree);
    let b2 = b2_with(tree, &weights, arr.positions());
    Ok(E1Report { e1: e1_from_b(tree.n(), b1, int(b2)), b1, b2 })
}

/// Which null hypothesis [`general_predictor`] evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NullHypothesis {
    /// Nothing is known about edge lengths: `p(cross) = 1/3`.
    RandomArrangement,
    /// The length of one edge is known: `p(cross | d_uv)`.
    KnownEdgeLength,
}

/// `E_x[C] = (1/4) sum_u sum_v a_uv (n - k_u - k_v) p_x(cross | u~v)`,
/// summed edge by edge.
pub fn general_predictor(tree: &Tree, arr: &LinearArrangement, mode: NullHypothesis) -> Result<Rational> {
    arr.check_covers(tree)?;
    let n = tree.n();
    if n < 4 {
        return Ok(int(0));
    }
    let mut sum = int(0);
    for (&(u, v), w) in tree.edges().iter().zip(crossable_weights(tree)) {
        let p = match mode {
            NullHypothesis::RandomArrangement => Rational::new(1, 3),
            NullHypothesis::KnownEdgeLength => {
                p_cross_given_d(n, arr.position(u).abs_diff(arr.position(v)))?
            }
        };
        // a_uv and a_vu both contribute: (1/4) * 2 = 1/2 per edge
        sum += p * w / 2;
    }
    Ok(sum)
}

/// Every closed-form predictor for one tree in one arrangement.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PredictorReport {
    pub e0_c: Rational,
    pub e0_d: Rational,
    pub e1_c: Rational,
    pub b1: i64,
    pub b2: i64,
    /// `(d, p(cross|d))` for `d = 1..n-1`; empty when `n < 4`.
    pub p_cross_table: Vec<(usize, Rational)>,
    /// `(d, p(d))` for `d = 1..n-1`.
    pub p_length_table: Vec<(usize, Rational)>,
    pub p_cross_max: Option<Rational>,
}

impl PredictorReport {
    pub fn new(tree: &Tree, arr: &LinearArrangement) -> Result<PredictorReport> {
        let n = tree.n();
        let e1 = e1_crossings(tree, arr)?;
        let p_cross_table = if n >= 4 {
            (1..n).map(|d| Ok((d, p_cross_given_d(n, d)?))).collect::<Result<_>>()?
        } else {
            Vec::new()
        };
        let p_length_table = (1..n).map(|d| Ok((d, p_length(n, d)?))).collect::<Result<_>>()?;
        Ok(PredictorReport {
            e0_c: e0_crossings_of(tree),
            e0_d: e0_length(n),
            e1_c: e1.e1,
            b1: e1.b1,
            b2: e1.b2,
            p_cross_table,
            p_length_table,
            p_cross_max: p_cross_max(n).ok(),
        })
    }
}
