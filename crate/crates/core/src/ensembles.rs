//! Ensembles of trees and of arrangements.
//!
//! * uniformly random labeled trees (Aldous-Broder walk on the complete graph);
//! * exhaustive enumeration of labeled trees through Prüfer sequences;
//! * the distribution of `C` conditioned on `D` over all `n!` arrangements of
//!   a tree, or over uniformly sampled arrangements when `n!` is too large.
//!
//! Parallel work is split into a fixed set of chunks (leading position
//! assignments, or sampling batches with their own RNG stream) whose
//! accumulators are merged in chunk order, so results never depend on the
//! thread schedule.

use crate::arrangement::{independent_edge_pairs, intervals_interleave, LinearArrangement};
use crate::error::{Error, Result};
use crate::predictors::{b1, b2_with, crossable_weights, e1_from_b};
use crate::tree::Tree;
use crate::{to_f64, Rational};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;
use std::io::Write;

/// Name of the generator behind [`RandomSeed::rng`], for output metadata.
pub const RNG_ALGORITHM: &str = "ChaCha8 (rand_chacha 0.9), stream per batch";

/// Largest `n` for which [`enumerate_labeled_trees`] runs (`8^6 = 262144` trees).
pub const MAX_PRUFER_N: usize = 8;

/// Default switchover from exhaustive enumeration to sampling.
pub const DEFAULT_MAX_EXHAUSTIVE_N: usize = 10;

/// Hard limit on exhaustive permutation enumeration (`12! ~ 4.8e8`).
pub const MAX_EXHAUSTIVE_N: usize = 12;

/// Permutations drawn per sampling batch; each batch has its own stream.
pub const SAMPLING_BATCH: u64 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct RandomSeed {
    pub seed: u64,
    pub stream: u64,
}

impl RandomSeed {
    pub fn new(seed: u64) -> RandomSeed {
        RandomSeed { seed, stream: 0 }
    }

    pub fn with_stream(self, stream: u64) -> RandomSeed {
        RandomSeed { stream, ..self }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }
}

/// Uniformly random labeled tree on `n` vertices: a random walk on the
/// complete graph, keeping the edge through which each vertex is first entered.
pub fn random_labeled_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Tree {
    assert!(n >= 1, "a tree needs at least one vertex");
    let mut visited = vec![false; n];
    let mut current = rng.random_range(0..n);
    visited[current] = true;
    let mut edges = Vec::with_capacity(n - 1);
    while edges.len() + 1 < n {
        let mut next = rng.random_range(0..n - 1);
        if next >= current {
            next += 1;
        }
        if !visited[next] {
            visited[next] = true;
            edges.push((current, next));
        }
        current = next;
    }
    Tree::from_edges(n, &edges).expect("a first-entrance tree is a tree")
}

/// Decodes a Prüfer sequence (entries in `0..n`, length `n - 2`).
pub fn tree_from_prufer(n: usize, sequence: &[usize]) -> Result<Tree> {
    if n < 2 {
        return Tree::from_edges(n, &[]);
    }
    if sequence.len() != n - 2 || sequence.iter().any(|&v| v >= n) {
        return Err(Error::InvalidParameter(format!(
            "a Prüfer sequence for n = {n} has n - 2 entries in 0..n"
        )));
    }
    let mut degree = vec![1usize; n];
    for &v in sequence {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &v in sequence {
        let leaf = (0..n).find(|&w| degree[w] == 1).expect("a leaf remains");
        edges.push((leaf, v));
        degree[leaf] -= 1;
        degree[v] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&w| degree[w] == 1).collect();
    edges.push((rest[0], rest[1]));
    Tree::from_edges(n, &edges)
}

/// Every labeled tree on `n` vertices, in lexicographic Prüfer order.
pub fn enumerate_labeled_trees(n: usize) -> Result<PruferTrees> {
    if n > MAX_PRUFER_N {
        return Err(Error::TooLarge { what: "labeled tree enumeration", n, max: MAX_PRUFER_N });
    }
    if n == 0 {
        return Err(Error::DomainTooSmall { what: "labeled tree enumeration", n, min: 1 });
    }
    Ok(PruferTrees { n, sequence: vec![0; n.saturating_sub(2)], done: false })
}

pub struct PruferTrees {
    n: usize,
    sequence: Vec<usize>,
    done: bool,
}

impl Iterator for PruferTrees {
    type Item = Tree;

    fn next(&mut self) -> Option<Tree> {
        if self.done {
            return None;
        }
        let tree = tree_from_prufer(self.n, &self.sequence).expect("valid sequence");
        // odometer increment
        self.done = true;
        for digit in self.sequence.iter_mut().rev() {
            *digit += 1;
            if *digit < self.n {
                self.done = false;
                break;
            }
            *digit = 0;
        }
        Some(tree)
    }
}

/// One arrangement with its exact crossings and total length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrangementRecord {
    pub arrangement: LinearArrangement,
    pub c: u64,
    pub d: u64,
}

/// All `n!` arrangements of `tree` in lexicographic order of positions.
pub fn enumerate_arrangements(tree: &Tree, max_n: usize) -> Result<Arrangements<'_>> {
    let n = tree.n();
    if n > max_n.min(MAX_EXHAUSTIVE_N) {
        return Err(Error::TooLarge { what: "exhaustive arrangement enumeration", n, max: max_n });
    }
    Ok(Arrangements { evaluator: Evaluator::new(tree), positions: (0..n).collect(), done: false })
}

pub struct Arrangements<'a> {
    evaluator: Evaluator<'a>,
    positions: Vec<usize>,
    done: bool,
}

impl Iterator for Arrangements<'_> {
    type Item = ArrangementRecord;

    fn next(&mut self) -> Option<ArrangementRecord> {
        if self.done {
            return None;
        }
        let eval = self.evaluator.evaluate(&self.positions);
        let record = ArrangementRecord {
            arrangement: LinearArrangement::from_positions(self.positions.clone()).expect("permutation"),
            c: eval.c,
            d: eval.d,
        };
        self.done = !next_permutation(&mut self.positions);
        Some(record)
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("pivot has a successor");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[derive(Clone, Copy)]
struct Evaluation {
    c: u64,
    d: u64,
    b2: i64,
}

/// Computes `C`, `D` and `B2` of many arrangements of one tree.
struct Evaluator<'a> {
    tree: &'a Tree,
    pairs: Vec<(usize, usize)>,
    weights: Vec<i64>,
    spans: Vec<(usize, usize)>,
}

impl<'a> Evaluator<'a> {
    fn new(tree: &'a Tree) -> Evaluator<'a> {
        Evaluator {
            tree,
            pairs: independent_edge_pairs(tree),
            weights: crossable_weights(tree),
            spans: vec![(0, 0); tree.edges().len()],
        }
    }

    #[inline]
    fn evaluate(&mut self, positions: &[usize]) -> Evaluation {
        let mut d = 0;
        for (span, &(u, v)) in self.spans.iter_mut().zip(self.tree.edges()) {
            let (a, b) = (positions[u], positions[v]);
            *span = if a < b { (a, b) } else { (b, a) };
            d += (span.1 - span.0) as u64;
        }
        let c = self
            .pairs
            .iter()
            .filter(|&&(i, j)| intervals_interleave(self.spans[i], self.spans[j]))
            .count() as u64;
        Evaluation { c, d, b2: b2_with(self.tree, &self.weights, positions) }
    }
}

/// How a [`PermutationEnsemble`] was built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EnsembleMethod {
    Exhaustive,
    MonteCarlo { samples: u64, seed: u64 },
}

/// Arrangements sharing one value of `D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DClass {
    /// Number of arrangements (`R`).
    pub r: u64,
    /// `c_hist[c]` arrangements have `C = c`.
    pub c_hist: Vec<u64>,
    pub sum_b2: i64,
}

impl DClass {
    fn new(c_max: usize) -> DClass {
        DClass { r: 0, c_hist: vec![0; c_max + 1], sum_b2: 0 }
    }

    fn merge(&mut self, other: &DClass) {
        self.r += other.r;
        self.sum_b2 += other.sum_b2;
        for (a, b) in self.c_hist.iter_mut().zip(&other.c_hist) {
            *a += b;
        }
    }

    pub fn sum_c(&self) -> u64 {
        self.c_hist.iter().enumerate().map(|(c, &k)| c as u64 * k).sum()
    }

    pub fn mean_c(&self) -> Rational {
        Rational::new(self.sum_c() as i64, self.r as i64)
    }
}

/// Distribution of `C` and `E1[C]` per value of `D` over all arrangements
/// of a tree, or over a uniform sample of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationEnsemble {
    pub n: usize,
    pub c_max: usize,
    pub b1: i64,
    pub per_d: BTreeMap<u64, DClass>,
    pub total: u64,
    pub method: EnsembleMethod,
}

/// `E[C|D]` and the arrangements it averages over.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionalCrossings {
    pub d: u64,
    pub mean_c: Rational,
    pub r: u64,
    pub distribution: Vec<u64>,
    /// Standard error of `mean_c`; only for sampled ensembles.
    pub standard_error: Option<f64>,
}

/// One row of the `C` versus `D` curve.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveRow {
    pub d: u64,
    pub r: u64,
    pub mean_c: Rational,
    pub mean_e1: Rational,
}

struct Accumulator {
    c_max: usize,
    per_d: BTreeMap<u64, DClass>,
    total: u64,
}

impl Accumulator {
    fn new(c_max: usize) -> Accumulator {
        Accumulator { c_max, per_d: BTreeMap::new(), total: 0 }
    }

    #[inline]
    fn add(&mut self, e: Evaluation) {
        let class = self.per_d.entry(e.d).or_insert_with(|| DClass::new(self.c_max));
        class.r += 1;
        class.c_hist[e.c as usize] += 1;
        class.sum_b2 += e.b2;
        self.total += 1;
    }

    fn merge(mut self, other: Accumulator) -> Accumulator {
        for (d, class) in other.per_d {
            match self.per_d.get_mut(&d) {
                Some(mine) => mine.merge(&class),
                None => {
                    self.per_d.insert(d, class);
                }
            }
        }
        self.total += other.total;
        self
    }
}

impl PermutationEnsemble {
    /// Enumerates all `n!` arrangements. Chunks fix the positions of
    /// vertices 0 and 1; the rest is enumerated with Heap's algorithm.
    pub fn exhaustive(tree: &Tree, max_n: usize) -> Result<PermutationEnsemble> {
        let n = tree.n();
        let limit = max_n.min(MAX_EXHAUSTIVE_N);
        if n > limit {
            return Err(Error::TooLarge { what: "exhaustive arrangement enumeration", n, max: limit });
        }
        let c_max = crate::arrangement::c_max(tree) as usize;
        let prefix = n.min(2);
        let chunks: Vec<Vec<usize>> = match prefix {
            1 => vec![vec![0]],
            _ => (0..n).flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| vec![a, b])).collect(),
        };
        let acc = chunks
            .par_iter()
            .map(|head| {
                let mut acc = Accumulator::new(c_max);
                let mut eval = Evaluator::new(tree);
                let mut positions = vec![0; n];
                positions[..prefix].copy_from_slice(head);
                let mut rest: Vec<usize> = (0..n).filter(|p| !head.contains(p)).collect();
                heap_permutations(&mut rest, |perm| {
                    positions[prefix..].copy_from_slice(perm);
                    acc.add(eval.evaluate(&positions));
                });
                acc
            })
            .collect::<Vec<_>>()
            .into_iter()
            .fold(Accumulator::new(c_max), Accumulator::merge);
        Ok(PermutationEnsemble {
            n,
            c_max,
            b1: b1(tree),
            per_d: acc.per_d,
            total: acc.total,
            method: EnsembleMethod::Exhaustive,
        })
    }

    /// Uniformly samples `samples` arrangements. Batch `i` of
    /// [`SAMPLING_BATCH`] draws uses RNG stream `i` of `seed`.
    pub fn sampled(tree: &Tree, samples: u64, seed: u64) -> Result<PermutationEnsemble> {
        if samples == 0 {
            return Err(Error::InvalidParameter("at least one sample is needed".into()));
        }
        let n = tree.n();
        let c_max = crate::arrangement::c_max(tree) as usize;
        let batches = samples.div_ceil(SAMPLING_BATCH);
        let acc = (0..batches)
            .into_par_iter()
            .map(|batch| {
                let count = SAMPLING_BATCH.min(samples - batch * SAMPLING_BATCH);
                let mut rng = RandomSeed { seed, stream: batch }.rng();
                let mut acc = Accumulator::new(c_max);
                let mut eval = Evaluator::new(tree);
                let mut positions: Vec<usize> = (0..n).collect();
                for _ in 0..count {
                    positions.shuffle(&mut rng);
                    acc.add(eval.evaluate(&positions));
                }
                acc
            })
            .collect::<Vec<_>>()
            .into_iter()
            .fold(Accumulator::new(c_max), Accumulator::merge);
        Ok(PermutationEnsemble {
            n,
            c_max,
            b1: b1(tree),
            per_d: acc.per_d,
            total: acc.total,
            method: EnsembleMethod::MonteCarlo { samples, seed },
        })
    }

    /// Exhaustive when `n <= max_exhaustive_n`, sampled otherwise.
    pub fn build(tree: &Tree, max_exhaustive_n: usize, samples: u64, seed: u64) -> Result<PermutationEnsemble> {
        if tree.n() <= max_exhaustive_n.min(MAX_EXHAUSTIVE_N) {
            PermutationEnsemble::exhaustive(tree, max_exhaustive_n)
        } else {
            PermutationEnsemble::sampled(tree, samples, seed)
        }
    }

    pub fn is_exhaustive(&self) -> bool {
        self.method == EnsembleMethod::Exhaustive
    }

    pub fn class(&self, d: u64) -> Result<&DClass> {
        self.per_d.get(&d).ok_or(Error::UnreachableD { d })
    }

    /// `E[C|D]`, the mean number of crossings over arrangements with total length `d`.
    pub fn conditional(&self, d: u64) -> Result<ConditionalCrossings> {
        let class = self.class(d)?;
        let mean_c = class.mean_c();
        let standard_error = match self.method {
            EnsembleMethod::Exhaustive => None,
            EnsembleMethod::MonteCarlo { .. } => Some(standard_error(&class.c_hist, to_f64(mean_c), class.r)),
        };
        Ok(ConditionalCrossings { d, mean_c, r: class.r, distribution: class.c_hist.clone(), standard_error })
    }

    /// One row per reachable `D`: `R`, mean `C` and mean `E1[C]`.
    pub fn curve(&self) -> Vec<CurveRow> {
        self.per_d
            .iter()
            .map(|(&d, class)| CurveRow {
                d,
                r: class.r,
                mean_c: class.mean_c(),
                mean_e1: e1_from_b(self.n, self.b1, Rational::new(class.sum_b2, class.r as i64)),
            })
            .collect()
    }

    pub fn mean_c(&self) -> Rational {
        let sum: u64 = self.per_d.values().map(DClass::sum_c).sum();
        Rational::new(sum as i64, self.total as i64)
    }

    pub fn mean_d(&self) -> Rational {
        let sum: u64 = self.per_d.iter().map(|(&d, class)| d * class.r).sum();
        Rational::new(sum as i64, self.total as i64)
    }

    /// Smallest and largest `D` seen.
    pub fn d_range(&self) -> Option<(u64, u64)> {
        Some((*self.per_d.keys().next()?, *self.per_d.keys().next_back()?))
    }

    /// Writes the curve as CSV with columns `D,R,mean_C,mean_E1C`.
    pub fn write_curve_csv<W: Write>(&self, sink: W) -> csv::Result<()> {
        let mut writer = csv::Writer::from_writer(sink);
        writer.write_record(["D", "R", "mean_C", "mean_E1C"])?;
        for row in self.curve() {
            writer.write_record([
                row.d.to_string(),
                row.r.to_string(),
                to_f64(row.mean_c).to_string(),
                to_f64(row.mean_e1).to_string(),
            ])?;
        }
        writer.flush()?;
        Ok(())
    }
}

fn standard_error(hist: &[u64], mean: f64, r: u64) -> f64 {
    if r < 2 {
        return f64::NAN;
    }
    let ss: f64 = hist.iter().enumerate().map(|(c, &k)| k as f64 * (c as f64 - mean).powi(2)).sum();
    (ss / (r - 1) as f64).sqrt() / (r as f64).sqrt()
}

/// Visits every permutation of `items` (Heap's algorithm, iterative).
fn heap_permutations<F: FnMut(&[usize])>(items: &mut [usize], mut visit: F) {
    let k = items.len();
    let mut counters = vec![0usize; k];
    visit(items);
    let mut i = 1;
    while i < k {
        if counters[i] < i {
            if i % 2 == 0 {
                items.swap(0, i);
            } else {
                items.swap(counters[i], i);
            }
            visit(items);
            counters[i] += 1;
            i = 1;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }
}

/// `E[C|D]` for one tree by exhaustive enumeration.
pub fn conditional_crossings(tree: &Tree, d: u64, max_n: usize) -> Result<ConditionalCrossings> {
    PermutationEnsemble::exhaustive(tree, max_n)?.conditional(d)
}

/// The `C` versus `D` curve for one tree by exhaustive enumeration.
pub fn c_vs_d_curve(tree: &Tree, max_n: usize) -> Result<Vec<CurveRow>> {
    Ok(PermutationEnsemble::exhaustive(tree, max_n)?.curve())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::TreeClass;
    use std::collections::HashSet;

    #[test]
    fn prufer_counts() {
        assert_eq!(enumerate_labeled_trees(1).unwrap().count(), 1);
        assert_eq!(enumerate_labeled_trees(2).unwrap().count(), 1);
        assert_eq!(enumerate_labeled_trees(3).unwrap().count(), 3);
        let four: HashSet<Tree> = enumerate_labeled_trees(4).unwrap().collect();
        assert_eq!(four.len(), 16);
        let five: Vec<Tree> = enumerate_labeled_trees(5).unwrap().collect();
        assert_eq!(five.len(), 125);
        assert_eq!(five.iter().collect::<HashSet<_>>().len(), 125);
        let count = |class| five.iter().filter(|t| t.classify() == class).count();
        assert_eq!(count(TreeClass::Star), 5);
        assert_eq!(count(TreeClass::Linear), 60);
        assert_eq!(count(TreeClass::QuasiStar), 60);
        assert!(enumerate_labeled_trees(9).is_err());
    }

    #[test]
    fn aldous_broder_small() {
        let mut rng = RandomSeed::new(7).rng();
        assert_eq!(random_labeled_tree(1, &mut rng).n(), 1);
        assert_eq!(random_labeled_tree(2, &mut rng), Tree::path(2));
        for _ in 0..50 {
            assert_eq!(random_labeled_tree(9, &mut rng).n(), 9);
        }
    }

    #[test]
    fn seeds_are_reproducible() {
        let a = random_labeled_tree(12, &mut RandomSeed::new(3).with_stream(5).rng());
        let b = random_labeled_tree(12, &mut RandomSeed::new(3).with_stream(5).rng());
        assert_eq!(a, b);
    }

    #[test]
    fn path_of_three() {
        let records: Vec<_> = enumerate_arrangements(&Tree::path(3), 10).unwrap().collect();
        assert_eq!(records.len(), 6);
        assert!(records.iter().all(|r| r.c == 0));
        let mut d: Vec<u64> = records.iter().map(|r| r.d).collect();
        d.sort_unstable();
        assert_eq!(d, vec![2, 2, 3, 3, 3, 3]);
    }

    #[test]
    fn heap_visits_each_permutation_once() {
        let mut items = vec![0, 1, 2, 3, 4];
        let mut seen = HashSet::new();
        heap_permutations(&mut items, |p| {
            assert!(seen.insert(p.to_vec()));
        });
        assert_eq!(seen.len(), 120);
    }

    #[test]
    fn exhaustive_matches_iterator() {
        let t = Tree::from_edges(6, &[(0, 1), (1, 2), (2, 3), (1, 4), (4, 5)]).unwrap();
        let ens = PermutationEnsemble::exhaustive(&t, 10).unwrap();
        assert_eq!(ens.total, 720);
        let mut by_d: BTreeMap<u64, (u64, u64)> = BTreeMap::new();
        for rec in enumerate_arrangements(&t, 10).unwrap() {
            let e = by_d.entry(rec.d).or_default();
            e.0 += 1;
            e.1 += rec.c;
        }
        for (d, (r, sum_c)) in by_d {
            let class = ens.class(d).unwrap();
            assert_eq!((class.r, class.sum_c()), (r, sum_c));
        }
    }

    #[test]
    fn unreachable_d() {
        let ens = PermutationEnsemble::exhaustive(&Tree::path(4), 10).unwrap();
        assert_eq!(ens.d_range(), Some((3, 7)));
        assert_eq!(ens.conditional(2), Err(Error::UnreachableD { d: 2 }));
        assert_eq!(ens.conditional(100), Err(Error::UnreachableD { d: 100 }));
    }

    #[test]
    fn star_curve_is_flat() {
        let ens = PermutationEnsemble::exhaustive(&Tree::star(6), 10).unwrap();
        assert!(ens.curve().iter().all(|row| row.mean_c == Rational::from_integer(0)));
        assert!(ens.curve().iter().all(|row| row.mean_e1 == Rational::from_integer(0)));
    }

    #[test]
    fn sampling_is_deterministic() {
        let t = Tree::path(11);
        let a = PermutationEnsemble::sampled(&t, 150_000, 42).unwrap();
        let b = PermutationEnsemble::sampled(&t, 150_000, 42).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.total, 150_000);
        let c = PermutationEnsemble::sampled(&t, 150_000, 43).unwrap();
        assert_ne!(a, c);
        assert!(PermutationEnsemble::sampled(&t, 0, 1).is_err());
    }

    #[test]
    fn size_limits() {
        assert!(matches!(
            PermutationEnsemble::exhaustive(&Tree::path(11), 10),
            Err(Error::TooLarge { .. })
        ));
        assert!(enumerate_arrangements(&Tree::path(13), 20).is_err());
    }

    #[test]
    fn curve_csv() {
        let ens = PermutationEnsemble::exhaustive(&Tree::path(3), 10).unwrap();
        let mut out = Vec::new();
        ens.write_curve_csv(&mut out).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "D,R,mean_C,mean_E1C\n2,2,0,0\n3,4,0,0\n");
    }
}
