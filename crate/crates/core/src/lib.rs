//! Edge crossings and dependency lengths of trees in linear arrangements.
//!
//! A sentence is modelled as an undirected tree over its words; its word
//! order is a [`LinearArrangement`]. The crate computes the observed number
//! of crossings `C` and the sum of dependency lengths `D`, and compares `C`
//! against three null hypotheses of increasing strength:
//!
//! * `E0[C]`: a uniformly random arrangement of the tree ([`predictors::e0_crossings`]);
//! * `E1[C]`: the length of one edge of each potentially crossing pair is
//!   known ([`predictors::e1_crossings`]);
//! * `E[C|D]`: a uniformly random arrangement among those with the same `D`
//!   ([`ensembles::PermutationEnsemble`]).
//!
//! Every closed form is computed in exact rational arithmetic ([`Rational`]);
//! floating point values are only derived views.

pub mod analysis;
pub mod arrangement;
pub mod ensembles;
mod error;
pub mod extremal;
pub mod io;
pub mod predictors;
pub mod statistics;
pub mod tree;

pub use analysis::{analyze_sentence, AnalysisConfig, ConditionalMethod, SentenceAnalysis};
pub use arrangement::{count_crossings, edges_cross, sum_lengths, CrossingCount, LinearArrangement};
pub use ensembles::{PermutationEnsemble, RandomSeed};
pub use error::{Error, NotATreeReason, Result};
pub use tree::{DegreeProfile, Tree, TreeClass};

/// Exact rational number used for every closed-form quantity.
pub type Rational = num_rational::Ratio<i64>;

/// Converts a [`Rational`] to the nearest `f64`.
pub fn to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}
