//! Everything known about one sentence: observed `C` and `D`, their
//! extremes, the three predictors of `C`, their errors, and p-values.

use crate::arrangement::{c_max, count_crossings, sum_lengths, LinearArrangement};
use crate::ensembles::{PermutationEnsemble, DEFAULT_MAX_EXHAUSTIVE_N, MAX_EXHAUSTIVE_N};
use crate::error::{Error, Result};
use crate::extremal::{d_max, d_min, MAX_EXACT_N};
use crate::predictors::{e0_crossings_of, e0_length, e1_crossings};
use crate::statistics::{normalized_error, p_values, Statistic, DEFAULT_ALPHA};
use crate::tree::Tree;
use crate::Rational;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisConfig {
    /// Largest `n` for which `E[C|D]` is computed over all `n!` arrangements.
    pub max_exhaustive_n: usize,
    /// Sample size when `n` exceeds `max_exhaustive_n`.
    pub samples: u64,
    pub seed: u64,
    pub alpha: f64,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig { max_exhaustive_n: DEFAULT_MAX_EXHAUSTIVE_N, samples: 1_000_000, seed: 1, alpha: DEFAULT_ALPHA }
    }
}

impl AnalysisConfig {
    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::InvalidParameter("samples must be >= 1".into()));
        }
        if !(4..=MAX_EXHAUSTIVE_N).contains(&self.max_exhaustive_n) {
            return Err(Error::InvalidParameter(format!(
                "max exhaustive n must lie in 4..={MAX_EXHAUSTIVE_N}, got {}",
                self.max_exhaustive_n
            )));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::InvalidParameter(format!("alpha must lie in (0, 1), got {}", self.alpha)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConditionalMethod {
    Exhaustive,
    MonteCarlo,
}

impl ConditionalMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            ConditionalMethod::Exhaustive => "exhaustive",
            ConditionalMethod::MonteCarlo => "monte_carlo",
        }
    }
}

/// Observed values and predictions for one sentence. Conditional quantities
/// are `None` when a sampled ensemble saw no arrangement with the observed
/// `D`; `d_min`/`d_max` are `None` above the exact-solver limit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SentenceAnalysis {
    pub sentence_id: String,
    pub n: usize,
    #[serde(with = "exact")]
    pub mean_k2: Rational,
    pub d: u64,
    pub c: u64,
    pub c_max: u64,
    pub d_min: Option<u64>,
    pub d_max: Option<u64>,
    #[serde(with = "exact")]
    pub e0_d: Rational,
    #[serde(with = "exact")]
    pub e0_c: Rational,
    #[serde(with = "exact::option")]
    pub eps0: Option<Rational>,
    #[serde(with = "exact")]
    pub e1_c: Rational,
    #[serde(with = "exact::option")]
    pub eps1: Option<Rational>,
    #[serde(with = "exact::option")]
    pub e_c_given_d: Option<Rational>,
    pub e_c_given_d_se: Option<f64>,
    #[serde(with = "exact::option")]
    pub eps_cond: Option<Rational>,
    #[serde(with = "exact::option")]
    pub p_left_c: Option<Rational>,
    #[serde(with = "exact::option")]
    pub p_right_c: Option<Rational>,
    #[serde(with = "exact::option")]
    pub p_left_dev: Option<Rational>,
    #[serde(with = "exact::option")]
    pub p_right_dev: Option<Rational>,
    /// Arrangements with the observed `D`: exact count, or the number of
    /// accepted samples for a sampled ensemble.
    pub r: u64,
    pub method: ConditionalMethod,
    /// Seed of the sampled ensemble; `None` when exhaustive.
    pub seed: Option<u64>,
}

/// Analyzes `tree` in the attested arrangement `arr`.
pub fn analyze_sentence(
    sentence_id: &str,
    tree: &Tree,
    arr: &LinearArrangement,
    config: &AnalysisConfig,
) -> Result<SentenceAnalysis> {
    config.validate()?;
    let ensemble = PermutationEnsemble::build(tree, config.max_exhaustive_n, config.samples, config.seed)?;
    analyze_with_ensemble(sentence_id, tree, arr, &ensemble, config.alpha)
}

/// As [`analyze_sentence`], reusing an ensemble already built for `tree`.
pub fn analyze_with_ensemble(
    sentence_id: &str,
    tree: &Tree,
    arr: &LinearArrangement,
    ensemble: &PermutationEnsemble,
    alpha: f64,
) -> Result<SentenceAnalysis> {
    let n = tree.n();
    let d = sum_lengths(arr, tree)?;
    let c = count_crossings(arr, tree)?.total;
    let c_max = c_max(tree);
    let observed = Rational::from_integer(c as i64);
    let (d_min, d_max) = if n <= MAX_EXACT_N {
        (Some(d_min(tree)?.d), Some(d_max(tree)?.d))
    } else {
        (None, None)
    };
    let e0_c = e0_crossings_of(tree);
    let e1_c = e1_crossings(tree, arr)?.e1;

    let conditional = ensemble.conditional(d).ok();
    let e_c_given_d = conditional.as_ref().map(|cc| cc.mean_c);
    let tails = |statistic| -> Result<Option<(Rational, Rational)>> {
        match &conditional {
            None => Ok(None),
            Some(_) => {
                let p = p_values(ensemble, d, c, statistic, alpha)?;
                Ok(Some((p.left_p, p.right_p)))
            }
        }
    };
    let crossings = tails(Statistic::Crossings)?;
    let deviation = tails(Statistic::AbsDeviation)?;
    let (method, seed) = match ensemble.method {
        crate::ensembles::EnsembleMethod::Exhaustive => (ConditionalMethod::Exhaustive, None),
        crate::ensembles::EnsembleMethod::MonteCarlo { seed, .. } => (ConditionalMethod::MonteCarlo, Some(seed)),
    };

    Ok(SentenceAnalysis {
        sentence_id: sentence_id.to_string(),
        n,
        mean_k2: tree.degree_profile().mean_k2(),
        d,
        c,
        c_max,
        d_min,
        d_max,
        e0_d: e0_length(n),
        e0_c,
        eps0: normalized_error(observed, e0_c, c_max).ok(),
        e1_c,
        eps1: normalized_error(observed, e1_c, c_max).ok(),
        e_c_given_d,
        e_c_given_d_se: conditional.as_ref().and_then(|cc| cc.standard_error),
        eps_cond: e_c_given_d.and_then(|e| normalized_error(observed, e, c_max).ok()),
        p_left_c: crossings.map(|p| p.0),
        p_right_c: crossings.map(|p| p.1),
        p_left_dev: deviation.map(|p| p.0),
        p_right_dev: deviation.map(|p| p.1),
        r: conditional.as_ref().map_or(0, |cc| cc.r),
        method,
        seed,
    })
}

/// Serializes a [`Rational`] as `{"exact": "24/7", "value": 3.428...}`.
pub(crate) mod exact {
    use crate::{to_f64, Rational};
    use serde::ser::SerializeStruct;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Exact", 2)?;
        st.serialize_field("exact", &r.to_string())?;
        st.serialize_field("value", &to_f64(*r))?;
        st.end()
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            match r {
                Some(r) => super::serialize(r, s),
                None => s.serialize_none(),
            }
        }
    }
}
