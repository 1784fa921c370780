//! Prediction errors and permutation p-values under the null hypothesis
//! that the arrangement is a uniformly random one with the observed `D`.

use crate::ensembles::PermutationEnsemble;
use crate::error::{Error, Result};
use crate::{to_f64, Rational};
use num_traits::Signed;
use serde::Serialize;

/// Significance level used when none is given.
pub const DEFAULT_ALPHA: f64 = 0.05;

/// `|C - prediction| / C_max`. When `C_max = 0` the error is 0 if both
/// values are 0 and undefined otherwise.
pub fn normalized_error(observed: Rational, predicted: Rational, c_max: u64) -> Result<Rational> {
    let diff = (observed - predicted).abs();
    if c_max == 0 {
        return if diff == Rational::from_integer(0) {
            Ok(diff)
        } else {
            Err(Error::DegenerateCmax { observed: observed.to_string(), predicted: predicted.to_string() })
        };
    }
    Ok(diff / c_max as i64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Statistic {
    /// The number of crossings.
    Crossings,
    /// `|C - E[C|D]|`.
    AbsDeviation,
}

/// Left and right p-values of one statistic. Both tails include ties, so
/// `left + right >= 1` and neither can drop below `1/R`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PValueReport {
    pub statistic: Statistic,
    pub left_p: Rational,
    pub right_p: Rational,
    pub r: u64,
    pub min_attainable_p: Rational,
    pub alpha: f64,
}

impl PValueReport {
    /// Whether either tail is significant (`p < alpha`).
    pub fn rejects(&self) -> bool {
        to_f64(self.left_p) < self.alpha || to_f64(self.right_p) < self.alpha
    }
}

/// p-values of `statistic` among the arrangements of `ensemble` with total
/// length `d`, for an observed arrangement with `observed_c` crossings.
pub fn p_values(
    ensemble: &PermutationEnsemble,
    d: u64,
    observed_c: u64,
    statistic: Statistic,
    alpha: f64,
) -> Result<PValueReport> {
    let class = ensemble.class(d)?;
    let hist = &class.c_hist;
    if hist.get(observed_c as usize).copied().unwrap_or(0) == 0 && ensemble.is_exhaustive() {
        return Err(Error::InvalidParameter(format!(
            "no arrangement with D = {d} has C = {observed_c}"
        )));
    }
    let r = class.r as i64;
    let (left, right) = match statistic {
        Statistic::Crossings => {
            let left: u64 = hist.iter().take(observed_c as usize + 1).sum();
            let right: u64 = hist.iter().skip(observed_c as usize).sum();
            (left, right)
        }
        Statistic::AbsDeviation => {
            let mean = class.mean_c();
            let dev = |c: usize| (Rational::from_integer(c as i64) - mean).abs();
            let observed = dev(observed_c as usize);
            let mut left = 0;
            let mut right = 0;
            for (c, &k) in hist.iter().enumerate() {
                let x = dev(c);
                if x <= observed {
                    left += k;
                }
                if x >= observed {
                    right += k;
                }
            }
            (left, right)
        }
    };
    Ok(PValueReport {
        statistic,
        left_p: Rational::new(left as i64, r),
        right_p: Rational::new(right as i64, r),
        r: class.r,
        min_attainable_p: Rational::new(1, r),
        alpha,
    })
}

/// Whether a significance level can be reached by any of a set of tests.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SignificanceCheck {
    pub r_min: u64,
    /// `1 / R_min`, the smallest p-value any of the tests can produce.
    pub min_p: Rational,
    pub alpha: f64,
    pub admissible: bool,
}

/// `alpha` is admissible when `alpha >= 1/R_min`, i.e. a p-value at or
/// below `alpha` is attainable in every test.
pub fn min_significance(r_values: &[u64], alpha: f64) -> Result<SignificanceCheck> {
    let r_min = r_values
        .iter()
        .copied()
        .min()
        .ok_or_else(|| Error::InvalidParameter("no R values given".into()))?;
    if r_min == 0 {
        return Err(Error::InvalidParameter("R must be at least 1".into()));
    }
    let min_p = Rational::new(1, r_min as i64);
    Ok(SignificanceCheck { r_min, min_p, alpha, admissible: alpha >= to_f64(min_p) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::Tree;

    fn r(a: i64, b: i64) -> Rational {
        Rational::new(a, b)
    }

    #[test]
    fn errors() {
        assert_eq!(normalized_error(r(0, 1), r(6, 1), 18), Ok(r(1, 3)));
        assert_eq!(normalized_error(r(1, 1), r(1, 1), 9), Ok(r(0, 1)));
        assert_eq!(normalized_error(r(0, 1), r(0, 1), 0), Ok(r(0, 1)));
        assert!(matches!(normalized_error(r(1, 1), r(0, 1), 0), Err(Error::DegenerateCmax { .. })));
    }

    #[test]
    fn significance() {
        let check = min_significance(&[288, 6664, 548, 102], DEFAULT_ALPHA).unwrap();
        assert_eq!(check.r_min, 102);
        assert_eq!(check.min_p, r(1, 102));
        assert!(check.admissible);
        assert!((to_f64(check.min_p) - 0.0098).abs() < 1e-4);
        assert!(!min_significance(&[1], DEFAULT_ALPHA).unwrap().admissible);
        assert!(min_significance(&[], DEFAULT_ALPHA).is_err());
        assert!(min_significance(&[0, 3], DEFAULT_ALPHA).is_err());
    }

    #[test]
    fn extremes_of_the_conditioning_set() {
        // path 0-1-2-3 arranged as 1 3 0 2: D = 2 + 2 + 2 = 6, C = 1
        let t = Tree::path(4);
        let ens = PermutationEnsemble::exhaustive(&t, 10).unwrap();
        let class = ens.class(6).unwrap();
        let max_c = class.c_hist.iter().rposition(|&k| k > 0).unwrap() as u64;
        let ties = class.c_hist[max_c as usize] as i64;
        let p = p_values(&ens, 6, max_c, Statistic::Crossings, DEFAULT_ALPHA).unwrap();
        assert_eq!(p.left_p, r(1, 1));
        assert_eq!(p.right_p, r(ties, class.r as i64));
        assert!(p.left_p + p.right_p >= r(1, 1));
        assert!(p.left_p >= p.min_attainable_p && p.right_p >= p.min_attainable_p);
    }

    #[test]
    fn impossible_observation() {
        let ens = PermutationEnsemble::exhaustive(&Tree::path(4), 10).unwrap();
        // D = 3 forces the path order, which has no crossing
        assert!(p_values(&ens, 3, 1, Statistic::Crossings, DEFAULT_ALPHA).is_err());
        assert!(matches!(
            p_values(&ens, 2, 0, Statistic::Crossings, DEFAULT_ALPHA),
            Err(Error::UnreachableD { d: 2 })
        ));
    }
}
