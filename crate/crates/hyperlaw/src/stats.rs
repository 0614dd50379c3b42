//! Goodness of fit against Poisson laws.

use hyperlaw_core::math::{poisson_pmf, poisson_tail};
use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Minimum expected count per chi-square bucket.
pub const MIN_EXPECTED: f64 = 5.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PoissonFit {
    /// Empirical frequencies of `0..=s_cap`, then of the tail `> s_cap`.
    pub empirical: Vec<f64>,
    /// Poisson probabilities on the same buckets.
    pub expected: Vec<f64>,
    pub tv: f64,
    pub chi2: f64,
    pub dof: usize,
    pub pvalue: f64,
}

/// Compares observed counts with `Poisson(lambda)` on the buckets
/// `0, 1, ..., s_cap, >s_cap`. Chi-square buckets are merged left to right
/// until each expects at least [`MIN_EXPECTED`] observations.
pub fn compare_to_poisson(counts: &[u64], lambda: f64, s_cap: u32) -> PoissonFit {
    assert!(!counts.is_empty(), "no observations");
    let buckets = s_cap as usize + 2;
    let t = counts.len() as f64;
    let mut observed = vec![0u64; buckets];
    for &c in counts {
        observed[(c as usize).min(buckets - 1)] += 1;
    }
    let mut expected: Vec<f64> = (0..=u64::from(s_cap)).map(|k| poisson_pmf(lambda, k)).collect();
    expected.push(poisson_tail(lambda, s_cap));
    let empirical: Vec<f64> = observed.iter().map(|&o| o as f64 / t).collect();
    let tv = (empirical.iter().zip(&expected).map(|(a, b)| (a - b).abs()).sum::<f64>() / 2.0).min(1.0);

    let mut merged: Vec<(f64, f64)> = Vec::new();
    let mut acc = (0.0, 0.0);
    for (o, e) in observed.iter().zip(&expected) {
        acc.0 += *o as f64;
        acc.1 += e * t;
        if acc.1 >= MIN_EXPECTED {
            merged.push(acc);
            acc = (0.0, 0.0);
        }
    }
    if acc.0 > 0.0 || acc.1 > 0.0 {
        match merged.last_mut() {
            Some(last) => {
                last.0 += acc.0;
                last.1 += acc.1;
            }
            None => merged.push(acc),
        }
    }
    let chi2: f64 = merged
        .iter()
        .map(|&(o, e)| if e > 0.0 { (o - e).powi(2) / e } else if o > 0.0 { f64::INFINITY } else { 0.0 })
        .sum();
    let dof = merged.len().saturating_sub(1);
    let pvalue = if dof == 0 {
        if chi2.is_finite() { 1.0 } else { 0.0 }
    } else {
        ChiSquared::new(dof as f64).map(|d| d.sf(chi2)).unwrap_or(f64::NAN)
    };
    PoissonFit { empirical, expected, tv, chi2, dof, pvalue }
}

/// Sample covariance and its standard error, the latter from the spread of
/// the centred products.
pub fn covariance(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    if xs.len() < 2 {
        return (0.0, f64::INFINITY);
    }
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let products: Vec<f64> = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).collect();
    let cov = products.iter().sum::<f64>() / (n - 1.0);
    let mp = products.iter().sum::<f64>() / n;
    let var = products.iter().map(|p| (p - mp).powi(2)).sum::<f64>() / (n - 1.0);
    (cov, (var / n).sqrt())
}

pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}
