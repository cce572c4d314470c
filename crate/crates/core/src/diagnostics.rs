//! Rate fitting and exponent reporting shared by the convergence tests.
//!
//! Everything here is ordinary least squares on logs: the theory provides
//! power laws `v ~ s^p`, and the tests assert the fitted `p` against the
//! predicted exponent within a stated tolerance. Fits refuse nonpositive
//! values instead of silently dropping them, since a zero level delta
//! usually means the datum collapsed algebraically and the experiment is
//! measuring nothing.

use crate::error::{Error, Result};
use serde::Serialize;

/// Result of a least-squares power-law fit on `(scale, value)` samples.
#[derive(Debug, Clone, Serialize)]
pub struct RateFit {
    /// Fitted exponent of `value ~ scale^slope`.
    pub slope: f64,
    /// Fitted log-intercept.
    pub intercept: f64,
    /// RMS of the log-residuals.
    pub residual_rms: f64,
    /// The samples actually used, in input order.
    pub window: Vec<(f64, f64)>,
}

/// Ordinary least squares of `log v` against `log s`.
///
/// Requires at least 4 samples with strictly positive scales and values;
/// a nonpositive sample is refused naming the offending pair.
pub fn fit_rate(pairs: &[(f64, f64)]) -> Result<RateFit> {
    if pairs.len() < 4 {
        return Err(Error::Domain(format!(
            "rate fit needs at least 4 samples, got {}",
            pairs.len()
        )));
    }
    for &(s, v) in pairs {
        if !(s > 0.0) || !(v > 0.0) || !s.is_finite() || !v.is_finite() {
            return Err(Error::Numerical(format!(
                "rate fit requires positive finite samples; offending pair (scale={s:e}, value={v:e})"
            )));
        }
    }
    let n = pairs.len() as f64;
    let xs: Vec<f64> = pairs.iter().map(|&(s, _)| s.ln()).collect();
    let ys: Vec<f64> = pairs.iter().map(|&(_, v)| v.ln()).collect();
    let xbar = xs.iter().sum::<f64>() / n;
    let ybar = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - xbar) * (x - xbar)).sum();
    if sxx == 0.0 {
        return Err(Error::Domain(
            "rate fit requires at least two distinct scales".into(),
        ));
    }
    let sxy: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (x - xbar) * (y - ybar))
        .sum();
    let slope = sxy / sxx;
    let intercept = ybar - slope * xbar;
    let ss_res: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| {
            let r = y - (intercept + slope * x);
            r * r
        })
        .sum();
    Ok(RateFit {
        slope,
        intercept,
        residual_rms: (ss_res / n).sqrt(),
        window: pairs.to_vec(),
    })
}

/// Drop the `skip` coarsest (largest-scale) samples before fitting.
///
/// The theoretical bounds are asymptotic; by default convergence studies
/// exclude the two coarsest levels as pre-asymptotic.
pub fn fit_rate_windowed(pairs: &[(f64, f64)], skip: usize) -> Result<RateFit> {
    let mut sorted = pairs.to_vec();
    sorted.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    let kept = &sorted[skip.min(sorted.len())..];
    fit_rate(kept)
}

/// A pass/fail record comparing a fitted exponent to its predicted value.
#[derive(Debug, Clone, Serialize)]
pub struct ExponentReport {
    pub expected: f64,
    pub fitted: f64,
    pub tolerance: f64,
    pub delta: f64,
    pub pass: bool,
    pub residual_rms: f64,
}

/// Compare a fit against an expected exponent within a tolerance.
pub fn exponent_report(fit: &RateFit, expected: f64, tolerance: f64) -> ExponentReport {
    let delta = (fit.slope - expected).abs();
    ExponentReport {
        expected,
        fitted: fit.slope,
        tolerance,
        delta,
        pass: delta <= tolerance,
        residual_rms: fit.residual_rms,
    }
}

/// Pairwise (tree) summation in fixed input order.
///
/// Used everywhere a sum feeds a tolerance at or below 1e-10: the reduction
/// tree is a pure function of the length, so results are bit-stable across
/// runs and independent of chunking decisions elsewhere.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        2 => values[0] + values[1],
        n => {
            let mid = n / 2;
            pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
        }
    }
}
