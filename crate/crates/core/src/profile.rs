//! Norm-ratio profiles: the output shape of every separation experiment.

use serde::{Deserialize, Serialize};

/// Three-way outcome of a ratio experiment (plus an explicit "cannot tell").
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RatioVerdict {
    /// Ratios grow without bound (certified by the threshold and slope rules).
    Diverges,
    /// Ratios tend to zero.
    Vanishes,
    /// Ratios stay bounded away from zero and infinity.
    Finite,
    Inconclusive,
}

/// Thresholds for classifying a ratio profile.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProfileConfig {
    /// A divergence verdict requires the maximal ratio to exceed this within
    /// the budget.
    pub ratio_threshold: f64,
    /// When a predicted growth exponent is available, the fitted log-log
    /// slope must match it within this relative tolerance.
    pub slope_match_rel: f64,
    /// Slopes within this of zero count as flat (bounded ratios).
    pub flat_tol: f64,
}

impl Default for ProfileConfig {
    fn default() -> Self {
        ProfileConfig { ratio_threshold: 1e3, slope_match_rel: 0.05, flat_tol: 0.01 }
    }
}

/// A sequence of norm ratios indexed by truncation, with the fitted growth
/// rate and divergence verdict.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RatioProfile {
    pub ns: Vec<usize>,
    pub ratios: Vec<f64>,
    /// Least-squares log-log slope over the trailing half of the profile.
    pub fitted_rate: f64,
    pub verdict: RatioVerdict,
    /// Last observed ratio; the limit estimate when the verdict is finite.
    pub limit_estimate: f64,
}

impl RatioProfile {
    /// Builds a profile from `(N, ratio)` pairs and classifies it.
    ///
    /// `predicted_rate` is the growth exponent expected from theory, when one
    /// exists; divergence is only certified when the fitted slope matches it
    /// (or, without a prediction, when the slope clears the flat tolerance).
    pub fn classify(ns: Vec<usize>, ratios: Vec<f64>, predicted_rate: Option<f64>, cfg: &ProfileConfig) -> Self {
        assert_eq!(ns.len(), ratios.len(), "ns and ratios must align");
        let fitted_rate = fit_tail_slope(&ns, &ratios).unwrap_or(0.0);
        let max_ratio = ratios.iter().copied().fold(0.0f64, f64::max);
        let limit_estimate = ratios.last().copied().unwrap_or(f64::NAN);
        let slope_matches = match predicted_rate {
            Some(rho) if rho > 0.0 => (fitted_rate - rho).abs() <= cfg.slope_match_rel * rho,
            _ => fitted_rate > cfg.flat_tol,
        };
        let verdict = if ratios.is_empty() {
            RatioVerdict::Inconclusive
        } else if max_ratio > cfg.ratio_threshold && slope_matches {
            RatioVerdict::Diverges
        } else if fitted_rate < -cfg.flat_tol {
            RatioVerdict::Vanishes
        } else if fitted_rate.abs() <= cfg.flat_tol {
            RatioVerdict::Finite
        } else {
            RatioVerdict::Inconclusive
        };
        RatioProfile { ns, ratios, fitted_rate, verdict, limit_estimate }
    }
}

/// Log-log least-squares slope over the trailing half of the points.
fn fit_tail_slope(ns: &[usize], ratios: &[f64]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = ns
        .iter()
        .zip(ratios)
        .filter(|&(&n, &r)| n > 0 && r > 0.0 && r.is_finite())
        .map(|(&n, &r)| ((n as f64).ln(), r.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let tail = &pts[pts.len() / 2..];
    if tail.len() < 2 {
        return None;
    }
    let n = tail.len() as f64;
    let mx = tail.iter().map(|p| p.0).sum::<f64>() / n;
    let my = tail.iter().map(|p| p.1).sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for &(x, y) in tail {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if sxx == 0.0 {
        None
    } else {
        Some(sxy / sxx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geometric_ns(max: usize) -> Vec<usize> {
        let mut ns = Vec::new();
        let mut n = 16usize;
        while n <= max {
            ns.push(n);
            n *= 2;
        }
        ns
    }

    #[test]
    fn linear_ratio_diverges() {
        let ns = geometric_ns(1 << 14);
        let ratios: Vec<f64> = ns.iter().map(|&n| (n as f64 + 1.0) / 2.0).collect();
        let p = RatioProfile::classify(ns, ratios, Some(1.0), &ProfileConfig::default());
        assert_eq!(p.verdict, RatioVerdict::Diverges);
        assert!((p.fitted_rate - 1.0).abs() < 0.01);
    }

    #[test]
    fn constant_ratio_is_finite() {
        let ns = geometric_ns(1 << 14);
        let ratios = vec![1.0; ns.len()];
        let p = RatioProfile::classify(ns, ratios, None, &ProfileConfig::default());
        assert_eq!(p.verdict, RatioVerdict::Finite);
        assert_eq!(p.limit_estimate, 1.0);
    }

    #[test]
    fn decaying_ratio_vanishes() {
        let ns = geometric_ns(1 << 14);
        let ratios: Vec<f64> = ns.iter().map(|&n| 3.0 / (n as f64).sqrt()).collect();
        let p = RatioProfile::classify(ns, ratios, None, &ProfileConfig::default());
        assert_eq!(p.verdict, RatioVerdict::Vanishes);
        assert!((p.fitted_rate + 0.5).abs() < 0.01);
    }

    #[test]
    fn growth_below_threshold_is_not_certified() {
        // Slope fits, but the ratio never reaches the threshold.
        let ns = geometric_ns(256);
        let ratios: Vec<f64> = ns.iter().map(|&n| (n as f64).sqrt()).collect();
        let p = RatioProfile::classify(ns, ratios, Some(0.5), &ProfileConfig::default());
        assert_eq!(p.verdict, RatioVerdict::Inconclusive);
    }
}
