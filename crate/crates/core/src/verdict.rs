//! Membership verdicts from truncated norms.
//!
//! Membership in a sequence space is undecidable from a finite prefix, so the
//! verdict machinery is explicit about its evidence.  The classifier looks at
//! the monotone sequence of partial norms through three lenses, in order:
//!
//! 1. a windowed convergence test (relative increase over the last quarter of
//!    indices below `converge_rel_tol`),
//! 2. a power-divergence test (log-log slope over the last decade above
//!    `slope_threshold`, and stable across decades — a decaying slope is the
//!    signature of a convergent tail, not of slow divergence),
//! 3. a tail-structure fit on octave increments for the logarithmic regimes,
//!    where neither simple test can decide.  Writing `D_j` for the increase of
//!    the p-th power sum between prefix lengths `2^j` and `2^{j+1}`, power-log
//!    weights give `D_j ~ (ln 2^j)^{-m}`: the octave sums of `1/(n (1+ln n)^m)`
//!    behave like a series in `1/j^m`, so the fitted `m` decides membership
//!    (`m <= tail_exponent_split` diverges, larger `m` has a summable tail).
//!
//! Anything the three stages cannot resolve is reported as inconclusive.

use serde::{Deserialize, Serialize};

/// Thresholds for [`classify_monotone`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerdictConfig {
    /// Windowed convergence: relative increase over the last quarter of
    /// indices must fall below this.
    pub converge_rel_tol: f64,
    /// Fraction of trailing indices forming the convergence window.
    pub window_frac: f64,
    /// Minimal log-log slope that counts as power divergence.
    pub slope_threshold: f64,
    /// Slope over the last decade must be at least this fraction of the slope
    /// over the previous decade to count as stable power growth.
    pub slope_stability: f64,
    /// Without a previous decade to compare against, a slope must exceed this
    /// (stronger) threshold to count as divergence on its own.
    pub short_slope_threshold: f64,
    /// Split point for the octave-increment exponent: fitted `m` at or below
    /// this is logarithmic divergence, above it a summable tail.
    pub tail_exponent_split: f64,
}

impl Default for VerdictConfig {
    fn default() -> Self {
        VerdictConfig {
            converge_rel_tol: 1e-6,
            window_frac: 0.25,
            slope_threshold: 0.01,
            slope_stability: 0.85,
            short_slope_threshold: 0.1,
            tail_exponent_split: 1.5,
        }
    }
}

/// What the growth of the truncated norms supports.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MembershipStatus {
    /// The prefix of the given (1-based) length already pins the norm down to
    /// the configured tolerance, or the fitted tail is summable.
    ConvergedBy(usize),
    /// Truncated norms grow without bound; the payload is the fitted log-log
    /// slope on the norm scale (near zero for logarithmic divergence).
    DivergingWithRate(f64),
    Inconclusive,
}

impl MembershipStatus {
    pub fn converged_by(&self) -> Option<usize> {
        match self {
            MembershipStatus::ConvergedBy(n) => Some(*n),
            _ => None,
        }
    }

    pub fn diverging_rate(&self) -> Option<f64> {
        match self {
            MembershipStatus::DivergingWithRate(r) => Some(*r),
            _ => None,
        }
    }

    pub fn is_converged(&self) -> bool {
        matches!(self, MembershipStatus::ConvergedBy(_))
    }

    pub fn is_diverging(&self) -> bool {
        matches!(self, MembershipStatus::DivergingWithRate(_))
    }
}

/// Truncated norms of a fixed sequence together with the growth verdict.
#[derive(Debug, Clone, Serialize)]
pub struct MembershipVerdict {
    pub status: MembershipStatus,
    /// `partial_norms[k]` is the norm of the length-`k+1` prefix; always
    /// non-decreasing for non-increasing input.
    pub partial_norms: Vec<f64>,
}

impl MembershipVerdict {
    pub fn last_norm(&self) -> f64 {
        self.partial_norms.last().copied().unwrap_or(0.0)
    }
}

fn least_squares_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for &(x, y) in points {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if sxx == 0.0 {
        return None;
    }
    Some(sxy / sxx)
}

/// Prefix lengths `1, 2, 4, ...` up to `n`, with `n` itself appended.
fn octave_lengths(n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut l = 1usize;
    while l <= n {
        out.push(l);
        l = l.saturating_mul(2);
    }
    if *out.last().unwrap_or(&0) != n {
        out.push(n);
    }
    out
}

/// Classifies a non-decreasing sequence of partial norms.  `power` is the
/// exponent relating the stored norms to the underlying monotone sums
/// (`p` for a finite-`p` space whose partials are `S^{1/p}`, `1` for running
/// suprema); slopes are reported on the norm scale.
pub fn classify_monotone(norms: &[f64], power: f64, cfg: &VerdictConfig) -> MembershipStatus {
    let n = norms.len();
    if n == 0 {
        return MembershipStatus::Inconclusive;
    }
    let last = norms[n - 1];
    if last == 0.0 {
        return MembershipStatus::ConvergedBy(1);
    }

    // Stage 1: windowed convergence.
    let window_start = ((n as f64) * (1.0 - cfg.window_frac)).floor().max(1.0) as usize;
    let base = norms[window_start - 1];
    if base > 0.0 && (last - base) / base < cfg.converge_rel_tol {
        let mut first = window_start;
        while first > 1 {
            let cand = norms[first - 2];
            if cand > 0.0 && (last - cand) / cand < cfg.converge_rel_tol {
                first -= 1;
            } else {
                break;
            }
        }
        return MembershipStatus::ConvergedBy(first);
    }

    // Checkpoints on an octave grid, in (ln length, ln norm) coordinates.
    let lengths = octave_lengths(n);
    let checkpoints: Vec<(usize, f64)> =
        lengths.iter().map(|&l| (l, norms[l - 1])).filter(|&(_, v)| v > 0.0).collect();

    let slope_over = |lo: usize, hi: usize| -> Option<f64> {
        let pts: Vec<(f64, f64)> = checkpoints
            .iter()
            .filter(|&&(l, _)| l >= lo && l <= hi)
            .map(|&(l, v)| ((l as f64).ln(), v.ln()))
            .collect();
        if pts.len() < 3 {
            None
        } else {
            least_squares_slope(&pts)
        }
    };

    // Stage 2: stable power divergence over the last decade.
    let s_a = slope_over(n / 10, n);
    if let Some(sa) = s_a {
        let s_b = slope_over(n / 100, n / 10);
        let diverges = match s_b {
            Some(sb) => sa > cfg.slope_threshold && sa >= cfg.slope_stability * sb,
            None => sa > cfg.short_slope_threshold,
        };
        if diverges {
            return MembershipStatus::DivergingWithRate(sa);
        }
    }

    // Stage 3: octave-increment structure of the p-th power sums.  Late
    // octaves carry the cleanest signal, so the fit uses the last eight.
    let raw: Vec<(usize, f64)> =
        checkpoints.iter().map(|&(l, v)| (l, v.powf(power))).collect();
    let mut incs: Vec<(f64, f64)> = Vec::new();
    for w in raw.windows(2) {
        let (l0, v0) = w[0];
        let (l1, v1) = w[1];
        if l1 != l0 * 2 {
            continue; // only genuine octaves enter the fit
        }
        let d = v1 - v0;
        if d > 0.0 {
            // geometric midpoint of the octave, on the ln(1+ln N) axis
            let mid = (l0 as f64) * std::f64::consts::SQRT_2;
            incs.push(((1.0 + mid.ln()).ln(), d.ln()));
        }
    }
    let tail = if incs.len() > 8 { &incs[incs.len() - 8..] } else { &incs[..] };
    if tail.len() >= 4 {
        if let Some(slope) = least_squares_slope(tail) {
            let m = -slope;
            if m <= cfg.tail_exponent_split {
                let rate = s_a.unwrap_or(0.0).max(0.0);
                return MembershipStatus::DivergingWithRate(rate);
            } else {
                return MembershipStatus::ConvergedBy(n);
            }
        }
    }

    MembershipStatus::Inconclusive
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> VerdictConfig {
        VerdictConfig::default()
    }

    /// Partial sums of `sum w(n)` for `n = 1..=len`.
    fn partials(len: usize, w: impl Fn(f64) -> f64) -> Vec<f64> {
        let mut out = Vec::with_capacity(len);
        let mut s = 0.0;
        for n in 1..=len {
            s += w(n as f64);
            out.push(s);
        }
        out
    }

    #[test]
    fn zero_sequence_converges_immediately() {
        assert_eq!(classify_monotone(&[0.0; 16], 1.0, &cfg()), MembershipStatus::ConvergedBy(1));
    }

    #[test]
    fn geometric_tail_converges() {
        let p = partials(64, |n| 0.5f64.powf(n));
        assert!(classify_monotone(&p, 1.0, &cfg()).is_converged());
    }

    #[test]
    fn linear_growth_diverges_with_rate_one() {
        let p = partials(2048, |_| 1.0);
        let rate = classify_monotone(&p, 1.0, &cfg()).diverging_rate().unwrap();
        assert!((rate - 1.0).abs() < 0.02, "rate {rate}");
    }

    #[test]
    fn slow_power_tail_still_converges() {
        // sum n^{-1.25}: converged but far from its limit at this length.
        let p = partials(1 << 15, |n| n.powf(-1.25));
        assert!(classify_monotone(&p, 1.0, &cfg()).is_converged());
    }

    #[test]
    fn harmonic_with_log_squared_converges() {
        // sum 1/(n (1+ln n)^2): the log-boundary convergent case.
        let p = partials(1 << 18, |n| 1.0 / (n * (1.0 + n.ln()).powi(2)));
        assert!(classify_monotone(&p, 1.0, &cfg()).is_converged());
    }

    #[test]
    fn harmonic_with_log_diverges() {
        // sum 1/(n (1+ln n)): diverges like ln ln N.
        let p = partials(1 << 18, |n| 1.0 / (n * (1.0 + n.ln())));
        assert!(classify_monotone(&p, 1.0, &cfg()).is_diverging());
    }

    #[test]
    fn harmonic_diverges() {
        let p = partials(1 << 16, |n| 1.0 / n);
        assert!(classify_monotone(&p, 1.0, &cfg()).is_diverging());
    }

    #[test]
    fn slow_power_divergence_detected() {
        let p = partials(1 << 16, |n| n.powf(-0.7)); // sums ~ N^{0.3}
        let rate = classify_monotone(&p, 1.0, &cfg()).diverging_rate().unwrap();
        assert!((rate - 0.3).abs() < 0.05, "rate {rate}");
    }

    #[test]
    fn running_sup_that_stabilizes_converges() {
        let mut v = vec![0.7f64; 256];
        for (i, x) in v.iter_mut().enumerate().take(10) {
            *x = 0.5 + 0.02 * i as f64;
        }
        let mut sup = 0.0f64;
        let sups: Vec<f64> = v
            .iter()
            .map(|&x| {
                sup = sup.max(x);
                sup
            })
            .collect();
        assert!(classify_monotone(&sups, 1.0, &cfg()).is_converged());
    }
}
