//! Scales of smoothness and the witnesses certifying their strictness.
//!
//! All witnesses live in the two-parameter power-log family
//! `a_n = n^{-beta} (1 + ln n)^{-delta}`, which is rich enough to separate
//! every pair of Lorentz / Lorentz–Zygmund spaces and admits an exact
//! integral-test oracle: membership of the family in `l_{p,r,gamma}` reduces
//! to the convergence of `sum n^{(r-beta)p - 1} (1 + ln n)^{(gamma-delta)p}`,
//! which is decided in closed form.  The oracle is the independent reference
//! the numeric truncated-norm verdicts are checked against.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::profile::{ProfileConfig, RatioProfile};
use crate::seqspace::{lz_norm, truncated_norms_with, FiniteSeq, SpaceKind, SpaceSpec};
use crate::verdict::{MembershipVerdict, VerdictConfig};

/// The two-parameter witness family `a_n = n^{-beta} (1 + ln n)^{-delta}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerLogFamily {
    pub beta: f64,
    pub delta: f64,
}

impl PowerLogFamily {
    pub fn new(beta: f64, delta: f64) -> Result<Self> {
        if !beta.is_finite() || !delta.is_finite() || beta < 0.0 || delta < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "power-log family needs finite non-negative exponents, got ({beta}, {delta})"
            )));
        }
        Ok(PowerLogFamily { beta, delta })
    }

    /// Value at the 1-based index `n`.
    pub fn eval(&self, n: usize) -> f64 {
        let x = n as f64;
        let mut v = x.powf(-self.beta);
        if self.delta != 0.0 {
            v *= (1.0 + x.ln()).powf(-self.delta);
        }
        v
    }

    /// Non-increasing prefix of the family.
    pub fn prefix(&self, len: usize) -> FiniteSeq {
        FiniteSeq::from_fn(len, |n| self.eval(n)).expect("power-log values are non-negative")
    }
}

/// Verdict of the closed-form integral test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleVerdict {
    Converges,
    Diverges,
}

const BOUNDARY_TOL: f64 = 1e-12;

/// Closed-form membership test for the power-log family in `spec`.
///
/// For finite `p` the defining series is `sum n^{(r-beta)p-1} (1+ln n)^{(gamma-delta)p}`:
/// it converges iff `(beta - r) p > 0`, or `(beta - r) p = 0` and
/// `(delta - gamma) p > 1`.  For `p = inf` the weak-type supremum
/// `sup n^{r-beta} (1+ln n)^{gamma-delta}` is finite iff `beta > r`, or
/// `beta = r` and `delta >= gamma`.
pub fn power_log_oracle(beta: f64, delta: f64, spec: &SpaceSpec) -> Result<OracleVerdict> {
    spec.validate()?;
    if !beta.is_finite() || !delta.is_finite() {
        return Err(Error::NonFinite("power-log exponents".into()));
    }
    let (p, r, gamma) = (spec.p, spec.r, spec.gamma);
    if p.is_infinite() {
        if beta > r + BOUNDARY_TOL {
            return Ok(OracleVerdict::Converges);
        }
        if beta < r - BOUNDARY_TOL {
            return Ok(OracleVerdict::Diverges);
        }
        return Ok(if delta >= gamma - BOUNDARY_TOL {
            OracleVerdict::Converges
        } else {
            OracleVerdict::Diverges
        });
    }
    let power_excess = (beta - r) * p;
    if power_excess > BOUNDARY_TOL {
        return Ok(OracleVerdict::Converges);
    }
    if power_excess < -BOUNDARY_TOL {
        return Ok(OracleVerdict::Diverges);
    }
    let log_exponent = (delta - gamma) * p;
    Ok(if log_exponent > 1.0 + BOUNDARY_TOL {
        OracleVerdict::Converges
    } else {
        OracleVerdict::Diverges
    })
}

/// One strict inclusion of the Lorentz (`a`, `b`) or Lorentz–Zygmund
/// (`c`, `d`, `e`) scale, with the parameters the case requires.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "lowercase")]
pub enum InclusionCase {
    /// `l_{p,r+e} ⊂ l_{q,r}` for all `p, q > 0` and `r, e > 0`.
    A { p: f64, q: f64, r: f64, e: f64 },
    /// `l_{p,r} ⊂ l_{q,r}` for `0 < p < q` and `r > 0`.
    B { p: f64, q: f64, r: f64 },
    /// `l_{p,r+e,gamma} ⊂ l_{p,r,alpha}` for `r, e > 0`.
    C { p: f64, r: f64, e: f64, gamma: f64, alpha: f64 },
    /// `l_{p,r,gamma} ⊂ l_{q,r,gamma}` for `0 < p < q` and `gamma > 0`.
    D { p: f64, q: f64, r: f64, gamma: f64 },
    /// `l_{p,r,gamma} ⊂ l_{p,r,alpha}` for `alpha < gamma`.
    E { p: f64, r: f64, alpha: f64, gamma: f64 },
}

fn check_exponent(name: &str, v: f64, allow_inf: bool) -> Result<()> {
    if allow_inf && v.is_infinite() && v > 0.0 {
        return Ok(());
    }
    if !v.is_finite() || v <= 0.0 {
        return Err(Error::InvalidParameter(format!("{name} must be positive, got {v}")));
    }
    Ok(())
}

impl InclusionCase {
    pub fn label(&self) -> char {
        match self {
            InclusionCase::A { .. } => 'a',
            InclusionCase::B { .. } => 'b',
            InclusionCase::C { .. } => 'c',
            InclusionCase::D { .. } => 'd',
            InclusionCase::E { .. } => 'e',
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            InclusionCase::A { p, q, r, e } => {
                check_exponent("p", p, true)?;
                check_exponent("q", q, true)?;
                check_exponent("r", r, false)?;
                check_exponent("e", e, false)
            }
            InclusionCase::B { p, q, r } => {
                check_exponent("p", p, false)?;
                check_exponent("q", q, true)?;
                check_exponent("r", r, false)?;
                if p >= q {
                    return Err(Error::InvalidParameter(format!("case b needs p < q, got {p} >= {q}")));
                }
                Ok(())
            }
            InclusionCase::C { p, r, e, gamma, alpha } => {
                check_exponent("p", p, true)?;
                check_exponent("r", r, false)?;
                check_exponent("e", e, false)?;
                if gamma < 0.0 || alpha < 0.0 || !gamma.is_finite() || !alpha.is_finite() {
                    return Err(Error::InvalidParameter(
                        "case c needs finite non-negative gamma, alpha".into(),
                    ));
                }
                Ok(())
            }
            InclusionCase::D { p, q, r, gamma } => {
                check_exponent("p", p, false)?;
                check_exponent("q", q, true)?;
                check_exponent("r", r, false)?;
                check_exponent("gamma", gamma, false)?;
                if p >= q {
                    return Err(Error::InvalidParameter(format!("case d needs p < q, got {p} >= {q}")));
                }
                Ok(())
            }
            InclusionCase::E { p, r, alpha, gamma } => {
                check_exponent("p", p, true)?;
                check_exponent("r", r, false)?;
                check_exponent("gamma", gamma, false)?;
                if !alpha.is_finite() || alpha < 0.0 {
                    return Err(Error::InvalidParameter("case e needs finite alpha >= 0".into()));
                }
                if alpha >= gamma {
                    return Err(Error::InvalidParameter(format!(
                        "case e needs alpha < gamma, got {alpha} >= {gamma}"
                    )));
                }
                Ok(())
            }
        }
    }

    /// The strictly smaller space of the inclusion.
    pub fn small_space(&self) -> Result<SpaceSpec> {
        match *self {
            InclusionCase::A { p, r, e, .. } => SpaceSpec::lorentz(p, r + e),
            InclusionCase::B { p, r, .. } => SpaceSpec::lorentz(p, r),
            InclusionCase::C { p, r, e, gamma, .. } => SpaceSpec::lorentz_zygmund(p, r + e, gamma),
            InclusionCase::D { p, r, gamma, .. } => SpaceSpec::lorentz_zygmund(p, r, gamma),
            InclusionCase::E { p, r, gamma, .. } => SpaceSpec::lorentz_zygmund(p, r, gamma),
        }
    }

    /// The strictly larger space of the inclusion.
    pub fn big_space(&self) -> Result<SpaceSpec> {
        match *self {
            InclusionCase::A { q, r, .. } => SpaceSpec::lorentz(q, r),
            InclusionCase::B { q, r, .. } => SpaceSpec::lorentz(q, r),
            InclusionCase::C { p, r, alpha, .. } => SpaceSpec::lorentz_zygmund(p, r, alpha),
            InclusionCase::D { q, r, gamma, .. } => SpaceSpec::lorentz_zygmund(q, r, gamma),
            InclusionCase::E { p, r, alpha, .. } => SpaceSpec::lorentz_zygmund(p, r, alpha),
        }
    }

    /// Exponents `(beta, delta)` of a power-log element of big minus small.
    ///
    /// Cases that differ in `r` take the midpoint power `beta = r + e/2`.
    /// Cases that differ only in `p` sit on the power boundary `beta = r`
    /// and separate through the log weight with `delta = gamma + 1/p` (the
    /// `1/p` exponent makes the small-space series diverge at the slowest
    /// possible logarithmic order while the big-space series converges).
    /// Case (e) splits the log gap: `delta = alpha + 1/p + (gamma-alpha)/2`.
    pub fn witness_family(&self) -> Result<PowerLogFamily> {
        self.validate()?;
        let inv = |p: f64| if p.is_infinite() { 0.0 } else { 1.0 / p };
        match *self {
            InclusionCase::A { r, e, .. } => PowerLogFamily::new(r + e / 2.0, 0.0),
            InclusionCase::B { p, r, .. } => PowerLogFamily::new(r, inv(p)),
            InclusionCase::C { r, e, .. } => PowerLogFamily::new(r + e / 2.0, 0.0),
            InclusionCase::D { p, r, gamma, .. } => PowerLogFamily::new(r, gamma + inv(p)),
            InclusionCase::E { p, r, alpha, gamma } => {
                PowerLogFamily::new(r, alpha + inv(p) + (gamma - alpha) / 2.0)
            }
        }
    }
}

/// Matches a strictly nested pair of specs to its Lemma-style case.
pub fn classify_inclusion(small: &SpaceSpec, big: &SpaceSpec) -> Result<InclusionCase> {
    small.validate()?;
    big.validate()?;
    let (ps, rs, gs) = (small.p, small.r, small.gamma);
    let (pb, rb, gb) = (big.p, big.r, big.gamma);
    let case = if gs == 0.0 && gb == 0.0 {
        if rs > rb {
            InclusionCase::A { p: ps, q: pb, r: rb, e: rs - rb }
        } else if rs == rb && ps < pb {
            InclusionCase::B { p: ps, q: pb, r: rb }
        } else {
            return Err(Error::InvalidParameter(format!(
                "{small} is not strictly contained in {big}"
            )));
        }
    } else if ps == pb && rs > rb {
        InclusionCase::C { p: ps, r: rb, e: rs - rb, gamma: gs, alpha: gb }
    } else if ps < pb && rs == rb && gs == gb {
        InclusionCase::D { p: ps, q: pb, r: rb, gamma: gs }
    } else if ps == pb && rs == rb && gs > gb {
        InclusionCase::E { p: ps, r: rb, alpha: gb, gamma: gs }
    } else {
        return Err(Error::InvalidParameter(format!(
            "{small} is not strictly contained in {big} by any implemented case"
        )));
    };
    case.validate()?;
    Ok(case)
}

/// A witness element certifying one strict inclusion, with both the analytic
/// oracle verdicts and the numeric cross-checks.
#[derive(Debug, Clone, Serialize)]
pub struct WitnessReport {
    pub case: InclusionCase,
    pub family: PowerLogFamily,
    pub in_space: SpaceSpec,
    pub not_in_space: SpaceSpec,
    pub oracle_in: OracleVerdict,
    pub oracle_out: OracleVerdict,
    pub numeric_in: MembershipVerdict,
    pub numeric_out: MembershipVerdict,
    /// True when the numeric verdicts agree with the oracle on both sides
    /// (no inconclusive verdict allowed).
    pub certified: bool,
}

/// Budget and thresholds for the numeric side of a witness report.
#[derive(Debug, Clone)]
pub struct WitnessConfig {
    /// Prefix length fed to the truncated-norm verdicts.
    pub budget: usize,
    pub verdict: VerdictConfig,
}

impl Default for WitnessConfig {
    fn default() -> Self {
        WitnessConfig { budget: 1 << 18, verdict: VerdictConfig::default() }
    }
}

/// Constructs the power-log witness for `case`, certifies it with the oracle
/// on both sides (failing loudly on contradiction), and cross-checks with
/// truncated norms.
pub fn witness_sequence(case: &InclusionCase) -> Result<WitnessReport> {
    witness_sequence_with(case, &WitnessConfig::default())
}

pub fn witness_sequence_with(case: &InclusionCase, cfg: &WitnessConfig) -> Result<WitnessReport> {
    let family = case.witness_family()?;
    let big = case.big_space()?;
    let small = case.small_space()?;
    let oracle_in = power_log_oracle(family.beta, family.delta, &big)?;
    let oracle_out = power_log_oracle(family.beta, family.delta, &small)?;
    if oracle_in != OracleVerdict::Converges {
        return Err(Error::OracleContradiction(format!(
            "witness {family:?} fails to lie in the big space {big}"
        )));
    }
    if oracle_out != OracleVerdict::Diverges {
        return Err(Error::OracleContradiction(format!(
            "witness {family:?} unexpectedly lies in the small space {small}"
        )));
    }
    let prefix = family.prefix(cfg.budget);
    let numeric_in = truncated_norms_with(&prefix, &big, &cfg.verdict)?;
    let numeric_out = truncated_norms_with(&prefix, &small, &cfg.verdict)?;
    let certified = numeric_in.status.is_converged() && numeric_out.status.is_diverging();
    Ok(WitnessReport {
        case: *case,
        family,
        in_space: big,
        not_in_space: small,
        oracle_in,
        oracle_out,
        numeric_in,
        numeric_out,
        certified,
    })
}

/// Quasi-norm of `1_N = (1, ..., 1, 0, ...)` in `spec`.
pub fn ones_norm(spec: &SpaceSpec, n: usize) -> Result<f64> {
    spec.validate()?;
    if n == 0 {
        return Err(Error::InvalidParameter("ones_norm needs N >= 1".into()));
    }
    let (p, r, gamma) = (spec.p, spec.r, spec.gamma);
    if p.is_infinite() {
        let x = n as f64;
        let mut v = x.powf(r);
        if gamma != 0.0 {
            v *= (1.0 + x.ln()).powf(gamma);
        }
        return Ok(v);
    }
    let c = r * p - 1.0;
    let g = gamma * p;
    let mut sum = 0.0f64;
    for k in 1..=n {
        let x = k as f64;
        let mut term = x.powf(c);
        if g != 0.0 {
            term *= (1.0 + x.ln()).powf(g);
        }
        sum += term;
    }
    Ok(sum.powf(1.0 / p))
}

/// Predicted limit of `||1_N||_{s1} / ||1_N||_{s2}` when `r1 = r2`.
///
/// From the Polya–Szego limit, `||1_N||_{p,r} ~ N^r (rp)^{-1/p}`, so the
/// equal-`r` ratio tends to `(r2 p2)^{1/p2} / (r1 p1)^{1/p1}`.
pub fn ones_ratio_limit(s1: &SpaceSpec, s2: &SpaceSpec) -> Option<f64> {
    if s1.r != s2.r {
        return None;
    }
    let factor = |s: &SpaceSpec| {
        if s.p.is_infinite() {
            1.0
        } else {
            (s.r * s.p).powf(1.0 / s.p)
        }
    };
    Some(factor(s2) / factor(s1))
}

/// Profile of `||1_N||_{s1} / ||1_N||_{s2}` over the given truncations.
/// Both specs must be Lorentz; the three-way verdict reproduces the
/// `N^{r1-r2}` growth law.
pub fn ones_ratio_profile(s1: &SpaceSpec, s2: &SpaceSpec, ns: &[usize]) -> Result<RatioProfile> {
    s1.validate()?;
    s2.validate()?;
    if s1.kind != SpaceKind::Lorentz || s2.kind != SpaceKind::Lorentz {
        return Err(Error::InvalidParameter("ones_ratio_profile expects Lorentz specs".into()));
    }
    if ns.is_empty() || ns.contains(&0) {
        return Err(Error::InvalidParameter("truncation list must be non-empty and positive".into()));
    }
    let mut sorted: Vec<usize> = ns.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let max_n = *sorted.last().unwrap();

    // Incremental partial sums so the profile matches ones_norm bit for bit.
    let term = |s: &SpaceSpec, x: f64| -> f64 { x.powf(s.r * s.p - 1.0) };
    let mut ratios = Vec::with_capacity(sorted.len());
    let (mut sum1, mut sum2) = (0.0f64, 0.0f64);
    let mut next = 0usize;
    for k in 1..=max_n {
        let x = k as f64;
        if !s1.p.is_infinite() {
            sum1 += term(s1, x);
        }
        if !s2.p.is_infinite() {
            sum2 += term(s2, x);
        }
        if k == sorted[next] {
            let n1 = if s1.p.is_infinite() { x.powf(s1.r) } else { sum1.powf(1.0 / s1.p) };
            let n2 = if s2.p.is_infinite() { x.powf(s2.r) } else { sum2.powf(1.0 / s2.p) };
            ratios.push(n1 / n2);
            next += 1;
            if next == sorted.len() {
                break;
            }
        }
    }
    let predicted = s1.r - s2.r;
    let predicted = if predicted > 0.0 { Some(predicted) } else { None };
    Ok(RatioProfile::classify(sorted, ratios, predicted, &ProfileConfig::default()))
}

/// Finite Polya–Szego ratio `sum_{k<=N} k^alpha / N^{alpha+1}`, which tends
/// to `1/(alpha+1)` for `alpha > -1`.
pub fn polya_szego_ratio(alpha: f64, n: usize) -> Result<f64> {
    if !alpha.is_finite() || alpha <= -1.0 {
        return Err(Error::InvalidParameter(format!("alpha must exceed -1, got {alpha}")));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("N must be at least 1".into()));
    }
    let mut sum = 0.0f64;
    for k in 1..=n {
        sum += (k as f64).powf(alpha);
    }
    Ok(sum / (n as f64).powf(alpha + 1.0))
}

/// True iff the sequence is non-increasing and discretely convex
/// (`a_n - 2 a_{n+1} + a_{n+2} >= -tol`).
pub fn convexity_check(seq: &FiniteSeq) -> bool {
    let scale = seq.values().first().copied().unwrap_or(0.0).max(1.0);
    convexity_check_with(seq, 1e-12 * scale)
}

pub fn convexity_check_with(seq: &FiniteSeq, tol: f64) -> bool {
    let v = seq.values();
    if v.windows(2).any(|w| w[0] < w[1]) {
        return false;
    }
    v.windows(3).all(|w| w[0] - 2.0 * w[1] + w[2] >= -tol)
}

/// Empirical doubling diagnostics `sup_n eps_n / eps_{2n}`.
#[derive(Debug, Clone, Serialize)]
pub struct DoublingReport {
    pub sup_ratio: f64,
    /// 1-based index attaining the supremum.
    pub attained_at: usize,
    /// Whether the dyadic samples of the ratio settle down (a growing trend
    /// means the doubling condition fails, as for geometric decay).
    pub stabilizing: bool,
    /// `(n, eps_n / eps_{2n})` at dyadic `n`, for inspection.
    pub dyadic_ratios: Vec<(usize, f64)>,
}

/// Scans `eps_n / eps_{2n}` for `n <= n_max`; `eps` is evaluated at 1-based
/// indices up to `2 n_max` and must be strictly positive there.
pub fn doubling_check(eps: impl Fn(usize) -> f64, n_max: usize) -> Result<DoublingReport> {
    if n_max == 0 {
        return Err(Error::InvalidParameter("doubling check needs n_max >= 1".into()));
    }
    let mut sup = f64::NEG_INFINITY;
    let mut attained_at = 1;
    let mut dyadic = Vec::new();
    let mut next_dyadic = 1usize;
    for n in 1..=n_max {
        let num = eps(n);
        let den = eps(2 * n);
        if !(num.is_finite() && den.is_finite()) || num <= 0.0 || den <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "doubling check needs a positive family, got eps({n}) = {num}, eps({}) = {den}",
                2 * n
            )));
        }
        let ratio = num / den;
        if ratio > sup {
            sup = ratio;
            attained_at = n;
        }
        if n == next_dyadic {
            dyadic.push((n, ratio));
            next_dyadic *= 2;
        }
    }
    let stabilizing = match dyadic.len() {
        0 | 1 => true,
        l => {
            let (_, last) = dyadic[l - 1];
            let (_, prev) = dyadic[l - 2];
            last <= prev * 1.05
        }
    };
    Ok(DoublingReport { sup_ratio: sup, attained_at, stabilizing, dyadic_ratios: dyadic })
}

/// Doubling diagnostics for a stored prefix (uses indices up to `len/2`).
pub fn doubling_check_seq(seq: &FiniteSeq) -> Result<DoublingReport> {
    let half = seq.len() / 2;
    if half == 0 {
        return Err(Error::InvalidParameter("sequence too short for a doubling check".into()));
    }
    let v = seq.values().to_vec();
    doubling_check(move |n| v[n - 1], half)
}

/// Convenience: `lz_norm` restricted to the power-log family prefix.
pub fn power_log_norm(family: &PowerLogFamily, spec: &SpaceSpec, len: usize) -> Result<f64> {
    lz_norm(&family.prefix(len), spec.p, spec.r, spec.gamma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn l(p: f64, r: f64) -> SpaceSpec {
        SpaceSpec::lorentz(p, r).unwrap()
    }

    fn lz(p: f64, r: f64, g: f64) -> SpaceSpec {
        SpaceSpec::lorentz_zygmund(p, r, g).unwrap()
    }

    #[test]
    fn oracle_examples() {
        // n^{-2} in l_{1,1}
        assert_eq!(power_log_oracle(2.0, 0.0, &l(1.0, 1.0)).unwrap(), OracleVerdict::Converges);
        // n^{-1} (1+ln n)^{-1} in l_{1,1}
        assert_eq!(power_log_oracle(1.0, 1.0, &l(1.0, 1.0)).unwrap(), OracleVerdict::Diverges);
        // boundary n^{-r} in l_{p,r}
        assert_eq!(power_log_oracle(1.5, 0.0, &l(2.0, 1.5)).unwrap(), OracleVerdict::Diverges);
    }

    #[test]
    fn oracle_sup_form() {
        let sup = SpaceSpec::lorentz(f64::INFINITY, 1.0).unwrap();
        assert_eq!(power_log_oracle(1.5, 0.0, &sup).unwrap(), OracleVerdict::Converges);
        assert_eq!(power_log_oracle(0.5, 0.0, &sup).unwrap(), OracleVerdict::Diverges);
        assert_eq!(power_log_oracle(1.0, 0.0, &sup).unwrap(), OracleVerdict::Converges);
        let supz = SpaceSpec::lorentz_zygmund(f64::INFINITY, 1.0, 2.0).unwrap();
        assert_eq!(power_log_oracle(1.0, 1.0, &supz).unwrap(), OracleVerdict::Diverges);
        assert_eq!(power_log_oracle(1.0, 2.0, &supz).unwrap(), OracleVerdict::Converges);
    }

    #[test]
    fn witness_formulas_match_expected() {
        let a = InclusionCase::A { p: 1.0, q: 1.0, r: 1.0, e: 1.0 };
        assert_eq!(a.witness_family().unwrap(), PowerLogFamily { beta: 1.5, delta: 0.0 });
        assert_eq!(a.big_space().unwrap(), l(1.0, 1.0));
        assert_eq!(a.small_space().unwrap(), l(1.0, 2.0));

        let b = InclusionCase::B { p: 1.0, q: 2.0, r: 1.0 };
        assert_eq!(b.witness_family().unwrap(), PowerLogFamily { beta: 1.0, delta: 1.0 });

        let e = InclusionCase::E { p: 1.0, r: 1.0, alpha: 1.0, gamma: 3.0 };
        assert_eq!(e.witness_family().unwrap(), PowerLogFamily { beta: 1.0, delta: 3.0 });
        assert_eq!(e.big_space().unwrap(), lz(1.0, 1.0, 1.0));
        assert_eq!(e.small_space().unwrap(), lz(1.0, 1.0, 3.0));
    }

    #[test]
    fn witness_case_a_certifies_quickly() {
        let case = InclusionCase::A { p: 1.0, q: 1.0, r: 1.0, e: 1.0 };
        let cfg = WitnessConfig { budget: 1 << 14, verdict: VerdictConfig::default() };
        let report = witness_sequence_with(&case, &cfg).unwrap();
        assert!(report.certified, "in: {:?}, out: {:?}", report.numeric_in.status, report.numeric_out.status);
    }

    #[test]
    fn invalid_cases_are_rejected() {
        assert!(InclusionCase::B { p: 2.0, q: 1.0, r: 1.0 }.validate().is_err());
        assert!(InclusionCase::E { p: 1.0, r: 1.0, alpha: 3.0, gamma: 1.0 }.validate().is_err());
        assert!(InclusionCase::A { p: 1.0, q: 1.0, r: 0.0, e: 1.0 }.validate().is_err());
    }

    #[test]
    fn classify_recovers_cases() {
        assert_eq!(
            classify_inclusion(&l(1.0, 2.0), &l(1.0, 1.0)).unwrap().label(),
            'a'
        );
        assert_eq!(classify_inclusion(&l(1.0, 1.0), &l(2.0, 1.0)).unwrap().label(), 'b');
        assert_eq!(
            classify_inclusion(&lz(1.0, 1.0, 3.0), &lz(1.0, 1.0, 1.0)).unwrap().label(),
            'e'
        );
        assert!(classify_inclusion(&l(2.0, 1.0), &l(1.0, 1.0)).is_err());
        assert!(classify_inclusion(&l(1.0, 1.0), &l(1.0, 1.0)).is_err());
    }

    #[test]
    fn ones_norm_examples() {
        assert_relative_eq!(ones_norm(&l(1.0, 1.0), 7).unwrap(), 7.0);
        assert_relative_eq!(ones_norm(&l(1.0, 2.0), 9).unwrap(), 45.0);
        assert_relative_eq!(ones_norm(&l(2.0, 1.0), 4).unwrap(), 10f64.sqrt(), max_relative = 1e-14);
    }

    #[test]
    fn ones_ratio_exact_example() {
        let ns: Vec<usize> = vec![9, 99, 999];
        let profile = ones_ratio_profile(&l(1.0, 2.0), &l(1.0, 1.0), &ns).unwrap();
        // ratio at N is (N(N+1)/2)/N = (N+1)/2
        assert_relative_eq!(profile.ratios[0], 5.0, max_relative = 1e-12);
        assert_relative_eq!(profile.ratios[2], 500.0, max_relative = 1e-12);
    }

    #[test]
    fn ones_ratio_equal_r_limit() {
        // Paper orientation: numerator l_{2,1}, denominator l_{1,1} gives
        // (r1 p)^{1/p} / (r2 q)^{1/q} = 1/sqrt(2).
        let limit = ones_ratio_limit(&l(2.0, 1.0), &l(1.0, 1.0)).unwrap();
        assert_relative_eq!(limit, std::f64::consts::FRAC_1_SQRT_2, max_relative = 1e-14);
        let ns = vec![1_000, 10_000, 100_000];
        let profile = ones_ratio_profile(&l(2.0, 1.0), &l(1.0, 1.0), &ns).unwrap();
        let last = profile.ratios.last().unwrap();
        assert!((last - limit).abs() <= 0.01 * limit);
        assert_eq!(profile.verdict, crate::profile::RatioVerdict::Finite);
    }

    #[test]
    fn polya_examples() {
        assert_relative_eq!(polya_szego_ratio(1.0, 100).unwrap(), 0.505, max_relative = 1e-12);
        assert_relative_eq!(polya_szego_ratio(0.0, 10).unwrap(), 1.0);
        let v = polya_szego_ratio(-0.5, 10_000).unwrap();
        assert!((v - 2.0).abs() < 0.02, "got {v}");
        assert!(polya_szego_ratio(-1.0, 10).is_err());
    }

    #[test]
    fn convexity_examples() {
        let inv = FiniteSeq::from_fn(1000, |n| 1.0 / n as f64).unwrap();
        assert!(convexity_check(&inv));
        // the witness family of the finite-rank corollary, with its own log base
        let cor = FiniteSeq::from_fn(10_000, |n| {
            (n as f64).powi(-1) * (1.0 + (n as f64).log2()).powf(-0.5)
        })
        .unwrap();
        assert!(convexity_check(&cor));
        let bump = FiniteSeq::new(vec![1.0, 0.2, 0.19, 0.0]).unwrap();
        assert!(!convexity_check(&bump));
        let rising = FiniteSeq::new(vec![0.5, 1.0]).unwrap();
        assert!(!convexity_check(&rising));
    }

    #[test]
    fn doubling_examples() {
        let r = doubling_check(|n| 1.0 / n as f64, 1 << 12).unwrap();
        assert_relative_eq!(r.sup_ratio, 2.0, max_relative = 1e-12);
        assert!(r.stabilizing);

        let r = doubling_check(
            |n| (n as f64).powi(-1) * (1.0 + (n as f64).log2()).powf(-0.5),
            1 << 12,
        )
        .unwrap();
        assert!(r.sup_ratio <= 2.0 * 2f64.sqrt() + 1e-12);
        assert_eq!(r.attained_at, 1);
        let (_, last) = *r.dyadic_ratios.last().unwrap();
        assert!((last - 2.0).abs() < 0.1, "tail ratio {last}");

        let r = doubling_check(|n| 0.5f64.powi(n as i32), 64).unwrap();
        assert!(!r.stabilizing);
        assert!(r.sup_ratio >= 2f64.powi(64) / 2.0);
    }
}
