//! Operations on K-functionals: profiles, discrete interpolation norms, the
//! unit-sphere gap scan, and the witness machinery for strict inclusions.

use std::ops::RangeInclusive;

use serde::Serialize;

use super::couples::SampledFn;
use super::{combine_bounds, validate_t, BoundType, KCouple, KProfile};
use crate::error::{Error, Result};
use crate::verdict::{classify_monotone, MembershipVerdict, VerdictConfig};

/// Samples `K(x, t)` over a positive grid (sorted to be decreasing).
pub fn k_profile<C: KCouple + ?Sized>(couple: &C, x: &C::Elem, ts: &[f64]) -> Result<KProfile> {
    if ts.is_empty() {
        return Err(Error::EmptyInput("t grid".into()));
    }
    let mut ts: Vec<f64> = ts.to_vec();
    for &t in &ts {
        validate_t(t)?;
    }
    ts.sort_unstable_by(|a, b| b.total_cmp(a));
    ts.dedup();
    let mut values = Vec::with_capacity(ts.len());
    for &t in &ts {
        values.push(couple.k(x, t)?);
    }
    Ok(KProfile { ts, values })
}

/// Truncated discrete interpolation norm
/// `rho_{theta,q}(x) = || {2^{k theta} K(x, 2^{-k})}_{k=0}^{k_max} ||_{l_q}`,
/// classified by the same verdict machinery as the sequence spaces.
/// Requires exact or upper K values (a lower bound cannot certify finiteness).
pub fn rho_norm<C: KCouple + ?Sized>(
    couple: &C,
    x: &C::Elem,
    theta: f64,
    q: f64,
    k_max: usize,
) -> Result<MembershipVerdict> {
    rho_norm_with(couple, x, theta, q, k_max, &VerdictConfig::default())
}

pub fn rho_norm_with<C: KCouple + ?Sized>(
    couple: &C,
    x: &C::Elem,
    theta: f64,
    q: f64,
    k_max: usize,
    cfg: &VerdictConfig,
) -> Result<MembershipVerdict> {
    if !(theta > 0.0 && theta < 1.0) {
        return Err(Error::InvalidParameter(format!("theta must lie in (0,1), got {theta}")));
    }
    if !(q > 0.0) {
        return Err(Error::InvalidParameter(format!("q must be positive, got {q}")));
    }
    let mut partials = Vec::with_capacity(k_max + 1);
    let mut sum = 0.0f64;
    let mut sup = 0.0f64;
    for k in 0..=k_max {
        let t = 0.5f64.powi(k as i32);
        let kv = couple.k(x, t)?;
        if kv.bound == BoundType::Lower {
            return Err(Error::StrategyMismatch(
                "rho norm needs exact or upper K values".into(),
            ));
        }
        let weighted = (k as f64 * theta).exp2() * kv.value;
        if q.is_infinite() {
            sup = sup.max(weighted);
            partials.push(sup);
        } else {
            if weighted > 0.0 {
                sum += weighted.powf(q);
            }
            partials.push(sum.powf(1.0 / q));
        }
    }
    let status = classify_monotone(&partials, if q.is_infinite() { 1.0 } else { q }, cfg);
    Ok(MembershipVerdict { status, partial_norms: partials })
}

/// A piecewise-linear ramp witness for the `(C[0,1], C^1[0,1])` couple:
/// `-1` left of `a`, `+1` right of `b`, linear in between, with the endpoints
/// snapped outward to grid nodes so the sampled representative is exact.
#[derive(Debug, Clone)]
pub struct CC1Witness {
    pub f: SampledFn,
    /// Requested ramp interval.
    pub a: f64,
    pub b: f64,
    /// Node-snapped ramp endpoints actually realized.
    pub a_node: f64,
    pub b_node: f64,
}

impl CC1Witness {
    pub fn width(&self) -> f64 {
        self.b_node - self.a_node
    }

    /// Certified lower bound for `K(f, t)`: any `g` with
    /// `||f - g||_inf < 1/2` has `g(a) < -1/2` and `g(b) > 1/2`, so the mean
    /// value theorem forces `||g||_Y >= 1/(b - a)`; hence
    /// `K(f, t) >= min(1/2, t/(b - a))` for every `t > 0`.
    pub fn certified_lower(&self, t: f64) -> f64 {
        (0.5f64).min(t / self.width())
    }
}

fn ramp_from_nodes(ia: usize, ib: usize, grid_points: usize) -> Result<CC1Witness> {
    if ia >= ib || ib >= grid_points {
        return Err(Error::InvalidParameter("degenerate ramp interval".into()));
    }
    let m1 = (grid_points - 1) as f64;
    let values = (0..grid_points)
        .map(|i| {
            if i <= ia {
                -1.0
            } else if i >= ib {
                1.0
            } else {
                -1.0 + 2.0 * (i - ia) as f64 / (ib - ia) as f64
            }
        })
        .collect();
    let f = SampledFn::new(values)?;
    Ok(CC1Witness {
        f,
        a: ia as f64 / m1,
        b: ib as f64 / m1,
        a_node: ia as f64 / m1,
        b_node: ib as f64 / m1,
    })
}

/// Builds the ramp witness with `f(a) = -1`, `f(b) = 1` on a uniform grid
/// with the given number of points; `0 < a < b < 1` required.
pub fn cc1_witness(a: f64, b: f64, grid_points: usize) -> Result<CC1Witness> {
    if grid_points < 3 {
        return Err(Error::InvalidParameter("ramp witness needs at least 3 grid points".into()));
    }
    if !(a > 0.0 && a < b && b < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "ramp endpoints must satisfy 0 < a < b < 1, got a = {a}, b = {b}"
        )));
    }
    let m1 = (grid_points - 1) as f64;
    let ia = (a * m1).floor() as usize;
    let ib = (b * m1).ceil() as usize;
    let mut w = ramp_from_nodes(ia, ib, grid_points)?;
    w.a = a;
    w.b = b;
    Ok(w)
}

/// Per-`t` result of the condition-(a) scan.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CondAProbe {
    /// A certified lower bound for `sup_{||x||_X = 1} K(x, t)`, if one is
    /// available (witness value).
    pub lower: Option<f64>,
    /// A certified upper bound for the same supremum, if one is available.
    pub upper_sup: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CondAReport {
    pub c_target: f64,
    pub entries: Vec<(f64, CondAProbe)>,
    pub verdict: CondAVerdict,
}

/// Whether condition (a) — the unit-sphere K values stay above `c` for all
/// small `t` — is certified, refuted, or undetermined on the scanned grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CondAVerdict {
    /// Every grid point has a certified lower bound at least `c`.
    Holds { c: f64 },
    /// Some grid point has a certified upper bound below the target.
    Fails { at_t: f64 },
    Undetermined,
}

/// Scans a decreasing `t` grid with per-`t` certified bounds.  Only lower
/// bounds can certify that the condition holds; upper-bound-only evidence
/// can only refute it.
pub fn condition_a_scan(
    t_grid: &[f64],
    c_target: f64,
    mut probe: impl FnMut(f64) -> Result<CondAProbe>,
) -> Result<CondAReport> {
    if t_grid.is_empty() {
        return Err(Error::EmptyInput("t grid".into()));
    }
    if !(c_target > 0.0) {
        return Err(Error::InvalidParameter("condition (a) needs a positive target".into()));
    }
    let mut entries = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        validate_t(t)?;
        entries.push((t, probe(t)?));
    }
    let mut all_lower = true;
    let mut min_lower = f64::INFINITY;
    let mut fails_at = None;
    for &(t, p) in &entries {
        match p.lower {
            Some(l) => min_lower = min_lower.min(l),
            None => all_lower = false,
        }
        if let Some(u) = p.upper_sup {
            if u < c_target && fails_at.is_none() {
                fails_at = Some(t);
            }
        }
    }
    let verdict = if let Some(at_t) = fails_at {
        CondAVerdict::Fails { at_t }
    } else if all_lower && min_lower >= c_target * (1.0 - 1e-9) {
        CondAVerdict::Holds { c: min_lower }
    } else {
        CondAVerdict::Undetermined
    };
    Ok(CondAReport { c_target, entries, verdict })
}

/// Condition (K2) estimate: the maximal `integral_0^t K(x,s) ds / K(x,t)`
/// over the grid, with the integral refined until 1e-4 relative stability.
#[derive(Debug, Clone, Serialize)]
pub struct K2Report {
    pub gamma: f64,
    pub per_t: Vec<(f64, f64)>,
}

const QUAD_REL_TOL: f64 = 1e-4;

/// Adaptive composite trapezoid of `K(x, .)` on `[0, t]`, with `K(x, 0) = 0`
/// by continuity of the couples used here.
fn integrate_k<C: KCouple + ?Sized>(
    couple: &C,
    x: &C::Elem,
    t: f64,
    init_steps: usize,
) -> Result<f64> {
    let mut n = init_steps.max(4);
    let eval = |s: f64| -> Result<f64> {
        if s == 0.0 {
            return Ok(0.0);
        }
        let kv = couple.k(x, s)?;
        if kv.bound != BoundType::Exact {
            return Err(Error::StrategyMismatch(
                "quadrature of a non-exact K would not certify (K2)".into(),
            ));
        }
        Ok(kv.value)
    };
    let trapezoid = |n: usize| -> Result<f64> {
        let h = t / n as f64;
        let mut acc = 0.5 * (eval(0.0)? + eval(t)?);
        for i in 1..n {
            acc += eval(i as f64 * h)?;
        }
        Ok(acc * h)
    };
    let mut prev = trapezoid(n)?;
    for _ in 0..16 {
        n *= 2;
        let cur = trapezoid(n)?;
        if (cur - prev).abs() <= QUAD_REL_TOL * cur.abs().max(1e-300) {
            return Ok(cur);
        }
        prev = cur;
    }
    Ok(prev)
}

pub fn k2_check<C: KCouple + ?Sized>(
    couple: &C,
    x: &C::Elem,
    t_grid: &[f64],
    quadrature_steps: usize,
) -> Result<K2Report> {
    if t_grid.is_empty() {
        return Err(Error::EmptyInput("t grid".into()));
    }
    let mut per_t = Vec::with_capacity(t_grid.len());
    let mut gamma = 0.0f64;
    for &t in t_grid {
        validate_t(t)?;
        let kt = couple.k(x, t)?;
        if kt.bound != BoundType::Exact {
            return Err(Error::StrategyMismatch("(K2) check needs an exact-strategy couple".into()));
        }
        if kt.value <= 0.0 {
            return Err(Error::InvalidParameter(
                "K(x,t) vanishes; (K2) is undefined for the zero element".into(),
            ));
        }
        let integral = integrate_k(couple, x, t, quadrature_steps)?;
        let ratio = integral / kt.value;
        gamma = gamma.max(ratio);
        per_t.push((t, ratio));
    }
    Ok(K2Report { gamma, per_t })
}

/// Truncated norm of `A({b_n}, {t_n})`: `sup_{n <= N} b_n K(x, t_n)`.
#[derive(Debug, Clone, Serialize)]
pub struct AbnOutcome {
    pub verdict: MembershipVerdict,
    /// Bound tier of the reported sups: `None` when exact, upper and lower
    /// K values were mixed (certifying nothing).
    pub bound: Option<BoundType>,
}

pub fn abn_norm<C: KCouple + ?Sized>(
    couple: &C,
    x: &C::Elem,
    b_seq: &[f64],
    t_seq: &[f64],
    n: usize,
) -> Result<AbnOutcome> {
    abn_norm_with(couple, x, b_seq, t_seq, n, &VerdictConfig::default())
}

pub fn abn_norm_with<C: KCouple + ?Sized>(
    couple: &C,
    x: &C::Elem,
    b_seq: &[f64],
    t_seq: &[f64],
    n: usize,
    cfg: &VerdictConfig,
) -> Result<AbnOutcome> {
    if n == 0 || b_seq.len() < n || t_seq.len() < n {
        return Err(Error::InvalidParameter(format!(
            "need at least {n} weights and t values, got {} and {}",
            b_seq.len(),
            t_seq.len()
        )));
    }
    if t_seq.windows(2).take(n - 1).any(|w| w[1] >= w[0]) {
        return Err(Error::NotNonIncreasing(
            t_seq.windows(2).position(|w| w[1] >= w[0]).unwrap_or(0),
        ));
    }
    if b_seq.iter().take(n).any(|&b| !b.is_finite() || b < 0.0) {
        return Err(Error::InvalidParameter("weights must be finite and non-negative".into()));
    }
    let mut sup = 0.0f64;
    let mut partials = Vec::with_capacity(n);
    let mut tags = Vec::with_capacity(n);
    for i in 0..n {
        validate_t(t_seq[i])?;
        let kv = couple.k(x, t_seq[i])?;
        tags.push(kv.bound);
        sup = sup.max(b_seq[i] * kv.value);
        partials.push(sup);
    }
    let status = classify_monotone(&partials, 1.0, cfg);
    Ok(AbnOutcome {
        verdict: MembershipVerdict { status, partial_norms: partials },
        bound: combine_bounds(tags),
    })
}

/// A family of unit-norm elements with a Y-norm barrier: any `y` within `c`
/// of the witness in `X` must have a large Y-norm.
pub trait BarrierFamily {
    type Elem;

    /// Unit-`X`-norm witness at scale `eps`.
    fn witness(&self, eps: f64) -> Result<Self::Elem>;

    /// Certified barrier value `phi_bar(eps)`: every `y` with
    /// `||x_eps - y||_X < c` satisfies `||y||_Y >= phi_bar(eps)`.
    /// `None` when the family carries no such certificate.
    fn barrier(&self, eps: f64, c: f64) -> Result<Option<f64>>;
}

/// Ramp witnesses on the sampled `(C, C^1)` couple.  The barrier is the mean
/// value theorem: staying within `c <= 1/2` of the ramp forces a derivative
/// of size at least one over the (node-snapped) ramp width.
#[derive(Debug, Clone, Copy)]
pub struct RampWitnessFamily {
    pub grid_points: usize,
    /// Ramp widths are capped at this (and snapped down to whole cells).
    pub max_width: f64,
}

impl RampWitnessFamily {
    pub fn new(grid_points: usize) -> Result<Self> {
        if grid_points < 5 {
            return Err(Error::InvalidParameter("ramp family needs at least 5 grid points".into()));
        }
        Ok(RampWitnessFamily { grid_points, max_width: 0.25 })
    }

    /// The node-snapped ramp witness of width at most `min(eps, max_width)`.
    pub fn ramp(&self, eps: f64) -> Result<CC1Witness> {
        let m1 = self.grid_points - 1;
        let h = 1.0 / m1 as f64;
        let target = eps.min(self.max_width);
        if target < h {
            return Err(Error::InvalidParameter(format!(
                "requested ramp width {target} is below the grid resolution {h}"
            )));
        }
        let cells = ((target * m1 as f64).floor() as usize).max(1);
        let ia = m1 / 2;
        ramp_from_nodes(ia, ia + cells, self.grid_points)
    }
}

impl BarrierFamily for RampWitnessFamily {
    type Elem = CC1Witness;

    fn witness(&self, eps: f64) -> Result<CC1Witness> {
        self.ramp(eps)
    }

    fn barrier(&self, eps: f64, c: f64) -> Result<Option<f64>> {
        if c > 0.5 {
            return Ok(None); // the MVT dichotomy only covers c <= 1/2
        }
        let w = self.ramp(eps)?;
        Ok(Some(1.0 / w.width()))
    }
}

/// Constant functions: unit norm but no barrier (the constant itself is a
/// zero-derivative approximant), so proposition preconditions fail loudly.
#[derive(Debug, Clone, Copy)]
pub struct ConstantFamily {
    pub grid_points: usize,
}

impl BarrierFamily for ConstantFamily {
    type Elem = SampledFn;

    fn witness(&self, _eps: f64) -> Result<SampledFn> {
        SampledFn::new(vec![1.0; self.grid_points])
    }

    fn barrier(&self, _eps: f64, _c: f64) -> Result<Option<f64>> {
        Ok(None)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PropEntry {
    pub n: usize,
    pub t_n: f64,
    /// Certified lower bound for `K(z_n, t_n)`, when the barrier holds.
    pub bound: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PropReport {
    pub entries: Vec<PropEntry>,
    pub all_hold: bool,
    pub failure: Option<String>,
}

/// Proposition-style witness chain: with `t_n = 1/phi(1/n)` and the scale-n
/// witness `z_n`, the barrier forces `K(z_n, t_n) >= c` (any `y` close to
/// `z_n` in `X` has `t_n ||y||_Y >= t_n phi(1/n) = 1 > c`).
pub fn proposition_witness<F: BarrierFamily>(
    phi: impl Fn(f64) -> f64,
    family: &F,
    c: f64,
    n_range: RangeInclusive<usize>,
) -> Result<PropReport> {
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::InvalidParameter(format!("need c in (0,1), got {c}")));
    }
    let mut entries = Vec::new();
    let mut all_hold = true;
    let mut failure = None;
    let mut prev_phi = 0.0f64;
    for n in n_range {
        if n == 0 {
            return Err(Error::InvalidParameter("witness indices start at 1".into()));
        }
        let eps = 1.0 / n as f64;
        let phi_val = phi(eps);
        if !phi_val.is_finite() || phi_val <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "phi must be positive and finite, got phi({eps}) = {phi_val}"
            )));
        }
        if phi_val <= prev_phi {
            return Err(Error::InvalidParameter(
                "phi must be strictly decreasing (phi(1/n) strictly increasing in n)".into(),
            ));
        }
        prev_phi = phi_val;
        let t_n = 1.0 / phi_val;
        let bound = match family.barrier(eps, c)? {
            Some(phi_bar) => {
                family.witness(eps)?; // witness must be constructible
                Some(c.min(t_n * phi_bar))
            }
            None => {
                all_hold = false;
                if failure.is_none() {
                    failure = Some(format!(
                        "family provides no Y-norm barrier at eps = {eps}; the dichotomy argument does not apply"
                    ));
                }
                None
            }
        };
        if let Some(b) = bound {
            if b < c * (1.0 - 1e-12) {
                all_hold = false;
                if failure.is_none() {
                    failure = Some(format!("certified bound {b} at n = {n} falls below c = {c}"));
                }
            }
        }
        entries.push(PropEntry { n, t_n, bound });
    }
    Ok(PropReport { entries, all_hold, failure })
}

/// Quadrature cross-check of the continuous interpolation norm
/// `|| t^{-(theta + 1/q)} K(x, t) ||_{L^q(t_min, t_max)}` on exact couples.
pub fn continuous_interp_norm<C: KCouple + ?Sized>(
    couple: &C,
    x: &C::Elem,
    theta: f64,
    q: f64,
    t_min: f64,
    t_max: f64,
    steps: usize,
) -> Result<f64> {
    if !(theta > 0.0 && theta < 1.0) {
        return Err(Error::InvalidParameter(format!("theta must lie in (0,1), got {theta}")));
    }
    validate_t(t_min)?;
    validate_t(t_max)?;
    if t_min >= t_max {
        return Err(Error::InvalidParameter("need t_min < t_max".into()));
    }
    let eval = |t: f64| -> Result<f64> {
        let kv = couple.k(x, t)?;
        if kv.bound != BoundType::Exact {
            return Err(Error::StrategyMismatch(
                "the continuous-norm cross-check needs an exact-strategy couple".into(),
            ));
        }
        Ok(kv.value)
    };
    if q.is_infinite() {
        let mut sup = 0.0f64;
        let n = steps.max(16);
        for i in 0..=n {
            let t = t_min + (t_max - t_min) * i as f64 / n as f64;
            sup = sup.max(t.powf(-theta) * eval(t)?);
        }
        return Ok(sup);
    }
    if !(q > 0.0) {
        return Err(Error::InvalidParameter(format!("q must be positive, got {q}")));
    }
    let integrand = |t: f64| -> Result<f64> { Ok((t.powf(-(theta + 1.0 / q)) * eval(t)?).powf(q)) };
    let trapezoid = |n: usize| -> Result<f64> {
        let h = (t_max - t_min) / n as f64;
        let mut acc = 0.5 * (integrand(t_min)? + integrand(t_max)?);
        for i in 1..n {
            acc += integrand(t_min + i as f64 * h)?;
        }
        Ok(acc * h)
    };
    let mut n = steps.max(8);
    let mut prev = trapezoid(n)?;
    for _ in 0..16 {
        n *= 2;
        let cur = trapezoid(n)?;
        if (cur - prev).abs() <= QUAD_REL_TOL * cur.abs().max(1e-300) {
            return Ok(cur.powf(1.0 / q));
        }
        prev = cur;
    }
    Ok(prev.powf(1.0 / q))
}

/// Equivalence constants of an observed K-profile against a target shape:
/// bounds `lower <= K(x,t)/phi(t) <= upper` over the grid.  This is the
/// verifier side of profile realization — given `x` and `phi`, report how
/// tightly `K(x, .)` tracks `phi`.
#[derive(Debug, Clone, Serialize)]
pub struct EquivalenceReport {
    pub lower: f64,
    pub upper: f64,
}

pub fn k_profile_equivalence<C: KCouple + ?Sized>(
    couple: &C,
    x: &C::Elem,
    phi: impl Fn(f64) -> f64,
    t_grid: &[f64],
) -> Result<EquivalenceReport> {
    if t_grid.is_empty() {
        return Err(Error::EmptyInput("t grid".into()));
    }
    let mut lower = f64::INFINITY;
    let mut upper = 0.0f64;
    for &t in t_grid {
        validate_t(t)?;
        let p = phi(t);
        if !p.is_finite() || p <= 0.0 {
            return Err(Error::InvalidParameter(format!("phi({t}) must be positive, got {p}")));
        }
        let ratio = couple.k(x, t)?.value / p;
        lower = lower.min(ratio);
        upper = upper.max(ratio);
    }
    Ok(EquivalenceReport { lower, upper })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interp::couples::{L1LinfCouple, SyntheticCouple};
    use approx::assert_relative_eq;

    #[test]
    fn rho_norm_of_linear_k_is_one_at_qinf() {
        let couple = SyntheticCouple::new(|t: f64| t);
        let v = rho_norm(&couple, &(), 0.5, f64::INFINITY, 24).unwrap();
        assert!(v.status.is_converged());
        assert_relative_eq!(v.last_norm(), 1.0);
    }

    #[test]
    fn rho_norm_of_clipped_k_attains_crossover() {
        let couple = SyntheticCouple::new(|t: f64| t.min(1.0));
        let v = rho_norm(&couple, &(), 0.5, f64::INFINITY, 24).unwrap();
        assert_relative_eq!(v.last_norm(), 1.0);
    }

    #[test]
    fn rho_norm_validates_theta_and_q() {
        let couple = SyntheticCouple::new(|t: f64| t);
        assert!(rho_norm(&couple, &(), 1.5, 2.0, 8).is_err());
        assert!(rho_norm(&couple, &(), 0.5, 0.0, 8).is_err());
    }

    #[test]
    fn cc1_witness_certificates() {
        let w = cc1_witness(0.4, 0.6, 1025).unwrap();
        assert_relative_eq!(w.f.sup_norm(), 1.0);
        assert_relative_eq!(w.certified_lower(0.2), 0.5);
        let w = cc1_witness(0.49, 0.51, 1025).unwrap();
        assert_relative_eq!(w.certified_lower(0.02), 0.5);
        assert!(cc1_witness(0.6, 0.4, 1025).is_err());
        assert!(cc1_witness(0.5, 0.5, 1025).is_err());
    }

    #[test]
    fn k2_examples() {
        let linear = SyntheticCouple::new(|t: f64| t);
        let grid: Vec<f64> = (1..=8).map(|i| i as f64 / 8.0).collect();
        let report = k2_check(&linear, &(), &grid, 16).unwrap();
        assert_relative_eq!(report.gamma, 0.5, max_relative = 1e-3);

        let sqrt = SyntheticCouple::new(|t: f64| t.sqrt());
        let report = k2_check(&sqrt, &(), &grid, 16).unwrap();
        assert_relative_eq!(report.gamma, 2.0 / 3.0, max_relative = 1e-3);
    }

    #[test]
    fn k2_rejects_non_exact_and_zero() {
        let couple = L1LinfCouple::new(2);
        assert!(k2_check(&couple, [0.0, 0.0].as_slice(), &[0.5], 8).is_err());
    }

    #[test]
    fn abn_matches_rho_at_q_inf() {
        let couple = L1LinfCouple::new(3);
        let x = [1.0, 0.5, 0.25];
        let theta = 0.3;
        let n = 20;
        let b: Vec<f64> = (0..n).map(|k| (k as f64 * theta).exp2()).collect();
        let t: Vec<f64> = (0..n).map(|k| 0.5f64.powi(k as i32)).collect();
        let abn = abn_norm(&couple, x.as_slice(), &b, &t, n).unwrap();
        let rho = rho_norm(&couple, x.as_slice(), theta, f64::INFINITY, n - 1).unwrap();
        assert_relative_eq!(abn.verdict.last_norm(), rho.last_norm(), epsilon = 1e-12);
        assert_eq!(abn.bound, Some(BoundType::Exact));
    }

    #[test]
    fn abn_zero_element_converges_immediately() {
        let couple = L1LinfCouple::new(2);
        let b = vec![1.0, 2.0, 4.0];
        let t = vec![1.0, 0.5, 0.25];
        let out = abn_norm(&couple, [0.0, 0.0].as_slice(), &b, &t, 3).unwrap();
        assert_eq!(out.verdict.status, MembershipStatus::ConvergedBy(1));
        assert_eq!(out.verdict.last_norm(), 0.0);
    }

    #[test]
    fn abn_rejects_non_decreasing_t() {
        let couple = L1LinfCouple::new(1);
        assert!(abn_norm(&couple, [1.0].as_slice(), &[1.0, 2.0], &[0.5, 0.5], 2).is_err());
    }

    #[test]
    fn proposition_with_inverse_phi_certifies_c() {
        let family = RampWitnessFamily::new(1025).unwrap();
        let report = proposition_witness(|eps| 1.0 / eps, &family, 0.5, 3..=50).unwrap();
        assert!(report.all_hold, "{:?}", report.failure);
        for e in &report.entries {
            assert_relative_eq!(e.bound.unwrap(), 0.5);
        }
    }

    #[test]
    fn proposition_constant_family_fails_loudly() {
        let family = ConstantFamily { grid_points: 64 };
        let report = proposition_witness(|eps| 1.0 / eps, &family, 0.5, 3..=10).unwrap();
        assert!(!report.all_hold);
        assert!(report.failure.is_some());
    }

    #[test]
    fn equivalence_report_tracks_exact_profile() {
        let couple = SyntheticCouple::new(|t: f64| 2.0 * t);
        let grid: Vec<f64> = (1..=6).map(|k| 0.5f64.powi(k)).collect();
        let eq = k_profile_equivalence(&couple, &(), |t| t, &grid).unwrap();
        assert_relative_eq!(eq.lower, 2.0);
        assert_relative_eq!(eq.upper, 2.0);
    }
}
