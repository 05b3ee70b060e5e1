//! Approximation-space norms and separation experiments.
//!
//! For a scheme with error sequences `E(x, A_n)`, the approximation-space
//! quasi-norm of `x` under a sequence space `S` is the `S`-norm of the error
//! sequence.  Index alignment: the errors `(E(x,A_0), E(x,A_1), ...)` enter
//! the sequence-space norm as `(a_1, a_2, ...)` — the shift changes norms by
//! bounded factors only, so every membership and divergence verdict is
//! unaffected.
//!
//! The experiments here make three non-equivalence arguments executable:
//! prescribed-error elements on a linear scheme ([`separate_linear`]), the
//! unit-gap elements whose errors are the `1_N` pattern ([`separate_teo2`]),
//! and the convex-witness construction for equal smoothness order
//! ([`corbrud_separation`]).  [`oikhberg_sandwich_check`] verifies the
//! two-sided bound `3 eps_{[n/6]} >= a_n(T) >= eps_n / 9` on diagonal
//! realizations.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::profile::{ProfileConfig, RatioProfile};
use crate::scales::{
    classify_inclusion, doubling_check, power_log_oracle, OracleVerdict, PowerLogFamily,
};
use crate::schemes::{DiagonalScheme, HilbertScheme};
use crate::seqspace::{truncated_norms_with, FiniteSeq, SpaceSpec};
use crate::verdict::{MembershipVerdict, VerdictConfig};

/// Quasi-norm modulus of `A(X, S)` on a fixed scheme: errors are subadditive
/// and stay non-increasing, so only the weighted p-triangle constant enters
/// (`2^{1/p-1}` for `p < 1`, `1` otherwise).
pub fn quasi_norm_modulus(spec: &SpaceSpec) -> f64 {
    if spec.p >= 1.0 {
        1.0
    } else {
        (1.0 / spec.p - 1.0).exp2()
    }
}

/// Membership verdict for `x` in `A(X, S, {A_n})` from the truncated norms
/// of its error sequence.
pub fn approx_norm(
    scheme: &HilbertScheme,
    x: &[f64],
    spec: &SpaceSpec,
    n: usize,
) -> Result<MembershipVerdict> {
    approx_norm_with(scheme, x, spec, n, &VerdictConfig::default())
}

pub fn approx_norm_with(
    scheme: &HilbertScheme,
    x: &[f64],
    spec: &SpaceSpec,
    n: usize,
    cfg: &VerdictConfig,
) -> Result<MembershipVerdict> {
    let errors = scheme.error_sequence(x, n)?;
    truncated_norms_with(&errors, spec, cfg)
}

/// Same entry point for operator schemes, whose error sequence is already the
/// sequence of approximation numbers.
pub fn approx_norm_operator(
    errors: &FiniteSeq,
    spec: &SpaceSpec,
    cfg: &VerdictConfig,
) -> Result<MembershipVerdict> {
    truncated_norms_with(errors, spec, cfg)
}

/// Outcome of a prescribed-error separation on a linear scheme.
#[derive(Debug, Clone, Serialize)]
pub struct LinearSeparation {
    pub s1: SpaceSpec,
    pub s2: SpaceSpec,
    /// Witness exponents: the prescribed errors are `eps_k = w(k+1)` for the
    /// power-log family `w`.
    pub witness: PowerLogFamily,
    /// Power growth exponent of the numerator norms, when one exists
    /// (log-boundary witnesses diverge too slowly for a power fit).
    pub predicted_rate: Option<f64>,
    pub profile: RatioProfile,
    /// True when the integral-test oracle certifies the witness on both
    /// sides, i.e. the strict inclusion itself is certified analytically.
    pub oracle_certified: bool,
}

/// Builds `y_N` with `E(y_N, A_k) = eps_k` for a witness `eps` in
/// `S_1 \ S_2` and profiles `||y_N||_{A(X,s2)} / ||y_N||_{A(X,s1)}`.
///
/// Requires `s2` strictly contained in `s1`; equal specs are allowed as the
/// degenerate control (the ratio is identically 1).
pub fn separate_linear(
    scheme: &HilbertScheme,
    s1: &SpaceSpec,
    s2: &SpaceSpec,
    ns: &[usize],
) -> Result<LinearSeparation> {
    if ns.is_empty() {
        return Err(Error::EmptyInput("truncation list".into()));
    }
    let mut sorted = ns.to_vec();
    sorted.sort_unstable();
    sorted.dedup();

    let (witness, predicted_rate, oracle_certified) = if s1 == s2 {
        (PowerLogFamily::new(s1.r + 1.0, 0.0)?, None, false)
    } else {
        let case = classify_inclusion(s2, s1)?;
        let family = case.witness_family()?;
        if power_log_oracle(family.beta, family.delta, s1)? != OracleVerdict::Converges {
            return Err(Error::OracleContradiction(format!(
                "witness {family:?} does not lie in {s1}"
            )));
        }
        if power_log_oracle(family.beta, family.delta, s2)? != OracleVerdict::Diverges {
            return Err(Error::OracleContradiction(format!(
                "witness {family:?} unexpectedly lies in {s2}"
            )));
        }
        let rho = s2.r - family.beta;
        let predicted = if rho > 1e-12 { Some(rho) } else { None };
        (family, predicted, true)
    };

    let mut ratios = Vec::with_capacity(sorted.len());
    for &n in &sorted {
        let eps = FiniteSeq::from_fn(n + 1, |k| witness.eval(k))?;
        let y = scheme.prescribe_errors(&eps)?;
        let errors = scheme.error_sequence(&y, n + 1)?;
        let num = s2.norm(&errors)?;
        let den = s1.norm(&errors)?;
        ratios.push(num / den);
    }
    let profile = RatioProfile::classify(sorted, ratios, predicted_rate, &ProfileConfig::default());
    Ok(LinearSeparation {
        s1: *s1,
        s2: *s2,
        witness,
        predicted_rate,
        profile,
        oracle_certified,
    })
}

/// Outcome of the unit-gap (ones-pattern) separation.
#[derive(Debug, Clone, Serialize)]
pub struct GapSeparation {
    pub s1: SpaceSpec,
    pub s2: SpaceSpec,
    /// Lower bound for the scheme's unit-sphere gap (1 on the Hilbert scheme).
    pub gap: f64,
    /// `r1 - r2` when positive: the exact growth exponent of the ones ratio.
    pub predicted_rate: Option<f64>,
    /// Whether the ones-ratio hypothesis (divergence) holds for this pair.
    pub ones_ratio_diverges: bool,
    pub profile: RatioProfile,
}

/// Realizes the gap elements `a_N = e_{N-1}` (unit norm, `E(a_N, A_k) = 1`
/// for `k < N`, zero after) and profiles
/// `||a_N||_{A(s1)} / ||a_N||_{A(s2)}`, which equals the ones-norm ratio
/// exactly on the Hilbert scheme.
pub fn separate_teo2(
    scheme: &HilbertScheme,
    s1: &SpaceSpec,
    s2: &SpaceSpec,
    ns: &[usize],
) -> Result<GapSeparation> {
    if ns.is_empty() {
        return Err(Error::EmptyInput("truncation list".into()));
    }
    s1.validate()?;
    s2.validate()?;
    let mut sorted = ns.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted[0] == 0 {
        return Err(Error::InvalidParameter("truncations must be at least 1".into()));
    }
    let gap = scheme.shapiro_gap(0);
    let diff = s1.r - s2.r;
    let predicted_rate = if diff > 1e-12 { Some(diff) } else { None };
    let ones_ratio_diverges = predicted_rate.is_some();
    let mut ratios = Vec::with_capacity(sorted.len());
    for &n in &sorted {
        let x = scheme.basis_element(n - 1)?;
        let errors = scheme.error_sequence(&x, n)?;
        let num = s1.norm(&errors)?;
        let den = s2.norm(&errors)?;
        ratios.push(num / den);
    }
    let profile = RatioProfile::classify(sorted, ratios, predicted_rate, &ProfileConfig::default());
    Ok(GapSeparation {
        s1: *s1,
        s2: *s2,
        gap,
        predicted_rate,
        ones_ratio_diverges,
        profile,
    })
}

/// Full diagnostics of the equal-order separation experiment.
#[derive(Debug, Clone, Serialize)]
pub struct CorbrudReport {
    pub r: f64,
    pub p: f64,
    pub q: f64,
    /// The prescribed errors are `eps_n = (n+1)^{-r} (1 + ln(n+1))^{-1/p}`.
    pub witness: PowerLogFamily,
    pub convex: bool,
    pub doubling_sup: f64,
    /// The observed doubling supremum must stay below `2^r * 2^{1/p}`.
    pub doubling_bound: f64,
    pub oracle_big: OracleVerdict,
    pub oracle_small: OracleVerdict,
    pub verdict_big: MembershipVerdict,
    pub verdict_small: MembershipVerdict,
    /// Convexity, doubling, and both membership verdicts all in place.
    pub certified: bool,
}

/// Builds `x` with `E(x, A_n) = (n+1)^{-r} (1 + ln(n+1))^{-1/p}` exactly and
/// verifies: the error profile is convex and doubling, `x` belongs to
/// `A_q^r` and not to `A_p^r`.
pub fn corbrud_separation(
    scheme: &HilbertScheme,
    r: f64,
    p: f64,
    q: f64,
    n: usize,
) -> Result<CorbrudReport> {
    corbrud_separation_with(scheme, r, p, q, n, &VerdictConfig::default())
}

pub fn corbrud_separation_with(
    scheme: &HilbertScheme,
    r: f64,
    p: f64,
    q: f64,
    n: usize,
    cfg: &VerdictConfig,
) -> Result<CorbrudReport> {
    if !(p.is_finite() && q.is_finite() && p > 0.0 && q > 0.0 && p < q) {
        return Err(Error::InvalidParameter(format!(
            "need finite 0 < p < q, got p = {p}, q = {q}"
        )));
    }
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::InvalidParameter(format!("need r > 0, got {r}")));
    }
    let witness = PowerLogFamily::new(r, 1.0 / p)?;
    let big = SpaceSpec::lorentz(q, r)?;
    let small = SpaceSpec::lorentz(p, r)?;
    let oracle_big = power_log_oracle(witness.beta, witness.delta, &big)?;
    let oracle_small = power_log_oracle(witness.beta, witness.delta, &small)?;

    let eps = FiniteSeq::from_fn(n + 1, |k| witness.eval(k))?;
    let x = scheme.prescribe_errors(&eps)?;
    let errors = scheme.error_sequence(&x, n)?;

    let convex = crate::scales::convexity_check(&eps);
    let doubling = doubling_check(|m| witness.eval(m), (n / 2).max(1))?;
    let doubling_bound = r.exp2() * (1.0 / p).exp2();

    let verdict_big = truncated_norms_with(&errors, &big, cfg)?;
    let verdict_small = truncated_norms_with(&errors, &small, cfg)?;
    let certified = convex
        && doubling.sup_ratio <= doubling_bound * (1.0 + 1e-12)
        && verdict_big.status.is_converged()
        && verdict_small.status.is_diverging()
        && oracle_big == OracleVerdict::Converges
        && oracle_small == OracleVerdict::Diverges;
    Ok(CorbrudReport {
        r,
        p,
        q,
        witness,
        convex,
        doubling_sup: doubling.sup_ratio,
        doubling_bound,
        oracle_big,
        oracle_small,
        verdict_big,
        verdict_small,
        certified,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SandwichEntry {
    pub n: usize,
    pub a_n: f64,
    /// `eps_n / 9`.
    pub lower: f64,
    /// `3 eps_{max(1, floor(n/6))}`.
    pub upper: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SandwichReport {
    pub holds: bool,
    pub first_violation: Option<usize>,
    pub entries: Vec<SandwichEntry>,
}

/// Verifies the two-sided sandwich `3 eps_{[n/6]} >= a_n(T) >= eps_n / 9`
/// for a diagonal operator, entry by entry.  For the canonical construction
/// `T = diag(eps)` the approximation numbers equal `eps_n` and the sandwich
/// holds with explicit margins.
pub fn oikhberg_sandwich_check(eps: &FiniteSeq, scheme: &DiagonalScheme) -> Result<SandwichReport> {
    if !eps.is_non_increasing() {
        return Err(Error::NotNonIncreasing(eps.first_increase().unwrap_or(0)));
    }
    if eps.is_empty() {
        return Err(Error::EmptyInput("sandwich profile".into()));
    }
    let n_max = eps.len().min(scheme.len());
    let ev = eps.values();
    let mut entries = Vec::with_capacity(n_max);
    let mut first_violation = None;
    for n in 1..=n_max {
        let a_n = scheme.approximation_number(n);
        let lower = ev[n - 1] / 9.0;
        let upper = 3.0 * ev[(n / 6).max(1) - 1];
        let holds = lower <= a_n * (1.0 + 1e-12) + 1e-300 && a_n <= upper * (1.0 + 1e-12) + 1e-300;
        if !holds && first_violation.is_none() {
            first_violation = Some(n);
        }
        entries.push(SandwichEntry { n, a_n, lower, upper, holds });
    }
    Ok(SandwichReport { holds: first_violation.is_none(), first_violation, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::RatioVerdict;
    use approx::assert_relative_eq;

    fn l(p: f64, r: f64) -> SpaceSpec {
        SpaceSpec::lorentz(p, r).unwrap()
    }

    #[test]
    fn approx_norm_geometric_example() {
        let h = HilbertScheme::desk();
        // eps_k = 2^{-k}; the norm in l_{1,1} converges to sum 2^{-(n-1)} = 2
        let eps = FiniteSeq::from_fn(40, |k| 0.5f64.powi(k as i32 - 1)).unwrap();
        let x = h.prescribe_errors(&eps).unwrap();
        let v = approx_norm(&h, &x, &l(1.0, 1.0), 39).unwrap();
        assert!(v.status.is_converged());
        assert_relative_eq!(v.last_norm(), 2.0, max_relative = 1e-9);
    }

    #[test]
    fn approx_norm_of_gap_element_is_n() {
        let h = HilbertScheme::desk();
        let x = h.basis_element(9).unwrap(); // e_9: errors are 1 up to A_9
        let v = approx_norm(&h, &x, &l(1.0, 1.0), 10).unwrap();
        assert_relative_eq!(v.last_norm(), 10.0);
    }

    #[test]
    fn teo2_ratio_is_exact_closed_form() {
        let h = HilbertScheme::desk();
        let ns: Vec<usize> = (1..=8).map(|k| 199 * k).collect();
        let sep = separate_teo2(&h, &l(1.0, 2.0), &l(1.0, 1.0), &ns).unwrap();
        for (&n, &ratio) in sep.profile.ns.iter().zip(&sep.profile.ratios) {
            assert_relative_eq!(ratio, (n as f64 + 1.0) / 2.0, epsilon = 1e-10);
        }
        assert_relative_eq!(sep.profile.ratios[0], 100.0, epsilon = 1e-10);
    }

    #[test]
    fn teo2_equal_specs_is_bounded() {
        let h = HilbertScheme::desk();
        let ns = vec![16, 64, 256, 1024];
        let sep = separate_teo2(&h, &l(1.0, 1.0), &l(1.0, 1.0), &ns).unwrap();
        assert!(!sep.ones_ratio_diverges);
        assert_eq!(sep.profile.verdict, RatioVerdict::Finite);
        assert!(sep.profile.ratios.iter().all(|&r| (r - 1.0).abs() < 1e-12));
    }

    #[test]
    fn separate_linear_rejects_non_nested() {
        let h = HilbertScheme::desk();
        // l_{2,1} is NOT contained in l_{1,1} (the inclusion runs the other way)
        assert!(separate_linear(&h, &l(1.0, 1.0), &l(2.0, 1.0), &[16, 32]).is_err());
    }

    #[test]
    fn separate_linear_power_witness_diverges() {
        let h = HilbertScheme::desk();
        // s2 = l_{1,3} strictly inside s1 = l_{1,1}; witness beta = 2 gives
        // numerator sums ~ N and denominator ~ pi^2/6.
        let ns: Vec<usize> = (4..=13).map(|j| 1usize << j).collect();
        let sep = separate_linear(&h, &l(1.0, 1.0), &l(1.0, 3.0), &ns).unwrap();
        assert!(sep.oracle_certified);
        assert_eq!(sep.witness, PowerLogFamily { beta: 2.0, delta: 0.0 });
        assert_eq!(sep.predicted_rate, Some(1.0));
        assert_eq!(sep.profile.verdict, RatioVerdict::Diverges);
    }

    #[test]
    fn separate_linear_equal_specs_ratio_one() {
        let h = HilbertScheme::desk();
        let sep = separate_linear(&h, &l(1.0, 1.0), &l(1.0, 1.0), &[16, 64, 256]).unwrap();
        assert!(sep.profile.ratios.iter().all(|&r| (r - 1.0).abs() < 1e-12));
        assert_eq!(sep.profile.verdict, RatioVerdict::Finite);
    }

    #[test]
    fn corbrud_rejects_equal_exponents() {
        let h = HilbertScheme::desk();
        assert!(corbrud_separation(&h, 1.0, 2.0, 2.0, 64).is_err());
    }

    #[test]
    fn sandwich_canonical_construction_holds() {
        let eps = FiniteSeq::from_fn(64, |n| 0.5f64.powi(n as i32)).unwrap();
        let scheme = DiagonalScheme::new(eps.clone());
        let report = oikhberg_sandwich_check(&eps, &scheme).unwrap();
        assert!(report.holds);
        for e in &report.entries {
            assert_relative_eq!(e.a_n, eps.values()[e.n - 1]);
            assert!(e.a_n - e.lower >= 0.0);
            assert!(e.upper - e.a_n >= 0.0);
        }
    }

    #[test]
    fn sandwich_scaled_constructions() {
        let eps = FiniteSeq::from_fn(64, |n| 1.0 / n as f64).unwrap();
        // Scaling by 2 cannot break either side: 3 eps_{[n/6]} >= 3 eps_n >= 2 eps_n.
        let scaled2 = DiagonalScheme::new(eps.scaled(2.0).unwrap());
        assert!(oikhberg_sandwich_check(&eps, &scaled2).unwrap().holds);
        // Scaling a flat profile by 4 breaks the upper bound at every n.
        let flat = FiniteSeq::new(vec![1.0; 16]).unwrap();
        let scaled4 = DiagonalScheme::new(flat.scaled(4.0).unwrap());
        let report = oikhberg_sandwich_check(&flat, &scaled4).unwrap();
        assert!(!report.holds);
        assert_eq!(report.first_violation, Some(1));
    }
}
