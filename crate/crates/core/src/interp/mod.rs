//! Peetre K-functionals and real-interpolation diagnostics.
//!
//! `K(x, t) = inf_{y in Y} ||x - y||_X + t ||y||_Y` for a couple with `Y`
//! continuously embedded in `X` (`Y` may carry a seminorm).  Values come in
//! three tiers, recorded on every number: exact closed forms, upper bounds
//! from explicit candidates, and certified analytic lower bounds.  Mixing the
//! tiers silently would make the strictness checks unsound, so the tier is
//! part of the value.

mod couples;
mod ops;

pub use couples::{CC1Couple, FiniteDimCouple, L1LinfCouple, SampledFn, SyntheticCouple};
pub use ops::{
    abn_norm, cc1_witness, condition_a_scan, continuous_interp_norm, k2_check, k_profile,
    k_profile_equivalence, proposition_witness, rho_norm, AbnOutcome, BarrierFamily, CC1Witness,
    CondAProbe, CondAReport, CondAVerdict, ConstantFamily, EquivalenceReport, K2Report, PropEntry,
    PropReport, RampWitnessFamily,
};

use serde::Serialize;

use crate::error::{Error, Result};

/// How a reported K value relates to the true infimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundType {
    Exact,
    Upper,
    Lower,
}

/// A K-functional value tagged with its bound tier.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KValue {
    pub value: f64,
    pub bound: BoundType,
}

impl KValue {
    pub fn exact(value: f64) -> Self {
        KValue { value, bound: BoundType::Exact }
    }

    pub fn upper(value: f64) -> Self {
        KValue { value, bound: BoundType::Upper }
    }

    pub fn lower(value: f64) -> Self {
        KValue { value, bound: BoundType::Lower }
    }
}

/// Combines bound tiers: exact values are neutral, upper and lower bounds
/// only combine with themselves (a mixture certifies nothing).
pub fn combine_bounds(tags: impl IntoIterator<Item = BoundType>) -> Option<BoundType> {
    let mut acc = BoundType::Exact;
    for tag in tags {
        acc = match (acc, tag) {
            (BoundType::Exact, t) => t,
            (t, BoundType::Exact) => t,
            (BoundType::Upper, BoundType::Upper) => BoundType::Upper,
            (BoundType::Lower, BoundType::Lower) => BoundType::Lower,
            _ => return None,
        };
    }
    Some(acc)
}

/// A couple (X, Y) with an evaluable K-functional.
pub trait KCouple {
    /// Representation of elements of `X`.
    type Elem: ?Sized;

    /// `K(x, t)` for `t > 0`, tagged with its bound tier.
    fn k(&self, x: &Self::Elem, t: f64) -> Result<KValue>;
}

/// K samples over a decreasing positive grid.
#[derive(Debug, Clone, Serialize)]
pub struct KProfile {
    /// Strictly decreasing.
    pub ts: Vec<f64>,
    pub values: Vec<KValue>,
}

impl KProfile {
    /// K is non-decreasing in t (tolerance on the larger value).
    pub fn is_monotone(&self, tol: f64) -> bool {
        self.values
            .windows(2)
            .all(|w| w[0].value >= w[1].value - tol * (1.0 + w[0].value.abs()))
    }

    /// K(x,t)/t is non-increasing in t; meaningful on exact profiles.
    pub fn has_monotone_slope_ratio(&self, tol: f64) -> bool {
        let ratios: Vec<f64> =
            self.ts.iter().zip(&self.values).map(|(&t, v)| v.value / t).collect();
        ratios.windows(2).all(|w| w[1] >= w[0] - tol * (1.0 + w[0].abs()))
    }

    pub fn all_exact(&self) -> bool {
        self.values.iter().all(|v| v.bound == BoundType::Exact)
    }
}

pub(crate) fn validate_t(t: f64) -> Result<()> {
    if !t.is_finite() || t <= 0.0 {
        return Err(Error::InvalidParameter(format!("t must be positive and finite, got {t}")));
    }
    Ok(())
}
