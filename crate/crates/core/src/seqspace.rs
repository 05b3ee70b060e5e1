//! Rearrangement-invariant sequence spaces.
//!
//! The two concrete families are the Lorentz spaces, with quasi-norm
//!
//! ```text
//! ||a||_{p,r} = [ sum_{n>=1} n^{rp-1} (a_n*)^p ]^{1/p},
//! ```
//!
//! and the Lorentz–Zygmund spaces, which add a `(1 + ln n)^{gamma p}` weight.
//! Here `a*` is the non-increasing rearrangement, so every norm in this module
//! is rearrangement invariant by construction.  For `p = inf` the norm is the
//! weak-type supremum `sup_n n^r (1 + ln n)^gamma a_n*`.
//!
//! Truncated norms of a non-increasing sequence grow monotonically with the
//! prefix length; [`truncated_norms`] turns that growth into an explicit
//! membership verdict (converged / diverging / inconclusive).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::verdict::{classify_monotone, MembershipVerdict, VerdictConfig};

/// Finite prefix of a non-negative real sequence.
///
/// Norm sums index entries from `n = 1`, i.e. `values[0]` enters the norm as
/// `a_1`.  The sorted flag is true iff the stored values are non-increasing.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct FiniteSeq {
    values: Vec<f64>,
    #[serde(skip)]
    sorted: bool,
}

impl FiniteSeq {
    /// Validates entries (finite, non-negative) and records whether the
    /// sequence is already non-increasing.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        for (i, &v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite(format!("sequence entry {i}")));
            }
            if v < 0.0 {
                return Err(Error::NegativeEntry { index: i, value: v });
            }
        }
        let sorted = values.windows(2).all(|w| w[0] >= w[1]);
        Ok(FiniteSeq { values, sorted })
    }

    /// Builds the length-`len` prefix of `f`, where `f` is evaluated at the
    /// 1-based indices `1..=len`.
    pub fn from_fn(len: usize, f: impl Fn(usize) -> f64) -> Result<Self> {
        Self::new((1..=len).map(f).collect())
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// True iff the stored order is non-increasing.
    pub fn is_non_increasing(&self) -> bool {
        self.sorted
    }

    /// Index of the first adjacent pair that increases, if any.
    pub fn first_increase(&self) -> Option<usize> {
        self.values.windows(2).position(|w| w[0] < w[1])
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Multiplies every entry by `lambda >= 0`.
    pub fn scaled(&self, lambda: f64) -> Result<Self> {
        if !lambda.is_finite() || lambda < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "scale factor must be finite and non-negative, got {lambda}"
            )));
        }
        Self::new(self.values.iter().map(|v| v * lambda).collect())
    }
}

impl<'de> Deserialize<'de> for FiniteSeq {
    fn deserialize<D>(deserializer: D) -> std::result::Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        let values = Vec::<f64>::deserialize(deserializer)?;
        FiniteSeq::new(values).map_err(serde::de::Error::custom)
    }
}

/// Non-increasing rearrangement `a*` of the input.
pub fn rearrange(seq: &FiniteSeq) -> FiniteSeq {
    if seq.sorted {
        return seq.clone();
    }
    let mut values = seq.values.clone();
    values.sort_unstable_by(|a, b| b.total_cmp(a));
    FiniteSeq { values, sorted: true }
}

/// Which weighted family a [`SpaceSpec`] belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceKind {
    Lorentz,
    #[serde(alias = "lz")]
    LorentzZygmund,
}

/// Parameters of a Lorentz (`p`, `r`) or Lorentz–Zygmund (`p`, `r`, `gamma`)
/// sequence space.  `p = f64::INFINITY` selects the weak-type sup norm; in
/// JSON the string `"inf"` is accepted for `p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpaceSpec {
    pub kind: SpaceKind,
    #[serde(with = "p_serde")]
    pub p: f64,
    pub r: f64,
    #[serde(default)]
    pub gamma: f64,
}

impl SpaceSpec {
    pub fn lorentz(p: f64, r: f64) -> Result<Self> {
        let spec = SpaceSpec { kind: SpaceKind::Lorentz, p, r, gamma: 0.0 };
        spec.validate()?;
        Ok(spec)
    }

    pub fn lorentz_zygmund(p: f64, r: f64, gamma: f64) -> Result<Self> {
        let spec = SpaceSpec { kind: SpaceKind::LorentzZygmund, p, r, gamma };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.p > 0.0) {
            return Err(Error::InvalidParameter(format!("p must be positive, got {}", self.p)));
        }
        if !self.r.is_finite() || self.r <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "r must be finite and positive, got {}",
                self.r
            )));
        }
        if !self.gamma.is_finite() || self.gamma < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "gamma must be finite and non-negative, got {}",
                self.gamma
            )));
        }
        if self.kind == SpaceKind::Lorentz && self.gamma != 0.0 {
            return Err(Error::InvalidParameter(
                "a Lorentz spec must have gamma = 0".into(),
            ));
        }
        Ok(())
    }

    /// Quasi-norm of `seq` in this space.
    pub fn norm(&self, seq: &FiniteSeq) -> Result<f64> {
        lz_norm(seq, self.p, self.r, self.gamma)
    }

    /// Parses the compact CLI syntax `l:p:r` or `lz:p:r:g`, with `inf`
    /// accepted for `p`.
    pub fn parse_compact(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let parse_num = |tok: &str| -> Result<f64> {
            if tok.eq_ignore_ascii_case("inf") {
                Ok(f64::INFINITY)
            } else {
                tok.parse::<f64>()
                    .map_err(|_| Error::InvalidParameter(format!("bad number `{tok}` in `{s}`")))
            }
        };
        match parts.as_slice() {
            ["l", p, r] => SpaceSpec::lorentz(parse_num(p)?, parse_num(r)?),
            ["lz", p, r, g] => SpaceSpec::lorentz_zygmund(parse_num(p)?, parse_num(r)?, parse_num(g)?),
            _ => Err(Error::InvalidParameter(format!(
                "space spec `{s}` is not of the form l:p:r or lz:p:r:g"
            ))),
        }
    }
}

impl std::fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let p = if self.p.is_infinite() { "inf".to_string() } else { format!("{}", self.p) };
        match self.kind {
            SpaceKind::Lorentz => write!(f, "l:{}:{}", p, self.r),
            SpaceKind::LorentzZygmund => write!(f, "lz:{}:{}:{}", p, self.r, self.gamma),
        }
    }
}

mod p_serde {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(p: &f64, s: S) -> Result<S::Ok, S::Error> {
        if p.is_infinite() {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(*p)
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum NumOrStr {
        Num(f64),
        Str(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match NumOrStr::deserialize(d)? {
            NumOrStr::Num(v) => Ok(v),
            NumOrStr::Str(s) if s.eq_ignore_ascii_case("inf") => Ok(f64::INFINITY),
            NumOrStr::Str(s) => Err(serde::de::Error::custom(format!(
                "p must be a positive number or \"inf\", got \"{s}\""
            ))),
        }
    }
}

fn validate_exponents(p: f64, r: f64, gamma: f64) -> Result<()> {
    if !(p > 0.0) {
        return Err(Error::InvalidParameter(format!("p must be positive, got {p}")));
    }
    if !r.is_finite() || r <= 0.0 {
        return Err(Error::InvalidParameter(format!("r must be finite and positive, got {r}")));
    }
    if !gamma.is_finite() || gamma < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "gamma must be finite and non-negative, got {gamma}"
        )));
    }
    Ok(())
}

/// Lorentz quasi-norm `[ sum n^{rp-1} (a_n*)^p ]^{1/p}`; for `p = inf` the
/// weak-type form `sup_n n^r a_n*`.
pub fn lorentz_norm(seq: &FiniteSeq, p: f64, r: f64) -> Result<f64> {
    lz_norm(seq, p, r, 0.0)
}

/// Lorentz–Zygmund quasi-norm with the extra `(1 + ln n)^{gamma p}` weight.
/// The logarithm is natural.
pub fn lz_norm(seq: &FiniteSeq, p: f64, r: f64, gamma: f64) -> Result<f64> {
    validate_exponents(p, r, gamma)?;
    let sorted = rearrange(seq);
    if p.is_infinite() {
        let mut sup = 0.0f64;
        for (i, &a) in sorted.values.iter().enumerate() {
            let n = (i + 1) as f64;
            let mut w = n.powf(r);
            if gamma != 0.0 {
                w *= (1.0 + n.ln()).powf(gamma);
            }
            sup = sup.max(w * a);
        }
        Ok(sup)
    } else {
        let c = r * p - 1.0;
        let g = gamma * p;
        let mut sum = 0.0f64;
        for (i, &a) in sorted.values.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            let n = (i + 1) as f64;
            let mut term = n.powf(c) * a.powf(p);
            if g != 0.0 {
                term *= (1.0 + n.ln()).powf(g);
            }
            sum += term;
        }
        Ok(sum.powf(1.0 / p))
    }
}

/// Norms of every prefix of a non-increasing sequence, plus the membership
/// verdict obtained from their growth.  The input must already be
/// non-increasing (rearrange first otherwise).
pub fn truncated_norms(seq: &FiniteSeq, spec: &SpaceSpec) -> Result<MembershipVerdict> {
    truncated_norms_with(seq, spec, &VerdictConfig::default())
}

/// [`truncated_norms`] with explicit verdict thresholds.
pub fn truncated_norms_with(
    seq: &FiniteSeq,
    spec: &SpaceSpec,
    cfg: &VerdictConfig,
) -> Result<MembershipVerdict> {
    spec.validate()?;
    if !seq.sorted {
        return Err(Error::NotNonIncreasing(seq.first_increase().unwrap_or(0)));
    }
    let (p, r, gamma) = (spec.p, spec.r, spec.gamma);
    let mut partial_norms = Vec::with_capacity(seq.len());
    if p.is_infinite() {
        let mut sup = 0.0f64;
        for (i, &a) in seq.values.iter().enumerate() {
            let n = (i + 1) as f64;
            let mut w = n.powf(r);
            if gamma != 0.0 {
                w *= (1.0 + n.ln()).powf(gamma);
            }
            sup = sup.max(w * a);
            partial_norms.push(sup);
        }
        let status = classify_monotone(&partial_norms, 1.0, cfg);
        Ok(MembershipVerdict { status, partial_norms })
    } else {
        let c = r * p - 1.0;
        let g = gamma * p;
        let inv_p = 1.0 / p;
        let mut sum = 0.0f64;
        for (i, &a) in seq.values.iter().enumerate() {
            let n = (i + 1) as f64;
            if a != 0.0 {
                let mut term = n.powf(c) * a.powf(p);
                if g != 0.0 {
                    term *= (1.0 + n.ln()).powf(g);
                }
                sum += term;
            }
            partial_norms.push(sum.powf(inv_p));
        }
        let status = classify_monotone(&partial_norms, p, cfg);
        Ok(MembershipVerdict { status, partial_norms })
    }
}

/// Solidity (property (A2)): for `0 <= a_n <= b_n` elementwise the norms must
/// satisfy `||a|| <= ||b||`.  Errors on mismatched lengths or violated
/// domination; returns whether the norm inequality holds within tolerance.
pub fn solidity_check(a: &FiniteSeq, b: &FiniteSeq, spec: &SpaceSpec) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch { left: a.len(), right: b.len() });
    }
    for (i, (&x, &y)) in a.values.iter().zip(&b.values).enumerate() {
        if x > y {
            return Err(Error::DominationViolated { index: i, a: x, b: y });
        }
    }
    let na = spec.norm(a)?;
    let nb = spec.norm(b)?;
    Ok(na <= nb + 1e-12 * (1.0 + nb))
}

/// Outcome of the empirical (A3) admissibility estimate.
#[derive(Debug, Clone, Serialize)]
pub struct A3Report {
    /// `max_i ||a||_S / ||{a_{K(n)}}||_S` over the usable samples.
    pub c_estimate: Option<f64>,
    /// Per-sample ratio; `None` marks samples skipped because the subsampled
    /// norm vanished (or the jump map left the prefix immediately).
    pub ratios: Vec<Option<f64>>,
    pub skipped: Vec<usize>,
}

/// Estimates the (A3) constant `C_S` for `spec` under the jump map `k_map`
/// (default choice elsewhere is `K(n) = 2n`): for each non-increasing sample
/// it compares the full-prefix norm with the norm of the subsampled sequence
/// `{a_{K(n)}}` and takes the worst ratio.
pub fn admissibility_a3_check(
    spec: &SpaceSpec,
    k_map: impl Fn(usize) -> usize,
    samples: &[FiniteSeq],
) -> Result<A3Report> {
    spec.validate()?;
    let mut ratios = Vec::with_capacity(samples.len());
    let mut skipped = Vec::new();
    let mut c_estimate: Option<f64> = None;
    for (idx, sample) in samples.iter().enumerate() {
        if !sample.sorted {
            return Err(Error::NotNonIncreasing(sample.first_increase().unwrap_or(0)));
        }
        let len = sample.len();
        let mut sub = Vec::new();
        for n in 1..=len {
            let k = k_map(n);
            if k < n {
                return Err(Error::InvalidParameter(format!(
                    "jump map must satisfy K(n) >= n, got K({n}) = {k}"
                )));
            }
            if k > len {
                break;
            }
            sub.push(sample.values[k - 1]);
        }
        let sub_norm = if sub.is_empty() { 0.0 } else { spec.norm(&FiniteSeq::new(sub)?)? };
        if sub_norm == 0.0 {
            ratios.push(None);
            skipped.push(idx);
            continue;
        }
        let full_norm = spec.norm(sample)?;
        let ratio = full_norm / sub_norm;
        ratios.push(Some(ratio));
        c_estimate = Some(c_estimate.map_or(ratio, |c: f64| c.max(ratio)));
    }
    Ok(A3Report { c_estimate, ratios, skipped })
}

/// Dilation `b_n = a_{max(1, floor(n/C))}` of a non-increasing sequence; the
/// output has length `floor(C * len)`.  Indices below `C` are clamped to the
/// first entry, which preserves monotonicity.
pub fn dilate(seq: &FiniteSeq, c: f64) -> Result<FiniteSeq> {
    if !c.is_finite() || c <= 0.0 {
        return Err(Error::InvalidParameter(format!("dilation factor must be positive, got {c}")));
    }
    if !seq.sorted {
        return Err(Error::NotNonIncreasing(seq.first_increase().unwrap_or(0)));
    }
    let len = seq.len();
    let out_len = (c * len as f64).floor() as usize;
    let mut out = Vec::with_capacity(out_len);
    for n in 1..=out_len {
        let idx = ((n as f64) / c).floor() as usize;
        let idx = idx.clamp(1, len);
        out.push(seq.values[idx - 1]);
    }
    Ok(FiniteSeq { values: out, sorted: true })
}

/// Both sides of the dilation comparison together with the constant used.
#[derive(Debug, Clone, Serialize)]
pub struct DilationBound {
    /// `sum_{n : floor(n/C) >= 1} n^{rp-1} (a_{floor(n/C)})^p` over the dilated range.
    pub lhs: f64,
    /// `constant * sum_m m^{rp-1} a_m^p`.
    pub rhs: f64,
    /// The explicit constant: `([C]+1) C^{rp-1} 2^{pr-1}` when `p >= 1/r`,
    /// `([C]+1) C^{rp-1}` when `p < 1/r`.
    pub constant: f64,
    /// The undilated weighted p-th power sum.
    pub base_sum: f64,
    pub holds: bool,
}

/// Checks the dilation inequality with its explicit constant.  The left-hand
/// sum runs over the indices whose dilated position `floor(n/C)` is at least
/// one (the clamped prefix added by [`dilate`] is a bounded artefact of the
/// index convention and is excluded from the comparison).
pub fn dilation_bound_check(seq: &FiniteSeq, c: f64, p: f64, r: f64) -> Result<DilationBound> {
    validate_exponents(p, r, 0.0)?;
    if p.is_infinite() {
        return Err(Error::InvalidParameter("dilation bound check requires finite p".into()));
    }
    if !c.is_finite() || c <= 0.0 {
        return Err(Error::InvalidParameter(format!("dilation factor must be positive, got {c}")));
    }
    if !seq.sorted {
        return Err(Error::NotNonIncreasing(seq.first_increase().unwrap_or(0)));
    }
    let len = seq.len();
    let e = r * p - 1.0;
    let mut base_sum = 0.0f64;
    for (i, &a) in seq.values.iter().enumerate() {
        if a != 0.0 {
            base_sum += ((i + 1) as f64).powf(e) * a.powf(p);
        }
    }
    let out_len = (c * len as f64).floor() as usize;
    let mut lhs = 0.0f64;
    for n in 1..=out_len {
        let idx = ((n as f64) / c).floor() as usize;
        if idx == 0 {
            continue;
        }
        let idx = idx.min(len);
        let a = seq.values[idx - 1];
        if a != 0.0 {
            lhs += (n as f64).powf(e) * a.powf(p);
        }
    }
    let floor_c = c.floor();
    let constant = if p >= 1.0 / r {
        (floor_c + 1.0) * c.powf(e) * 2.0f64.powf(p * r - 1.0)
    } else {
        (floor_c + 1.0) * c.powf(e)
    };
    let rhs = constant * base_sum;
    let holds = lhs <= rhs * (1.0 + 1e-12) + 1e-300;
    Ok(DilationBound { lhs, rhs, constant, base_sum, holds })
}
