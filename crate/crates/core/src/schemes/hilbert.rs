//! Nested Hilbert spans with exactly prescribed best-approximation errors.
//!
//! With `A_n` the span of the first `n` coordinates of an orthonormal system
//! (`A_0 = {0}`), the error of a coordinate vector is the tail norm
//! `E(x, A_k)^2 = sum_{i > k} x_i^2`.  Running that identity backwards turns
//! any non-increasing error profile `eps_0 >= ... >= eps_N` into an explicit
//! element: `x_k = sqrt(eps_{k-1}^2 - eps_k^2)` realizes `E(x, A_k) = eps_k`
//! exactly.  This is the constructive Hilbert-space form of lethargy: no
//! existence theorem is invoked, the witness is written down.

use crate::error::{Error, Result};
use crate::seqspace::FiniteSeq;

/// Spans of the first `n` coordinates of an orthonormal system, capped at a
/// dimension budget.
#[derive(Debug, Clone)]
pub struct HilbertScheme {
    n_max: usize,
}

impl HilbertScheme {
    pub fn new(n_max: usize) -> Self {
        HilbertScheme { n_max }
    }

    /// Desk-scale default budget (2^16 coordinates).
    pub fn desk() -> Self {
        HilbertScheme::new(1 << 16)
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Coordinates of an element whose error sequence equals `eps` exactly:
    /// `x_{k+1} = sqrt(eps_k^2 - eps_{k+1}^2)` with `eps` extended by zero.
    /// Trailing zero coordinates are trimmed.
    pub fn prescribe_errors(&self, eps: &FiniteSeq) -> Result<Vec<f64>> {
        if eps.is_empty() {
            return Err(Error::EmptyInput("error profile".into()));
        }
        if !eps.is_non_increasing() {
            return Err(Error::NotNonIncreasing(eps.first_increase().unwrap_or(0)));
        }
        if eps.len() > self.n_max + 1 {
            return Err(Error::BudgetExceeded { requested: eps.len(), cap: self.n_max + 1 });
        }
        let v = eps.values();
        let mut x = Vec::with_capacity(v.len());
        for k in 0..v.len() {
            let cur = v[k];
            let next = if k + 1 < v.len() { v[k + 1] } else { 0.0 };
            // (cur - next)(cur + next) avoids cancellation in cur^2 - next^2
            x.push(((cur - next) * (cur + next)).sqrt());
        }
        while x.last() == Some(&0.0) {
            x.pop();
        }
        Ok(x)
    }

    /// `(E(x, A_0), ..., E(x, A_n))` via the tail-norm identity; `A_0 = {0}`
    /// so the first entry is the norm of `x`.
    pub fn error_sequence(&self, x: &[f64], n: usize) -> Result<FiniteSeq> {
        if n > self.n_max {
            return Err(Error::BudgetExceeded { requested: n, cap: self.n_max });
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("coordinate vector".into()));
        }
        let len = x.len();
        // suffix[k] = sum_{i >= k} x_i^2, accumulated from the small end
        let mut suffix = vec![0.0f64; len + 1];
        for k in (0..len).rev() {
            suffix[k] = suffix[k + 1] + x[k] * x[k];
        }
        let errs: Vec<f64> = (0..=n).map(|k| suffix[k.min(len)].sqrt()).collect();
        FiniteSeq::new(errs)
    }

    /// The coordinate vector `e_idx` (0-based), the unit witness of the gap
    /// `E(S(X) ∩ A_{idx+1}, A_idx) = 1`.
    pub fn basis_element(&self, idx: usize) -> Result<Vec<f64>> {
        if idx >= self.n_max {
            return Err(Error::BudgetExceeded { requested: idx + 1, cap: self.n_max });
        }
        let mut x = vec![0.0; idx + 1];
        x[idx] = 1.0;
        Ok(x)
    }

    /// `E(S(X) ∩ A_{n+1}, A_n)` is exactly 1: the basis vector `e_{n+1}` is a
    /// unit element of `A_{n+1}` at distance 1 from `A_n`.
    pub fn shapiro_gap(&self, _n: usize) -> f64 {
        1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn seq(v: &[f64]) -> FiniteSeq {
        FiniteSeq::new(v.to_vec()).unwrap()
    }

    #[test]
    fn prescribe_forced_examples() {
        let h = HilbertScheme::desk();
        let x = h.prescribe_errors(&seq(&[1.0, 0.5, 0.0])).unwrap();
        assert_eq!(x.len(), 2);
        assert_relative_eq!(x[0], (0.75f64).sqrt(), max_relative = 1e-15);
        assert_relative_eq!(x[1], 0.5);

        // flat step
        assert_eq!(h.prescribe_errors(&seq(&[1.0, 1.0, 0.0])).unwrap(), vec![0.0, 1.0]);

        let x = h.prescribe_errors(&seq(&[2.0, 1.0, 1.0, 0.0])).unwrap();
        assert_relative_eq!(x[0], 3f64.sqrt(), max_relative = 1e-15);
        assert_eq!(x[1], 0.0);
        assert_relative_eq!(x[2], 1.0);
    }

    #[test]
    fn prescribe_rejects_increasing() {
        let h = HilbertScheme::desk();
        assert!(matches!(
            h.prescribe_errors(&seq(&[0.5, 1.0])),
            Err(Error::NotNonIncreasing(0))
        ));
    }

    #[test]
    fn round_trip_is_exact() {
        let h = HilbertScheme::desk();
        let eps = seq(&[1.0, 0.5, 0.25, 0.25, 0.1, 0.0]);
        let x = h.prescribe_errors(&eps).unwrap();
        let errs = h.error_sequence(&x, eps.len() - 1).unwrap();
        for (got, want) in errs.values().iter().zip(eps.values()) {
            assert_relative_eq!(got, want, epsilon = 1e-12);
        }
    }

    #[test]
    fn error_sequence_of_basis_vector_is_ones_pattern() {
        let h = HilbertScheme::desk();
        let x = h.basis_element(4).unwrap(); // e_4, in A_5
        let errs = h.error_sequence(&x, 8).unwrap();
        assert_eq!(errs.values(), &[1.0, 1.0, 1.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn budget_is_enforced() {
        let h = HilbertScheme::new(4);
        assert!(matches!(
            h.error_sequence(&[1.0], 5),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
