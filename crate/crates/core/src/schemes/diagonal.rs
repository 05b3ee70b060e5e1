//! Diagonal operators on Hilbert sequence space.

use crate::error::{Error, Result};
use crate::seqspace::{rearrange, FiniteSeq};

/// A diagonal operator `D = diag(d)`; its approximation numbers are the
/// non-increasing rearrangement of the entries, `a_n(D) = d_n*`.
#[derive(Debug, Clone)]
pub struct DiagonalScheme {
    entries: FiniteSeq,
}

impl DiagonalScheme {
    pub fn new(d: FiniteSeq) -> Self {
        DiagonalScheme { entries: rearrange(&d) }
    }

    /// Rearranged diagonal entries.
    pub fn entries(&self) -> &FiniteSeq {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `a_n(D)` (1-based); zero beyond the stored entries.
    pub fn approximation_number(&self, n: usize) -> f64 {
        if n == 0 || n > self.entries.len() {
            0.0
        } else {
            self.entries.values()[n - 1]
        }
    }

    /// `(a_1, ..., a_{n+1})`, zero-padded.
    pub fn error_sequence(&self, n: usize) -> FiniteSeq {
        let errs: Vec<f64> = (1..=n + 1).map(|k| self.approximation_number(k)).collect();
        FiniteSeq::new(errs).expect("diagonal entries are non-negative")
    }

    /// Lower bound for `E(S(X) ∩ Σ_{n+1}, Σ_n)` from the witness
    /// `diag(d_1*, ..., d_n*, 0, ...) / d_1*`; returns 0 when no witness
    /// with nonzero `a_n` exists.
    pub fn shapiro_gap(&self, n: usize) -> Result<f64> {
        if n == 0 {
            return Err(Error::InvalidParameter("gap index must be at least 1".into()));
        }
        let top = self.approximation_number(1);
        if top == 0.0 {
            return Ok(0.0);
        }
        Ok(self.approximation_number(n) / top)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entries_are_rearranged() {
        let d = DiagonalScheme::new(FiniteSeq::new(vec![0.5, 1.0, 0.25]).unwrap());
        assert_eq!(d.entries().values(), &[1.0, 0.5, 0.25]);
        assert_eq!(d.approximation_number(2), 0.5);
        assert_eq!(d.approximation_number(7), 0.0);
        assert_eq!(d.error_sequence(4).values(), &[1.0, 0.5, 0.25, 0.0, 0.0]);
    }

    #[test]
    fn gap_of_flat_diagonal_is_one() {
        let d = DiagonalScheme::new(FiniteSeq::new(vec![1.0; 8]).unwrap());
        for n in 1..8 {
            assert_eq!(d.shapiro_gap(n).unwrap(), 1.0);
        }
    }
}
