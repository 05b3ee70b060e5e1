//! Dense matrices, one-sided Jacobi SVD, and the rank-n projection gap.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::seqspace::FiniteSeq;

/// Row-major dense real matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::LengthMismatch { left: data.len(), right: rows * cols });
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("matrix entry".into()));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn diag(entries: &[f64]) -> Self {
        let n = entries.len();
        let mut m = Matrix::zeros(n, n);
        for (i, &v) in entries.iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let r = rows.len();
        if r == 0 {
            return Err(Error::EmptyInput("matrix rows".into()));
        }
        let c = rows[0].len();
        if c == 0 || rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidParameter("ragged or empty matrix rows".into()));
        }
        Matrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn row_slices(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks(self.cols)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn matmul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::LengthMismatch { left: self.cols, right: rhs.rows });
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.get(k, j);
                }
            }
        }
        Ok(out)
    }

    pub fn matvec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.cols {
            return Err(Error::LengthMismatch { left: x.len(), right: self.cols });
        }
        Ok(self
            .row_slices()
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::LengthMismatch { left: self.data.len(), right: rhs.data.len() });
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        Matrix::new(self.rows, self.cols, data)
    }

    pub fn scaled(&self, f: f64) -> Result<Matrix> {
        Matrix::new(self.rows, self.cols, self.data.iter().map(|v| v * f).collect())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

/// Relative off-diagonal threshold at which column pairs count as orthogonal.
const JACOBI_REL_TOL: f64 = 1e-10;
const JACOBI_MAX_SWEEPS: usize = 60;

/// Singular values by one-sided Jacobi iteration: plane rotations
/// orthogonalize the columns (diagonalizing `T^T T` implicitly), and the
/// singular values are the resulting column norms.  Chosen over
/// bidiagonalization for its high relative accuracy on small singular
/// values, which the ideal-membership experiments depend on.
pub fn singular_values(t: &Matrix) -> Result<FiniteSeq> {
    if !t.is_square() {
        return Err(Error::NotSquare { rows: t.rows, cols: t.cols });
    }
    let n = t.cols;
    if n == 0 {
        return FiniteSeq::new(vec![]);
    }
    let mut a = t.data.clone();
    let col_dot = |a: &[f64], i: usize, j: usize| -> f64 {
        let mut s = 0.0;
        for k in 0..n {
            s += a[k * n + i] * a[k * n + j];
        }
        s
    };
    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut rotated = false;
        for i in 0..n {
            for j in (i + 1)..n {
                let alpha = col_dot(&a, i, i);
                let beta = col_dot(&a, j, j);
                let gamma = col_dot(&a, i, j);
                if gamma == 0.0 || gamma.abs() <= JACOBI_REL_TOL * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let tan = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let cos = 1.0 / (1.0 + tan * tan).sqrt();
                let sin = cos * tan;
                for k in 0..n {
                    let x = a[k * n + i];
                    let y = a[k * n + j];
                    a[k * n + i] = cos * x - sin * y;
                    a[k * n + j] = sin * x + cos * y;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<f64> = (0..n).map(|j| col_dot(&a, j, j).sqrt()).collect();
    sv.sort_unstable_by(|x, y| y.total_cmp(x));
    FiniteSeq::new(sv)
}

/// Spectral norm, i.e. the largest singular value.
pub fn spectral_norm(t: &Matrix) -> Result<f64> {
    Ok(singular_values(t)?.values().first().copied().unwrap_or(0.0))
}

/// A dense matrix under approximation by matrices of lower rank (spectral
/// norm), so that `E(T, Σ_n) = a_n(T)` is the n-th singular value.
#[derive(Debug, Clone)]
pub struct MatrixScheme {
    matrix: Matrix,
    sv: FiniteSeq,
}

impl MatrixScheme {
    pub fn new(matrix: Matrix) -> Result<Self> {
        let sv = singular_values(&matrix)?;
        Ok(MatrixScheme { matrix, sv })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows
    }

    /// `a_n(T)` (1-based); zero beyond the dimension.
    pub fn approximation_number(&self, n: usize) -> f64 {
        if n == 0 || n > self.sv.len() {
            0.0
        } else {
            self.sv.values()[n - 1]
        }
    }

    pub fn singular_values(&self) -> &FiniteSeq {
        &self.sv
    }

    /// `(a_1, ..., a_{n+1})`, zero-padded beyond the rank.
    pub fn error_sequence(&self, n: usize) -> FiniteSeq {
        let errs: Vec<f64> = (1..=n + 1).map(|k| self.approximation_number(k)).collect();
        FiniteSeq::new(errs).expect("singular values are non-negative")
    }

    /// Gap witness: a rank-n partial isometry has unit norm and `a_n = 1`.
    pub fn shapiro_gap(&self, _n: usize) -> f64 {
        1.0
    }
}

/// Certified per-rank bound from a uniformly bounded projection family.
#[derive(Debug, Clone, Serialize)]
pub struct ProjectionGapBound {
    pub n: usize,
    /// `||P_n|| = sigma_1(P_n)`.
    pub norm: f64,
    /// `a_n(P_n / ||P_n||) = sigma_n / sigma_1`.
    pub normalized_an: f64,
    /// `1 / C^2` with `C = max_n ||P_n||`.
    pub threshold: f64,
    pub margin: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProjectionGapReport {
    /// `C = max_n ||P_n||`.
    pub c: f64,
    pub bounds: Vec<ProjectionGapBound>,
}

const IDEMPOTENT_TOL: f64 = 1e-8;

/// Verifies `a_n(P_n / ||P_n||) >= 1 / C^2` for a family of projections,
/// where `family[i]` must be idempotent of rank exactly `i + 1`.
///
/// Every nonzero singular value of a projection is at least 1 (the
/// projection restricted to its range is the identity), so the numerical
/// rank threshold sits safely at 1/2.
pub fn projection_gap_check(family: &[Matrix]) -> Result<ProjectionGapReport> {
    if family.is_empty() {
        return Err(Error::EmptyInput("projection family".into()));
    }
    let mut svs = Vec::with_capacity(family.len());
    for (idx, p) in family.iter().enumerate() {
        let residual = spectral_norm(&p.matmul(p)?.sub(p)?)?;
        if residual > IDEMPOTENT_TOL {
            return Err(Error::NotIdempotent(residual));
        }
        let sv = singular_values(p)?;
        let rank = sv.values().iter().filter(|&&s| s >= 0.5).count();
        if rank != idx + 1 {
            return Err(Error::RankMismatch { expected: idx + 1, found: rank });
        }
        svs.push(sv);
    }
    let c = svs
        .iter()
        .map(|sv| sv.values()[0])
        .fold(0.0f64, f64::max);
    let threshold = 1.0 / (c * c);
    let bounds = svs
        .iter()
        .enumerate()
        .map(|(idx, sv)| {
            let n = idx + 1;
            let top = sv.values()[0];
            let normalized_an = sv.values()[n - 1] / top;
            ProjectionGapBound { n, norm: top, normalized_an, threshold, margin: normalized_an - threshold }
        })
        .collect();
    Ok(ProjectionGapReport { c, bounds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn singular_values_of_diagonal() {
        let t = Matrix::diag(&[3.0, 1.0, 2.0]);
        let sv = singular_values(&t).unwrap();
        assert_eq!(sv.values(), &[3.0, 2.0, 1.0]);
    }

    #[test]
    fn singular_values_of_rotation_are_ones() {
        let t = Matrix::from_rows(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let sv = singular_values(&t).unwrap();
        assert_relative_eq!(sv.values()[0], 1.0, epsilon = 1e-12);
        assert_relative_eq!(sv.values()[1], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn golden_ratio_fixture() {
        // T = [[1,1],[0,1]]: T^T T has characteristic polynomial l^2 - 3l + 1,
        // so the singular values are sqrt((3 +- sqrt(5))/2).
        let t = Matrix::from_rows(vec![vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap();
        let sv = singular_values(&t).unwrap();
        let hi = ((3.0 + 5f64.sqrt()) / 2.0).sqrt();
        let lo = ((3.0 - 5f64.sqrt()) / 2.0).sqrt();
        assert_relative_eq!(sv.values()[0], hi, epsilon = 1e-10);
        assert_relative_eq!(sv.values()[1], lo, epsilon = 1e-10);
        // which are the golden ratio and its reciprocal
        assert_relative_eq!(sv.values()[0], 1.61803, max_relative = 1e-5);
        assert_relative_eq!(sv.values()[1], 0.61803, max_relative = 1e-5);
    }

    #[test]
    fn rejects_non_square_and_non_finite() {
        let rect = Matrix::new(1, 2, vec![1.0, 2.0]).unwrap();
        assert!(matches!(singular_values(&rect), Err(Error::NotSquare { .. })));
        assert!(Matrix::new(1, 1, vec![f64::NAN]).is_err());
    }

    #[test]
    fn matrix_scheme_error_sequence_pads_with_zeros() {
        let scheme = MatrixScheme::new(Matrix::diag(&[3.0, 1.0, 2.0])).unwrap();
        let errs = scheme.error_sequence(4);
        assert_eq!(errs.values(), &[3.0, 2.0, 1.0, 0.0, 0.0]);
        assert_relative_eq!(scheme.approximation_number(1), 3.0);
        assert_eq!(scheme.shapiro_gap(2), 1.0);
    }

    #[test]
    fn orthogonal_projection_gap_is_one() {
        // orthogonal projections onto the first n coordinates, C = 1
        let family: Vec<Matrix> = (1..=3)
            .map(|n| {
                let mut m = Matrix::zeros(4, 4);
                for i in 0..n {
                    m.set(i, i, 1.0);
                }
                m
            })
            .collect();
        let report = projection_gap_check(&family).unwrap();
        assert_relative_eq!(report.c, 1.0, epsilon = 1e-12);
        for b in &report.bounds {
            assert_relative_eq!(b.normalized_an, 1.0, epsilon = 1e-10);
            assert!(b.margin >= -1e-12);
        }
    }

    #[test]
    fn oblique_projection_example() {
        // P = [[1, t], [0, 0]] is idempotent of rank 1 with norm sqrt(1+t^2)
        let t = 1.5f64;
        let p = Matrix::from_rows(vec![vec![1.0, t], vec![0.0, 0.0]]).unwrap();
        let report = projection_gap_check(std::slice::from_ref(&p)).unwrap();
        let c = (1.0 + t * t).sqrt();
        assert_relative_eq!(report.c, c, epsilon = 1e-12);
        let b = &report.bounds[0];
        assert_relative_eq!(b.normalized_an, 1.0, epsilon = 1e-12);
        assert!(b.normalized_an >= 1.0 / (c * c) - 1e-12);
    }

    #[test]
    fn non_idempotent_is_rejected() {
        let m = Matrix::from_rows(vec![vec![1.0, 0.5], vec![0.0, 1.0]]).unwrap();
        assert!(matches!(
            projection_gap_check(std::slice::from_ref(&m)),
            Err(Error::NotIdempotent(_))
        ));
    }
}
