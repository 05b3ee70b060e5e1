//! Concrete approximation schemes with computable error sequences.
//!
//! Three realizations are provided:
//!
//! - [`HilbertScheme`]: nested spans of an orthonormal system, where the
//!   error sequence is the tail norm and any non-increasing error profile
//!   can be prescribed exactly;
//! - [`MatrixScheme`]: a dense matrix under approximation by lower-rank
//!   matrices in spectral norm, where the errors are the singular values;
//! - [`DiagonalScheme`]: a diagonal operator on Hilbert sequence space,
//!   whose approximation numbers are the rearranged diagonal entries.

mod diagonal;
mod hilbert;
mod matrix;

pub use diagonal::DiagonalScheme;
pub use hilbert::HilbertScheme;
pub use matrix::{
    projection_gap_check, singular_values, spectral_norm, Matrix, MatrixScheme,
    ProjectionGapBound, ProjectionGapReport,
};
