//! Executable counterparts of the strict-inclusion and separation arguments
//! for approximation and interpolation spaces.
//!
//! The crate is organized around five pieces of machinery:
//!
//! - [`seqspace`]: Lorentz / Lorentz–Zygmund quasi-norms on finite prefixes,
//!   truncated-norm membership diagnostics, solidity and admissibility
//!   estimates, and the dilation operators.
//! - [`scales`]: the scale-of-smoothness lattice, the integral-test oracle
//!   for power-log sequences, witness sequences certifying every strict
//!   inclusion of the Lorentz and Lorentz–Zygmund scales, and the growth law
//!   for the norms of `1_N`.
//! - [`schemes`]: concrete approximation schemes with computable error
//!   sequences: nested Hilbert spans with exactly prescribed errors, dense
//!   matrices under finite-rank approximation (Jacobi SVD), and diagonal
//!   operators.
//! - [`approxspace`]: approximation-space norms built on the above, and the
//!   separation experiments that turn non-equivalence proofs into diverging
//!   norm-ratio profiles.
//! - [`interp`]: Peetre K-functionals (exact, minimized, and certified
//!   lower-bound strategies), discrete real-interpolation norms, and the
//!   witness machinery for the strictness of interpolation inclusions.

pub mod approxspace;
pub mod error;
pub mod interp;
pub mod profile;
pub mod scales;
pub mod schemes;
pub mod seqspace;
pub mod verdict;

pub use error::{Error, Result};
pub use profile::{RatioProfile, RatioVerdict};
pub use seqspace::{FiniteSeq, SpaceKind, SpaceSpec};
pub use verdict::{MembershipStatus, MembershipVerdict, VerdictConfig};
