//! Exact arithmetic for multi-interpolated multiple zeta values.
//!
//! Words over letters `z_i` carry marker monomials (`t`, `t1`, `t2`, ...)
//! on each letter. The crate provides the quasi-shuffle products on such
//! words, the interpolation operator `S` and its combinatorial forms,
//! truncated and floating-point evaluation, generating-series coefficients
//! for uniform indices, and a harness of identity checks.

pub mod algebra;
pub mod error;
pub mod evaluation;
pub mod identities;
pub mod interpolation;
pub mod products;
pub mod series;

pub use algebra::{Block, Composition, LinComb, Marker, Rational, TWord};
pub use error::{Error, Result};
pub use evaluation::{SequenceRule, TAssignment};
