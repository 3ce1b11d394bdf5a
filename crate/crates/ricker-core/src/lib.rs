//! Dynamics of a planar stage-structured Ricker system with periodic
//! coefficients, and of the scalar equations it folds into.
//!
//! The crate is organised around one pipeline:
//!
//! * [`system`] — the planar system, its fold to a second-order scalar
//!   equation, and the reduction to `r_{n+1} = r_{n-1} e^{d_n - r_{n-1} - r_n}`
//!   under the matching condition `c_{2,n} = sigma_{1,n} c_{1,n}`.
//! * [`simulate`] — orbit iteration plus extinction/boundedness certificates.
//! * [`lineig`] — eigensequences of two-term linear recursions with periodic
//!   coefficients and the extinction criteria built on them.
//! * [`semiconj`] — the semiconjugate factorization of the reduced equation
//!   into a pair of one-dimensional maps, cycle detection, shadow cycles,
//!   two-cycle limits and period-three witnesses.
//! * [`bifurcate`] — reproducible bifurcation scans over the seed value.
//!
//! The crate is `no_std`-compatible (requires `alloc`); file formats, the
//! command-line driver and parallel scans live in the companion `ricker-cli`
//! crate.

#![cfg_attr(not(feature = "std"), no_std)]
// `!(x > 0.0)` rather than `x <= 0.0` throughout: the negation is true for
// NaN, so non-numbers fall into the rejection branch instead of slipping past.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod bifurcate;
mod error;
pub mod lineig;
pub(crate) mod math;
pub mod semiconj;
pub mod seq;
pub mod simulate;
pub mod system;

pub use error::Error;

/// Crate-wide result type.
pub type Result<T> = core::result::Result<T, Error>;

/// Default cap on exponents passed to `exp`; anything larger is reported as
/// overflow instead of silently producing `inf`.
pub const EXP_CAP: f64 = 700.0;
