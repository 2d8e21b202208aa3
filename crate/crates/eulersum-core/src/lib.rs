//! High-precision evaluation of depth-2 alternating and colored Euler sums,
//! the depth-1 special functions they reduce to, and two-sided verification
//! of the identities connecting them.
//!
//! The crate is organized around a handful of layers:
//!
//! * [`arith`] — exact rational ingredients (Bernoulli numbers under the
//!   `t/(e^t - 1)` convention where `B_1 = -1/2`, generalized binomials,
//!   Euler-polynomial values at zero).
//! * [`special`] — arbitrary-precision `zeta(s)`, the Dirichlet beta
//!   function `L(chi_-4, s)`, the Hurwitz zeta function, the harmonic-shift
//!   series `sum (1/n - 1/(n+x))`, and the constants `pi` and `log 2`.
//! * [`eulersums`] — definition-level evaluation of the depth-2 sums
//!   (ground truth, no identities used).
//! * [`identities`] — closed-form right-hand sides and pass/fail
//!   [`identities::IdentityReport`]s comparing them against the sums.
//! * [`mahler`] — quasi-Monte Carlo estimation of a logarithmic Mahler
//!   measure over the torus, tied back to the exact identities.
//!
//! Every numeric routine takes a [`prec::PrecisionContext`] and returns
//! values carrying a conservative absolute error bound no larger than
//! `10^-target_digits`. All evaluation orders are fixed, so results are
//! bit-for-bit reproducible at a given precision.
//!
//! Operations are pure functions of their inputs and context (memoization
//! is call-scoped), so they can run concurrently; all value types are
//! `Send + Sync`. An [`arith::BernoulliTable`] warmed on one thread can be
//! shared read-only afterwards.
//!
//! The crate is `no_std` (with `alloc`); everything that needs an operating
//! system lives in the companion CLI crate.

#![no_std]

extern crate alloc;

pub mod arith;
pub mod error;
pub mod prec;
pub mod real;

mod accel;

pub mod complexnum;
pub mod eulersums;
pub mod identities;
pub mod mahler;
pub mod special;

pub use complexnum::BigComplex;
pub use error::{Error, Result};
pub use prec::PrecisionContext;
pub use real::BigReal;
