//! Precision bookkeeping.
//!
//! Every numeric operation in this crate is governed by a [`PrecisionContext`]:
//! the caller asks for `target_digits` decimal digits, and the context derives
//! a binary working precision with enough guard bits that series truncation
//! and accumulated rounding stay below `10^-target_digits`.

use alloc::format;

use crate::error::{Error, Result};

/// Requested accuracy plus the binary working precision used to reach it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrecisionContext {
    target_digits: u32,
    working_bits: u32,
    guard_bits: u32,
}

impl PrecisionContext {
    /// Smallest permitted number of guard bits.
    pub const MIN_GUARD_BITS: u32 = 32;

    /// Default number of guard bits; generous so that long summation loops
    /// never eat into the requested digits.
    pub const DEFAULT_GUARD_BITS: u32 = 128;

    /// Context for `target_digits` decimal digits with the default guard.
    pub fn new(target_digits: u32) -> Self {
        Self::with_guard(target_digits, Self::DEFAULT_GUARD_BITS)
            .expect("default guard satisfies the minimum")
    }

    /// Context with an explicit guard-bit count (must be at least
    /// [`Self::MIN_GUARD_BITS`]).
    pub fn with_guard(target_digits: u32, guard_bits: u32) -> Result<Self> {
        if target_digits == 0 {
            return Err(Error::Domain(format!(
                "target_digits must be positive, got {target_digits}"
            )));
        }
        if guard_bits < Self::MIN_GUARD_BITS {
            return Err(Error::Domain(format!(
                "guard_bits must be at least {}, got {guard_bits}",
                Self::MIN_GUARD_BITS
            )));
        }
        let base = libm::ceil(target_digits as f64 * core::f64::consts::LOG2_10) as u32;
        Ok(Self {
            target_digits,
            working_bits: base + guard_bits,
            guard_bits,
        })
    }

    pub fn target_digits(&self) -> u32 {
        self.target_digits
    }

    pub fn working_bits(&self) -> u32 {
        self.working_bits
    }

    pub fn guard_bits(&self) -> u32 {
        self.guard_bits
    }

    /// `10^-target_digits`, the bound every public result's `err_bound`
    /// must satisfy.
    pub fn tol(&self) -> f64 {
        libm::pow(10.0, -(self.target_digits as f64))
    }

    /// Tolerance used for individual series truncations; a few digits below
    /// `tol` so that combining many partial results still meets the target.
    pub(crate) fn series_tol(&self) -> f64 {
        libm::pow(10.0, -(self.target_digits as f64 + 6.0))
    }

    /// `log10` of [`Self::series_tol`]; usable even where the tolerance
    /// itself would underflow an `f64`.
    pub(crate) fn series_tol_log10(&self) -> f64 {
        -(self.target_digits as f64 + 6.0)
    }

    /// A context with `extra` more target digits, same guard.
    pub(crate) fn padded(&self, extra: u32) -> Self {
        Self::with_guard(self.target_digits + extra, self.guard_bits)
            .expect("guard already validated")
    }
}
