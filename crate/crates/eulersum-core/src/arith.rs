//! Exact rational ingredients: Bernoulli numbers, generalized binomial
//! coefficients, and Euler-polynomial values at zero.
//!
//! The Bernoulli convention here is the one generated by `t / (e^t - 1)`, so
//! `B_1 = -1/2`. This matters: with the alternate convention (`B_1 = +1/2`)
//! every closed form in [`crate::identities`] that touches `B_n` silently
//! breaks, so all call sites go through this module.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Arbitrary-size exact rational, always stored in lowest terms with a
/// positive denominator (both guaranteed by the underlying representation).
pub type ExactRational = num_rational::BigRational;

/// `log10 |x|`, robust for rationals far outside the f64 range.
pub(crate) fn rat_log10_abs(x: &ExactRational) -> f64 {
    use num_traits::ToPrimitive;
    let f = x.to_f64().unwrap_or(f64::INFINITY);
    if f.is_finite() && f != 0.0 {
        return libm::log10(libm::fabs(f));
    }
    if x.numer().bits() == 0 {
        return f64::NEG_INFINITY;
    }
    (x.numer().bits() as f64 - x.denom().bits() as f64) * core::f64::consts::LOG10_2
}

/// Convenience constructor for small rationals.
pub fn rat(n: i64, d: i64) -> ExactRational {
    ExactRational::new(BigInt::from(n), BigInt::from(d))
}

/// `n!` as an exact integer.
pub fn factorial(n: u32) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    acc
}

/// Ordinary binomial coefficient `C(n, k)`; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

/// Generalized binomial coefficient `C(a, r) = a(a-1)...(a-r+1) / r!` for an
/// integer `a` of either sign, evaluated as an exact falling factorial.
///
/// For `a = -s` this equals `(-1)^r C(s+r-1, r)`, the coefficient pattern of
/// the binomial series `(1+x)^{-s}`.
pub fn binom_general(a: i64, r: u32) -> ExactRational {
    let mut num = BigInt::one();
    for j in 0..r as i64 {
        num *= a - j;
    }
    ExactRational::new(num, factorial(r))
}

/// Memoized Bernoulli numbers under the `t/(e^t - 1)` convention
/// (`B_1 = -1/2`).
///
/// Values are produced by the defining recurrence
/// `sum_{j=0}^{n} C(n+1, j) B_j = 0` with `B_0 = 1`. The table is cheap to
/// warm for every index this crate needs (a few hundred at most). After a
/// single-threaded [`ensure`](Self::ensure), [`cached`](Self::cached) reads
/// are safe to share across threads.
#[derive(Debug, Default)]
pub struct BernoulliTable {
    cache: Vec<ExactRational>,
}

impl BernoulliTable {
    pub fn new() -> Self {
        Self { cache: Vec::new() }
    }

    /// Computes and stores `B_0 ..= B_n`.
    pub fn ensure(&mut self, n: u32) {
        if self.cache.is_empty() {
            self.cache.push(ExactRational::one());
        }
        while self.cache.len() <= n as usize {
            let k = self.cache.len(); // computing B_k
            // sum_{j=0}^{k-1} C(k+1, j) B_j, with C maintained incrementally.
            let mut c = BigInt::one();
            let mut sum = ExactRational::zero();
            for (j, bj) in self.cache.iter().enumerate() {
                if !bj.is_zero() {
                    sum += bj * c.clone();
                }
                // C(k+1, j+1) = C(k+1, j) * (k+1-j) / (j+1)
                c = c * (k as u64 + 1 - j as u64) / (j as u64 + 1);
            }
            let bk = -sum / ExactRational::from_integer(BigInt::from(k as u64 + 1));
            self.cache.push(bk);
        }
    }

    /// `B_n`, computing (and memoizing) anything missing.
    pub fn get(&mut self, n: u32) -> ExactRational {
        self.ensure(n);
        self.cache[n as usize].clone()
    }

    /// Read-only lookup; available for concurrent use once the table has been
    /// warmed past `n`.
    pub fn cached(&self, n: u32) -> Option<&ExactRational> {
        self.cache.get(n as usize)
    }
}

/// `B_n` computed from a fresh table. Callers in a loop should hold a
/// [`BernoulliTable`] instead.
pub fn bernoulli(n: u32) -> ExactRational {
    BernoulliTable::new().get(n)
}

/// `E_n(0)`, the Euler polynomial at zero: `-2 (2^{n+1} - 1) B_{n+1} / (n+1)`.
pub fn euler_poly_zero(n: u32) -> ExactRational {
    euler_poly_zero_with(&mut BernoulliTable::new(), n)
}

pub(crate) fn euler_poly_zero_with(table: &mut BernoulliTable, n: u32) -> ExactRational {
    let b = table.get(n + 1);
    let factor = ExactRational::new(
        -2 * ((BigInt::one() << (n + 1)) - 1),
        BigInt::from(n as u64 + 1),
    );
    factor * b
}
