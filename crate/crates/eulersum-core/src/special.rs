//! Depth-1 special functions at arbitrary precision.
//!
//! * `zeta(s)` for integer `s >= 2`: Bernoulli closed form for small even
//!   `s`, Euler-Maclaurin-corrected summation otherwise (the direct path is
//!   kept available for cross-checking via [`zeta_direct`]).
//! * `L(chi_-4, s)` (Dirichlet beta, [`beta_dirichlet`]): alternating-series
//!   acceleration with the Chebyshev scheme; the terms `1/(2k+1)^s` are
//!   moments of a positive measure, so the geometric error bound applies as
//!   stated.
//! * Hurwitz zeta `zeta(s; x) = sum_{n>=0} (n+x)^{-s}` for `x > 0`
//!   ([`hurwitz_zeta`]), Euler-Maclaurin with adaptive cutoff and order.
//! * The harmonic shift `sum_{n>=1} (1/n - 1/(n+x))` for `x > -1`
//!   ([`harmonic_shift`]).
//! * `pi` and `log 2` by Machin-style arctangent series.
//!
//! The Euler-Maclaurin cutoff `N` and correction order are raised jointly
//! until the first omitted correction term drops below the working
//! tolerance, and every returned value carries an error bound covering
//! truncation, the omitted remainder, and accumulated rounding.

use alloc::collections::BTreeMap;
use alloc::format;

use num_bigint::BigInt;
use num_traits::One;

use crate::accel;
use crate::arith::{self, BernoulliTable, ExactRational};
use crate::complexnum::BigComplex;
use crate::error::{Error, Result};
use crate::prec::PrecisionContext;
use crate::real::{pow2, BigReal};

/// `pi` to the context's accuracy (Machin's arctangent combination).
pub fn const_pi(ctx: &PrecisionContext) -> BigReal {
    // pi = 16 atan(1/5) - 4 atan(1/239)
    let a = atan_recip(5, ctx);
    let b = atan_recip(239, ctx);
    a.mul_int(16).sub(&b.mul_int(4))
}

/// `log 2` to the context's accuracy, via `2 atanh(1/3)`.
pub fn const_log2(ctx: &PrecisionContext) -> BigReal {
    atanh_recip(3, ctx).mul_int(2)
}

/// `atan(1/m)` for integer `m >= 2`, by the alternating Taylor series in
/// fixed point.
fn atan_recip(m: u64, ctx: &PrecisionContext) -> BigReal {
    let f = ctx.working_bits();
    let m_big = BigInt::from(m);
    let m2 = &m_big * &m_big;
    let inv_m2 = ExactRational::new(BigInt::one(), m2);
    let mut cur = BigReal::recip_pow(&m_big, 1, ctx);
    let mut acc = BigReal::zero(ctx);
    let mut k = 0u64;
    let mut ops = 0u64;
    while !cur.is_zero() {
        let term = cur.div_uint(2 * k + 1);
        acc = if k % 2 == 0 {
            acc.add(&term)
        } else {
            acc.sub(&term)
        };
        cur = cur.mul_rat(&inv_m2);
        k += 1;
        ops += 2;
    }
    acc.set_err((ops as f64 + 4.0) * pow2(-(f as i64)));
    acc
}

/// `atanh(1/m)` for integer `m >= 2` (all-positive series).
fn atanh_recip(m: u64, ctx: &PrecisionContext) -> BigReal {
    let f = ctx.working_bits();
    let m_big = BigInt::from(m);
    let m2 = &m_big * &m_big;
    let inv_m2 = ExactRational::new(BigInt::one(), m2);
    let mut cur = BigReal::recip_pow(&m_big, 1, ctx);
    let mut acc = BigReal::zero(ctx);
    let mut k = 0u64;
    let mut ops = 0u64;
    while !cur.is_zero() {
        acc = acc.add(&cur.div_uint(2 * k + 1));
        cur = cur.mul_rat(&inv_m2);
        k += 1;
        ops += 2;
    }
    acc.set_err((ops as f64 + 6.0) * pow2(-(f as i64)));
    acc
}

/// Rough double-precision Hurwitz zeta, for error-propagation estimates only.
fn hurwitz_f64(s: u32, x: f64) -> f64 {
    if x <= 0.0 {
        return f64::INFINITY;
    }
    let se = -(s as f64);
    let mut acc = 0.0;
    for n in 0..64 {
        acc += libm::pow(x + n as f64, se);
    }
    acc + libm::pow(x + 64.0, 1.0 - s as f64) / (s as f64 - 1.0)
}

/// Euler-Maclaurin evaluation of `sum_{n>=0} (n+x)^{-s}` for `s >= 2`,
/// `x > 0`. Adaptive in both the cutoff and the correction order.
pub(crate) fn hurwitz_em(
    s: u32,
    x: &BigReal,
    ctx: &PrecisionContext,
    bern: &mut BernoulliTable,
) -> BigReal {
    debug_assert!(s >= 2);
    // Thresholds are compared in log10 space: deep working precisions (as
    // requested by coefficient-scaled tail evaluations) sit far below the
    // f64 range.
    let tol_log = ctx.series_tol_log10() - 0.60;
    let xa = x.approx();
    debug_assert!(xa > 0.0);
    let digits = ctx.target_digits() as f64;
    // The boundary ordinate y = x + N wants to sit comfortably past
    // digits*ln(10)/(2 pi); a larger y keeps the correction order (and the
    // Bernoulli table) shallow at the cost of a cheap, longer head.
    let want_y = 0.60 * digits + 8.0;
    let mut n_cut: u64 = if xa >= want_y {
        0
    } else {
        libm::ceil(want_y - xa) as u64
    };
    let mut attempts = 0;
    loop {
        attempts += 1;
        let mut value = BigReal::zero(ctx);
        // head: n = 0 .. n_cut-1
        let mut t = x.clone();
        let one = BigReal::one(ctx);
        for _ in 0..n_cut {
            value = value.add(&t.recip().pow_u32(s));
            t = t.add(&one);
        }
        // boundary y = x + n_cut
        let y = t;
        let inv = y.recip();
        let inv_s1 = inv.pow_u32(s - 1);
        let integral = inv_s1.mul_rat(&ExactRational::new(
            BigInt::one(),
            BigInt::from(s as u64 - 1),
        ));
        let inv_s = inv_s1.mul(&inv);
        let half = inv_s.mul_rat(&arith::rat(1, 2));
        value = value.add(&integral).add(&half);

        // corrections: + B_{2j}/(2j)! (s)_{2j-1} y^{-(s+2j-1)}. Each term is
        // built from the previous one through a bounded rational ratio, so
        // ulp-level rounding never meets a large Bernoulli coefficient.
        let inv2 = inv.mul(&inv);
        let mut term = inv_s.mul(&inv).mul_rat(&ExactRational::new(
            BigInt::from(s),
            BigInt::from(12),
        )); // j = 1: (s/12) y^{-(s+1)}
        let mut prev_mag_log = f64::INFINITY;
        let mut converged = false;
        let mut rem_log = f64::NEG_INFINITY;
        let mut j = 1u32;
        loop {
            let mag_log = term.log10_abs();
            if mag_log >= prev_mag_log && mag_log > tol_log {
                break; // diverging before reaching tolerance: need larger N
            }
            if mag_log < tol_log {
                // the omitted remainder is bounded by the first omitted term
                converged = true;
                rem_log = mag_log + 0.31;
                break;
            }
            value = value.add(&term);
            prev_mag_log = mag_log;
            // term ratio: (B_{2j+2}/B_{2j}) (s+2j-1)(s+2j) / ((2j+1)(2j+2))
            let ratio = bern.get(2 * j + 2) / bern.get(2 * j)
                * ExactRational::new(
                    BigInt::from((s as u64 + 2 * j as u64 - 1) * (s as u64 + 2 * j as u64)),
                    BigInt::from((2 * j as u64 + 1) * (2 * j as u64 + 2)),
                );
            term = term.mul(&inv2).mul_rat(&ratio);
            j += 1;
        }
        if converged || attempts >= 8 {
            let mut out = value;
            if !converged {
                rem_log = prev_mag_log.max(tol_log);
            }
            let rem_bound = if rem_log > -320.0 {
                libm::pow(10.0, rem_log)
            } else {
                0.0
            };
            // propagate uncertainty of x through d/dx zeta(s;x) = -s zeta(s+1;x)
            let slope = s as f64 * hurwitz_f64(s + 1, xa);
            out.add_err(rem_bound + slope * x.err_bound());
            return out;
        }
        n_cut = n_cut * 2 + 8;
    }
}

/// Riemann zeta at integer `s >= 2`.
///
/// Even `s` up to 64 use the exact Bernoulli closed form
/// `zeta(2k) = (-1)^{k-1} B_{2k} (2 pi)^{2k} / (2 (2k)!)`; everything else
/// goes through the Euler-Maclaurin path.
pub fn zeta_int(s: u32, ctx: &PrecisionContext) -> Result<BigReal> {
    let mut cache = SpecialCache::new(*ctx);
    cache.zeta(s)
}

/// Riemann zeta by Euler-Maclaurin summation regardless of parity; retained
/// as the cross-check route for the closed-form evaluations.
pub fn zeta_direct(s: u32, ctx: &PrecisionContext) -> Result<BigReal> {
    if s < 2 {
        return Err(Error::Domain(format!("zeta requires s >= 2, got {s}")));
    }
    let mut bern = BernoulliTable::new();
    Ok(hurwitz_em(s, &BigReal::one(ctx), ctx, &mut bern))
}

/// Dirichlet beta `L(chi_-4, s) = sum_{n>=0} (-1)^n / (2n+1)^s`, `s >= 1`.
pub fn beta_dirichlet(s: u32, ctx: &PrecisionContext) -> Result<BigReal> {
    if s == 0 {
        return Err(Error::Domain("beta requires s >= 1".into()));
    }
    let n = accel::terms_needed(1.0, ctx.series_tol());
    Ok(accel::alternating_sum_n(
        |k| BigReal::recip_pow(&BigInt::from(2 * k + 1), s, ctx),
        n,
        1.0,
    ))
}

/// Dirichlet eta `sum_{n>=1} (-1)^{n-1} / n^s`; `eta(1) = log 2`, otherwise
/// `(1 - 2^{1-s}) zeta(s)`.
pub fn eta(s: u32, ctx: &PrecisionContext) -> Result<BigReal> {
    let mut cache = SpecialCache::new(*ctx);
    cache.eta(s)
}

/// Hurwitz zeta `zeta(s; x) = sum_{n>=0} (n+x)^{-s}` for integer `s >= 2`
/// and `x > 0`. The sum starts at `n = 0`, so it includes the `x^{-s}` term.
pub fn hurwitz_zeta(s: u32, x: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    if s < 2 {
        return Err(Error::Domain(format!(
            "hurwitz zeta requires s >= 2, got {s}"
        )));
    }
    if x.is_zero() || x.is_negative() {
        return Err(Error::Domain("hurwitz zeta requires x > 0".into()));
    }
    let mut bern = BernoulliTable::new();
    Ok(hurwitz_em(s, x, ctx, &mut bern))
}

/// `sum_{n>=1} (1/n - 1/(n+x))` for `x > -1`, `x != 0`.
///
/// The value at `x = 0` would be `0`, but callers invariably divide by `x`
/// afterwards, so requesting it is treated as a domain error to surface the
/// misuse.
pub fn harmonic_shift(x: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    if x.is_zero() {
        return Err(Error::Domain("harmonic shift is trivial at x = 0".into()));
    }
    let minus_one = BigReal::from_integer(-1, ctx);
    if x.cmp_value(&minus_one) != core::cmp::Ordering::Greater {
        return Err(Error::Domain("harmonic shift requires x > -1".into()));
    }
    let mut bern = BernoulliTable::new();
    Ok(harmonic_shift_em(x, 1, ctx, &mut bern))
}

/// Euler-Maclaurin evaluation of `sum_{n>=from} (1/n - 1/(n+x))`.
pub(crate) fn harmonic_shift_em(
    x: &BigReal,
    from: u64,
    ctx: &PrecisionContext,
    bern: &mut BernoulliTable,
) -> BigReal {
    let tol = ctx.series_tol() * 0.25;
    let xa = x.approx();
    let digits = ctx.target_digits() as f64;
    let want = (0.40 * digits + 6.0).max(4.0 * (libm::fabs(xa) + 1.0));
    let mut n_cut: u64 = (libm::ceil(want) as u64).max(from);
    let mut attempts = 0;
    loop {
        attempts += 1;
        let mut value = BigReal::zero(ctx);
        // head: n = from .. n_cut-1
        let mut t_int = BigReal::from_integer(from as i64, ctx);
        let mut t_shift = x.add(&t_int);
        let one = BigReal::one(ctx);
        for _ in from..n_cut {
            value = value.add(&t_int.recip().sub(&t_shift.recip()));
            t_int = t_int.add(&one);
            t_shift = t_shift.add(&one);
        }
        // boundary N = n_cut: integral ln(1 + x/N) as 2 atanh(x / (2N + x))
        let n_real = t_int; // = N
        let n_shift = t_shift; // = N + x
        let u = x.div(&n_real.add(&n_shift));
        let u2 = u.mul(&u);
        let mut upow = u.clone();
        let mut integral = BigReal::zero(ctx);
        let ua = libm::fabs(u.approx());
        let mut k = 0u64;
        loop {
            let term = upow.div_uint(2 * k + 1);
            integral = integral.add(&term);
            if libm::fabs(term.approx()) < tol * 0.25 {
                break;
            }
            upow = upow.mul(&u2);
            k += 1;
        }
        let mut integral = integral.mul_int(2);
        integral.add_err(tol * ua * ua / (1.0 - ua * ua));
        value = value.add(&integral);

        let inv_n = n_real.recip();
        let inv_nx = n_shift.recip();
        let half = inv_n.sub(&inv_nx).mul_rat(&arith::rat(1, 2));
        value = value.add(&half);

        // corrections: + B_{2j}/(2j) * (N^{-2j} - (N+x)^{-2j}); the two
        // power streams carry the Bernoulli weight incrementally so that
        // rounding never meets a large coefficient.
        let inv_n2 = inv_n.mul(&inv_n);
        let inv_nx2 = inv_nx.mul(&inv_nx);
        let mut qn = inv_n2.mul_rat(&arith::rat(1, 12)); // B_2/2 N^{-2}
        let mut qnx = inv_nx2.mul_rat(&arith::rat(1, 12));
        let mut prev_mag = f64::INFINITY;
        let mut converged = false;
        let mut rem_bound = 0.0f64;
        let mut j = 1u32;
        loop {
            let term = qn.sub(&qnx);
            let mag = libm::fabs(term.approx());
            if mag >= prev_mag && mag > tol {
                break;
            }
            if mag < tol {
                converged = true;
                rem_bound = 2.0 * (mag + term.err_bound());
                break;
            }
            value = value.add(&term);
            prev_mag = mag;
            // weight ratio: (B_{2j+2}/B_{2j}) (2j)/(2j+2)
            let ratio = bern.get(2 * j + 2) / bern.get(2 * j)
                * ExactRational::new(BigInt::from(2 * j), BigInt::from(2 * j + 2));
            qn = qn.mul(&inv_n2).mul_rat(&ratio);
            qnx = qnx.mul(&inv_nx2).mul_rat(&ratio);
            j += 1;
        }
        if converged || attempts >= 8 {
            let mut out = value;
            if !converged {
                rem_bound = prev_mag.max(tol);
            }
            // d/dx of the sum is sum_{n>=from} (n+x)^{-2}
            let slope = hurwitz_f64(2, from as f64 + xa);
            out.add_err(rem_bound + slope * x.err_bound());
            return out;
        }
        n_cut = n_cut * 2 + 8;
    }
}

/// `exp(x)` by scaling-and-squaring plus the Taylor series.
pub fn exp(x: &BigReal, ctx: &PrecisionContext) -> BigReal {
    let xa = libm::fabs(x.approx());
    let extra = if xa > 1.0 {
        libm::ceil(libm::log2(xa)) as u32 + 1
    } else {
        0
    };
    let r = 16 + extra;
    let t = x.mul_rat(&ExactRational::new(BigInt::one(), BigInt::one() << r));
    let tol = ctx.series_tol() * pow2(-(r as i64 + 2));
    let mut term = BigReal::one(ctx);
    let mut acc = BigReal::one(ctx);
    let mut n = 1u64;
    loop {
        term = term.mul(&t).div_uint(n);
        acc = acc.add(&term);
        if libm::fabs(term.approx()) < tol {
            break;
        }
        n += 1;
    }
    acc.add_err(2.0 * tol);
    let mut y = acc;
    for _ in 0..r {
        y = y.mul(&y);
    }
    y
}

/// Polylogarithm at a unit argument: `Li_n(1) = zeta(n)` (requires
/// `n >= 2`), `Li_n(-1) = -eta(n)`.
pub(crate) fn li_unit_real(cache: &mut SpecialCache, n: u32, negative: bool) -> Result<BigReal> {
    if negative {
        Ok(cache.eta(n)?.neg())
    } else if n >= 2 {
        cache.zeta(n)
    } else {
        Err(Error::DivergentTerm(
            "Li_1(1) is the harmonic series".into(),
        ))
    }
}

/// `Li_n(i)` or `Li_n(-i)`: `-2^{-n} eta(n) +/- i beta(n)`, valid for
/// `n >= 1`.
pub(crate) fn li_unit_quartic(
    cache: &mut SpecialCache,
    n: u32,
    positive_i: bool,
) -> Result<BigComplex> {
    let re = cache
        .eta(n)?
        .mul_rat(&ExactRational::new(-BigInt::one(), BigInt::one() << n));
    let im = cache.beta(n)?;
    let im = if positive_i { im } else { im.neg() };
    Ok(BigComplex::new(re, im))
}

/// Per-evaluation memo for the constants and depth-1 values an operation
/// needs repeatedly. Purely call-scoped: public operations build one, use
/// it, and drop it, so the public API stays a pure function of its inputs.
pub(crate) struct SpecialCache {
    ctx: PrecisionContext,
    pub(crate) bern: BernoulliTable,
    pi: Option<BigReal>,
    log2: Option<BigReal>,
    zeta: BTreeMap<u32, BigReal>,
    beta: BTreeMap<u32, BigReal>,
}

impl SpecialCache {
    pub(crate) fn new(ctx: PrecisionContext) -> Self {
        Self {
            ctx,
            bern: BernoulliTable::new(),
            pi: None,
            log2: None,
            zeta: BTreeMap::new(),
            beta: BTreeMap::new(),
        }
    }

    pub(crate) fn ctx(&self) -> &PrecisionContext {
        &self.ctx
    }

    pub(crate) fn pi(&mut self) -> BigReal {
        if self.pi.is_none() {
            self.pi = Some(const_pi(&self.ctx));
        }
        self.pi.clone().expect("just set")
    }

    pub(crate) fn log2(&mut self) -> BigReal {
        if self.log2.is_none() {
            self.log2 = Some(const_log2(&self.ctx));
        }
        self.log2.clone().expect("just set")
    }

    pub(crate) fn zeta(&mut self, s: u32) -> Result<BigReal> {
        if s < 2 {
            return Err(Error::Domain(format!("zeta requires s >= 2, got {s}")));
        }
        if let Some(v) = self.zeta.get(&s) {
            return Ok(v.clone());
        }
        let v = if s % 2 == 0 && s <= 64 {
            // zeta(2k) = (-1)^{k-1} B_{2k} 2^{2k-1} / (2k)! * pi^{2k}
            let k = s / 2;
            let mut coef = self.bern.get(s)
                * ExactRational::new(BigInt::one() << (s - 1), arith::factorial(s));
            if k % 2 == 0 {
                coef = -coef;
            }
            self.pi().pow_u32(s).mul_rat(&coef)
        } else {
            hurwitz_em(s, &BigReal::one(&self.ctx), &self.ctx, &mut self.bern)
        };
        self.zeta.insert(s, v.clone());
        Ok(v)
    }

    pub(crate) fn beta(&mut self, s: u32) -> Result<BigReal> {
        if s == 0 {
            return Err(Error::Domain("beta requires s >= 1".into()));
        }
        if let Some(v) = self.beta.get(&s) {
            return Ok(v.clone());
        }
        let v = beta_dirichlet(s, &self.ctx)?;
        self.beta.insert(s, v.clone());
        Ok(v)
    }

    pub(crate) fn eta(&mut self, s: u32) -> Result<BigReal> {
        if s == 0 {
            return Err(Error::Domain("eta requires s >= 1".into()));
        }
        if s == 1 {
            return Ok(self.log2());
        }
        let coef = ExactRational::new((BigInt::one() << (s - 1)) - 1, BigInt::one() << (s - 1));
        Ok(self.zeta(s)?.mul_rat(&coef))
    }

    pub(crate) fn bernoulli(&mut self, n: u32) -> ExactRational {
        self.bern.get(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn ctx30() -> PrecisionContext {
        PrecisionContext::new(30)
    }

    fn assert_close(a: &BigReal, b: &BigReal, tol: f64, what: &str) {
        let d = a.sub(b).abs().approx();
        assert!(d < tol, "{what}: |diff| = {d:e} >= {tol:e}");
    }

    /// Oracle: pi from an independent arctangent decomposition (Stormer).
    fn const_pi_stormer(ctx: &PrecisionContext) -> BigReal {
        // pi = 24 atan(1/8) + 8 atan(1/57) + 4 atan(1/239)
        let a = atan_recip(8, ctx);
        let b = atan_recip(57, ctx);
        let c = atan_recip(239, ctx);
        a.mul_int(24).add(&b.mul_int(8)).add(&c.mul_int(4))
    }

    /// Oracle: log 2 from the independent series sum_{k>=1} 1/(k 2^k).
    fn const_log2_series(ctx: &PrecisionContext) -> BigReal {
        let mut acc = BigReal::zero(ctx);
        let two = BigInt::from(2);
        for k in 1..=(ctx.working_bits() as u64 + 2) {
            let term = BigReal::recip_pow(&two, k as u32, ctx).div_uint(k);
            acc = acc.add(&term);
        }
        acc.add_err(pow2(-(ctx.working_bits() as i64)) * 4.0);
        acc
    }

    #[test]
    fn pi_two_formulas_agree() {
        let ctx = ctx30();
        let a = const_pi(&ctx);
        let b = const_pi_stormer(&ctx);
        assert_close(&a, &b, 1e-36, "machin vs stormer");
        assert_eq!(&a.to_decimal(29), "3.14159265358979323846264338328");
        assert!(a.err_bound() <= ctx.tol());
    }

    #[test]
    fn log2_two_formulas_agree() {
        let ctx = ctx30();
        let a = const_log2(&ctx);
        let b = const_log2_series(&ctx);
        assert_close(&a, &b, 1e-36, "atanh vs dyadic series");
        assert_eq!(&a.to_decimal(30), "0.693147180559945309417232121458");
        assert!(a.err_bound() <= ctx.tol());
    }

    #[test]
    fn exp_of_log2_is_two() {
        let ctx = ctx30();
        let e = exp(&const_log2(&ctx), &ctx);
        let two = BigReal::from_integer(2, &ctx);
        assert_close(&e, &two, 1e-30, "exp(log 2)");
    }

    #[test]
    fn zeta_matches_pi_closed_forms() {
        let ctx = ctx30();
        let pi = const_pi(&ctx);
        let z2 = zeta_int(2, &ctx).unwrap();
        assert_close(&z2, &pi.pow_u32(2).div_uint(6), 1e-34, "zeta(2)");
        let z4 = zeta_int(4, &ctx).unwrap();
        assert_close(&z4, &pi.pow_u32(4).div_uint(90), 1e-34, "zeta(4)");
        assert_eq!(&z2.to_decimal(15), "1.644934066848226");
    }

    #[test]
    fn zeta_closed_form_agrees_with_euler_maclaurin() {
        let ctx = ctx30();
        for s in 2..=12u32 {
            let a = zeta_int(s, &ctx).unwrap();
            let b = zeta_direct(s, &ctx).unwrap();
            assert_close(&a, &b, 1e-30, "zeta closed vs direct");
            assert!(a.err_bound() <= ctx.tol());
            assert!(b.err_bound() <= ctx.tol());
        }
    }

    #[test]
    fn zeta_rejects_bad_domain() {
        let ctx = ctx30();
        assert!(zeta_int(1, &ctx).is_err());
        assert!(zeta_int(0, &ctx).is_err());
    }

    #[test]
    fn zeta_large_argument() {
        let ctx = ctx30();
        let z = zeta_int(141, &ctx).unwrap();
        // zeta(141) - 1 ~ 2^-141
        let one = BigReal::one(&ctx);
        let d = z.sub(&one).approx();
        assert!(d > 0.0 && d < 1e-42);
    }

    #[test]
    fn beta_known_values() {
        let ctx = ctx30();
        let pi = const_pi(&ctx);
        let b1 = beta_dirichlet(1, &ctx).unwrap();
        assert_close(&b1, &pi.div_uint(4), 1e-34, "beta(1) = pi/4");
        let b3 = beta_dirichlet(3, &ctx).unwrap();
        assert_close(&b3, &pi.pow_u32(3).div_uint(32), 1e-34, "beta(3) = pi^3/32");
        let b2 = beta_dirichlet(2, &ctx).unwrap();
        assert_eq!(&b2.to_decimal(18), "0.915965594177219015");
        assert!(b2.err_bound() <= ctx.tol());
        assert!(beta_dirichlet(0, &ctx).is_err());
    }

    #[test]
    fn beta_agrees_with_hurwitz_split() {
        // beta(s) = 4^{-s} (zeta(s; 1/4) - zeta(s; 3/4)): an independent
        // Euler-Maclaurin route through the residue-class split.
        let ctx = ctx30();
        for s in 2..=6u32 {
            let b = beta_dirichlet(s, &ctx).unwrap();
            let q1 = hurwitz_zeta(s, &BigReal::from_rational(&rat(1, 4), &ctx), &ctx).unwrap();
            let q3 = hurwitz_zeta(s, &BigReal::from_rational(&rat(3, 4), &ctx), &ctx).unwrap();
            let alt = q1
                .sub(&q3)
                .mul_rat(&ExactRational::new(BigInt::one(), BigInt::from(4).pow(s)));
            assert_close(&b, &alt, 1e-33, "beta vs hurwitz split");
        }
    }

    #[test]
    fn hurwitz_reduces_to_zeta_at_one() {
        let ctx = ctx30();
        for s in [2u32, 3, 5] {
            let h = hurwitz_zeta(s, &BigReal::one(&ctx), &ctx).unwrap();
            let z = zeta_int(s, &ctx).unwrap();
            assert_close(&h, &z, 1e-33, "zeta(s;1) = zeta(s)");
        }
    }

    #[test]
    fn hurwitz_at_half() {
        let ctx = ctx30();
        let half = BigReal::from_rational(&rat(1, 2), &ctx);
        let h2 = hurwitz_zeta(2, &half, &ctx).unwrap();
        let expect = zeta_int(2, &ctx).unwrap().mul_int(3); // (2^2-1) zeta(2)
        assert_close(&h2, &expect, 1e-33, "zeta(2;1/2)");
        let h3 = hurwitz_zeta(3, &half, &ctx).unwrap();
        let expect = zeta_int(3, &ctx).unwrap().mul_int(7); // (2^3-1) zeta(3)
        assert_close(&h3, &expect, 1e-33, "zeta(3;1/2)");
    }

    #[test]
    fn hurwitz_shift_identity() {
        // zeta(s;x) - x^{-s} - zeta(s;x+1) = 0
        let ctx = ctx30();
        for s in [2u32, 3, 4] {
            for (n, d) in [(1i64, 4i64), (1, 2), (3, 4)] {
                let x = BigReal::from_rational(&rat(n, d), &ctx);
                let x1 = x.add(&BigReal::one(&ctx));
                let lhs = hurwitz_zeta(s, &x, &ctx).unwrap();
                let direct = x
                    .recip()
                    .pow_u32(s)
                    .add(&hurwitz_zeta(s, &x1, &ctx).unwrap());
                assert_close(&lhs, &direct, 1e-33, "shift identity");
            }
        }
    }

    #[test]
    fn hurwitz_domain_checks() {
        let ctx = ctx30();
        let mhalf = BigReal::from_rational(&rat(-1, 2), &ctx);
        assert!(hurwitz_zeta(2, &mhalf, &ctx).is_err());
        assert!(hurwitz_zeta(1, &BigReal::one(&ctx), &ctx).is_err());
        assert!(hurwitz_zeta(2, &BigReal::zero(&ctx), &ctx).is_err());
    }

    #[test]
    fn harmonic_shift_telescopes_at_one() {
        let ctx = ctx30();
        let v = harmonic_shift(&BigReal::one(&ctx), &ctx).unwrap();
        assert_close(&v, &BigReal::one(&ctx), 1e-33, "x=1 telescopes to 1");
    }

    #[test]
    fn harmonic_shift_at_half() {
        // sum (1/n - 1/(n+1/2)) = 2 - 2 log 2
        let ctx = ctx30();
        let half = BigReal::from_rational(&rat(1, 2), &ctx);
        let v = harmonic_shift(&half, &ctx).unwrap();
        let expect = BigReal::from_integer(2, &ctx).sub(&const_log2(&ctx).mul_int(2));
        assert_close(&v, &expect, 1e-33, "x=1/2");
        assert!(v.err_bound() <= ctx.tol());
    }

    #[test]
    fn harmonic_shift_negative_x_matches_direct_sum() {
        // direct-summation oracle: 10^6 terms plus the integral tail x/N.
        let ctx = ctx30();
        let x = BigReal::from_rational(&rat(-1, 2), &ctx);
        let v = harmonic_shift(&x, &ctx).unwrap();
        // also equals -2 log 2 (this is psi(1/2) + gamma)
        let expect = const_log2(&ctx).mul_int(-2);
        assert_close(&v, &expect, 1e-33, "x=-1/2 closed form");

        let mut direct = 0.0f64;
        for n in 1..=1_000_000i64 {
            direct += 1.0 / n as f64 - 1.0 / (n as f64 - 0.5);
        }
        direct += -0.5 / 1_000_000.0;
        assert!((v.approx() - direct).abs() < 1e-6, "direct oracle");
    }

    #[test]
    fn harmonic_shift_domain_checks() {
        let ctx = ctx30();
        assert!(harmonic_shift(&BigReal::zero(&ctx), &ctx).is_err());
        assert!(harmonic_shift(&BigReal::from_integer(-1, &ctx), &ctx).is_err());
        assert!(harmonic_shift(&BigReal::from_integer(-2, &ctx), &ctx).is_err());
    }

    #[test]
    fn eta_values() {
        let ctx = ctx30();
        let e1 = eta(1, &ctx).unwrap();
        assert_close(&e1, &const_log2(&ctx), 1e-34, "eta(1) = log 2");
        let e2 = eta(2, &ctx).unwrap();
        let expect = zeta_int(2, &ctx).unwrap().div_uint(2);
        assert_close(&e2, &expect, 1e-34, "eta(2) = zeta(2)/2");
    }

    #[test]
    fn quartic_unit_polylog_from_split_series() {
        // (Li_s(i) - Li_s(-i)) / (2i) = beta(s) for s in [1,8], with the
        // s = 2 value also reproduced by partial sums of sum i^n / n^2
        // split by residue class.
        let ctx = PrecisionContext::new(15);
        let mut cache = SpecialCache::new(ctx);
        for s in 1..=8u32 {
            let li_i = li_unit_quartic(&mut cache, s, true).unwrap();
            let li_mi = li_unit_quartic(&mut cache, s, false).unwrap();
            // (a - b) / (2i) = Im(a) when b = conj(a)
            let recovered = li_i.sub(&li_mi).mul_i(false).div_uint(2).re;
            assert_close(
                &recovered,
                &beta_dirichlet(s, &ctx).unwrap(),
                1e-16,
                "beta from quartic polylog",
            );
        }

        let li2i = li_unit_quartic(&mut cache, 2, true).unwrap();
        let mut re = 0.0f64;
        let mut im = 0.0f64;
        for n in 1..=2_000_000u64 {
            let t = 1.0 / (n as f64 * n as f64);
            match n % 4 {
                1 => im += t,
                2 => re -= t,
                3 => im -= t,
                _ => re += t,
            }
        }
        assert!((li2i.re.approx() - re).abs() < 1e-7);
        assert!((li2i.im.approx() - im).abs() < 1e-7);
    }

    #[test]
    fn err_bounds_meet_contract() {
        let ctx = PrecisionContext::new(50);
        assert!(const_pi(&ctx).err_bound() <= ctx.tol());
        assert!(zeta_int(3, &ctx).unwrap().err_bound() <= ctx.tol());
        assert!(beta_dirichlet(4, &ctx).unwrap().err_bound() <= ctx.tol());
        let half = BigReal::from_rational(&rat(1, 2), &ctx);
        assert!(hurwitz_zeta(3, &half, &ctx).unwrap().err_bound() <= ctx.tol());
        assert!(harmonic_shift(&half, &ctx).unwrap().err_bound() <= ctx.tol());
    }
}
