//! Definition-level evaluation of the depth-2 sums.
//!
//! Everything here computes the double sums straight from their defining
//! series, without using any of the closed-form identities in
//! [`crate::identities`]; these values are the ground truth the identity
//! checks compare against.
//!
//! Conditionally convergent outer sums are never summed naively. For
//! `sum_{0<j<k} sigma^j rho^k / (j^m k^n)` the inner partial sum is replaced
//! by its limit `Li_m(sigma)` plus a remainder `rem_k = sum_{j>=k}
//! sigma^j j^{-m}`:
//!
//! * the limit term becomes a classical constant times a depth-1 series
//!   with a closed form or an accelerated evaluation;
//! * the remainder term gives an absolutely convergent series whose head is
//!   summed explicitly (ascending `k`, remainders produced by a downward
//!   recurrence from an accelerated seed) and whose tail is completed by
//!   exchanging the order of summation: each tail reduces to partial
//!   fractions over `zeta(h; K)`-type Euler-Maclaurin tails and
//!   harmonic-shift tails, with the Chebyshev acceleration of
//!   [`crate::accel`] applied across the remaining alternating index. All
//!   accelerated sequences are moments of positive measures, so the
//!   geometric error bound is rigorous.
//!
//! Summation order is fixed everywhere, so results are bit-for-bit
//! reproducible at a given working precision.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::accel;
use crate::arith::{self, binom_general, ExactRational};
use crate::complexnum::BigComplex;
use crate::error::{Error, Result};
use crate::prec::PrecisionContext;
use crate::real::BigReal;
use crate::special::{self, SpecialCache};

/// Truncation metadata attached to an evaluation: `(knob, value)` pairs.
pub type Trace = Vec<(&'static str, u64)>;

/// Extra digits the internal machinery works at beyond the caller's target.
pub(crate) const PAD_DIGITS: u32 = 10;

/// Head length before tails take over; the tail machinery is exact enough
/// that this stays small.
const DEFAULT_HEAD: u64 = 32;

/// Twist by a fourth root of unity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Twist {
    One,
    MinusOne,
    I,
    MinusI,
}

impl Twist {
    pub fn is_real(self) -> bool {
        matches!(self, Twist::One | Twist::MinusOne)
    }
}

/// Parameters of a depth-2 sum `Li_{n,m}(outer, inner) =
/// sum_{0<j<k} inner^j outer^k / (j^m k^n)`.
///
/// `outer_weight` is the exponent on `k`, `inner_weight` the exponent on
/// `j`; for `outer_weight = 1` the outer twist must differ from `1` or the
/// sum diverges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SumSpec {
    pub outer_weight: u32,
    pub inner_weight: u32,
    pub outer_twist: Twist,
    pub inner_twist: Twist,
}

impl SumSpec {
    pub fn new(
        outer_weight: u32,
        inner_weight: u32,
        outer_twist: Twist,
        inner_twist: Twist,
    ) -> Result<Self> {
        if outer_weight == 0 || inner_weight == 0 {
            return Err(Error::Domain("weights must be positive".into()));
        }
        if outer_weight == 1 && outer_twist == Twist::One {
            return Err(Error::Domain(
                "outer weight 1 with outer twist 1 diverges".into(),
            ));
        }
        Ok(Self {
            outer_weight,
            inner_weight,
            outer_twist,
            inner_twist,
        })
    }
}

fn recip_pow_rat(k: u64, n: u32) -> ExactRational {
    ExactRational::new(BigInt::one(), BigInt::from(k).pow(n))
}

// ---------------------------------------------------------------------------
// remainder tables (downward recurrences from accelerated seeds)
// ---------------------------------------------------------------------------

/// `R_k = sum_{i>=0} (-1)^i / (2(k+i)+1)^m` for `k = 1 ..= kmax`.
fn rk_table(cache: &mut SpecialCache, m: u32, kmax: u64) -> Vec<BigReal> {
    let ctx = *cache.ctx();
    let tol = ctx.series_tol();
    let seed_terms = accel::terms_needed(1.0, tol);
    let seed = accel::alternating_sum_n(
        |i| BigReal::recip_pow(&BigInt::from(2 * (kmax + 1 + i) + 1), m, &ctx),
        seed_terms,
        1.0,
    );
    let mut table = alloc::vec![BigReal::zero(&ctx); kmax as usize + 2];
    table[kmax as usize + 1] = seed;
    for k in (1..=kmax).rev() {
        let pw = BigReal::recip_pow(&BigInt::from(2 * k + 1), m, &ctx);
        table[k as usize] = pw.sub(&table[k as usize + 1]);
    }
    table
}

/// `s_k = sum_{i>=0} (-1)^i / (k+i)^m` for `k = 1 ..= kmax`.
fn sk_table(cache: &mut SpecialCache, m: u32, kmax: u64) -> Vec<BigReal> {
    let ctx = *cache.ctx();
    let tol = ctx.series_tol();
    let seed_terms = accel::terms_needed(1.0, tol);
    let seed = accel::alternating_sum_n(
        |i| BigReal::recip_pow(&BigInt::from(kmax + 1 + i), m, &ctx),
        seed_terms,
        1.0,
    );
    let mut table = alloc::vec![BigReal::zero(&ctx); kmax as usize + 2];
    table[kmax as usize + 1] = seed;
    for k in (1..=kmax).rev() {
        let pw = BigReal::recip_pow(&BigInt::from(k), m, &ctx);
        table[k as usize] = pw.sub(&table[k as usize + 1]);
    }
    table
}

/// `zeta(m; k)` for `k = 1 ..= kmax`, by downward recurrence from one
/// Euler-Maclaurin evaluation.
fn hurwitz_partial_table(cache: &mut SpecialCache, m: u32, kmax: u64) -> Vec<BigReal> {
    let ctx = *cache.ctx();
    let seed = special::hurwitz_em(
        m,
        &BigReal::from_integer(kmax as i64 + 1, &ctx),
        &ctx,
        &mut cache.bern,
    );
    let mut table = alloc::vec![BigReal::zero(&ctx); kmax as usize + 2];
    table[kmax as usize + 1] = seed;
    for k in (1..=kmax).rev() {
        let pw = BigReal::recip_pow(&BigInt::from(k), m, &ctx);
        table[k as usize] = pw.add(&table[k as usize + 1]);
    }
    table
}

/// `W(k) = sum_{i>=0} sigma^i (k+i)^{-m}` for a quartic inner twist
/// `sigma = +-i`, `k = 1 ..= kmax`. Seeded by two accelerated alternating
/// sums (even and odd `i`), then `W(k) = k^{-m} + sigma W(k+1)`.
fn w_table(cache: &mut SpecialCache, m: u32, sigma_pos: bool, kmax: u64) -> Vec<BigComplex> {
    let ctx = *cache.ctx();
    let tol = ctx.series_tol();
    let seed_terms = accel::terms_needed(1.0, tol);
    let start = kmax + 1;
    let even = accel::alternating_sum_n(
        |t| BigReal::recip_pow(&BigInt::from(start + 2 * t), m, &ctx),
        seed_terms,
        1.0,
    );
    let odd = accel::alternating_sum_n(
        |t| BigReal::recip_pow(&BigInt::from(start + 2 * t + 1), m, &ctx),
        seed_terms,
        1.0,
    );
    let seed = BigComplex::new(even, if sigma_pos { odd } else { odd.neg() });
    let mut table = alloc::vec![BigComplex::zero(&ctx); kmax as usize + 2];
    table[kmax as usize + 1] = seed;
    for k in (1..=kmax).rev() {
        let pw = BigReal::recip_pow(&BigInt::from(k), m, &ctx);
        let shifted = table[k as usize + 1].mul_i(sigma_pos);
        table[k as usize] = BigComplex::new(pw.add(&shifted.re), shifted.im.clone());
    }
    table
}

// ---------------------------------------------------------------------------
// partial-fraction tails
// ---------------------------------------------------------------------------

/// Coefficients of `1/(k^n (k+c)^m) = sum_h a_h/k^h + sum_h b_h/(k+c)^h`.
/// `a_1 + b_1 = 0` always, so the `h = 1` parts pair into a finite
/// harmonic-shift tail.
fn pf_coeffs(n: u32, m: u32, c: &ExactRational) -> (Vec<ExactRational>, Vec<ExactRational>) {
    let cinv = c.recip();
    let mut a = Vec::with_capacity(n as usize);
    for h in 1..=n {
        // a_h = C(-m, n-h) c^{-(m+n-h)}
        let pw = pow_rat(&cinv, m + n - h);
        a.push(binom_general(-(m as i64), n - h) * pw);
    }
    let mut b = Vec::with_capacity(m as usize);
    for h in 1..=m {
        // b_h = C(-n, m-h) (-1)^{n+m-h} c^{-(n+m-h)}
        let mut coef = binom_general(-(n as i64), m - h) * pow_rat(&cinv, n + m - h);
        if (n + m - h) % 2 == 1 {
            coef = -coef;
        }
        b.push(coef);
    }
    (a, b)
}

fn pow_rat(x: &ExactRational, e: u32) -> ExactRational {
    let mut acc = ExactRational::one();
    let mut base = x.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc *= base.clone();
        }
        e >>= 1;
        if e > 0 {
            base = base.clone() * base;
        }
    }
    acc
}

/// Precomputed `zeta(h; K+c)` tables and harmonic prefixes supporting
/// `sum_{k>=K} 1/(k^n (k+c)^m)` for integer shifts `c = 0..=c_max`.
struct IntShiftTails {
    n: u32,
    m: u32,
    /// `zeta(h; K)` for `h = 2..=n` (indexed by `h`).
    zeta_outer: Vec<Option<BigReal>>,
    /// `zeta(h; K+c)` for `h = 2..=m`, `c = 0..=c_max`.
    zeta_shift: Vec<Option<Vec<BigReal>>>,
    /// `H_{K+c-1} - H_{K-1}` for `c = 0..=c_max`.
    harm: Vec<ExactRational>,
    /// `zeta(n+m; K)` for the degenerate `c = 0` case.
    zeta_top: BigReal,
}

impl IntShiftTails {
    fn build(cache: &mut SpecialCache, n: u32, m: u32, k0: u64, c_max: u64) -> Self {
        let ctx = *cache.ctx();
        let k0_real = BigReal::from_integer(k0 as i64, &ctx);
        let zeta_top = special::hurwitz_em(n + m, &k0_real, &ctx, &mut cache.bern);
        let mut zeta_outer = alloc::vec![None; n as usize + 1];
        for h in 2..=n {
            zeta_outer[h as usize] =
                Some(special::hurwitz_em(h, &k0_real, &ctx, &mut cache.bern));
        }
        let mut zeta_shift = alloc::vec![None; m as usize + 1];
        for h in 2..=m {
            let seed = special::hurwitz_em(
                h,
                &BigReal::from_integer((k0 + c_max) as i64, &ctx),
                &ctx,
                &mut cache.bern,
            );
            let mut v = alloc::vec![BigReal::zero(&ctx); c_max as usize + 1];
            v[c_max as usize] = seed;
            for c in (0..c_max).rev() {
                let pw = BigReal::recip_pow(&BigInt::from(k0 + c), h, &ctx);
                v[c as usize] = pw.add(&v[c as usize + 1]);
            }
            zeta_shift[h as usize] = Some(v);
        }
        let mut harm = Vec::with_capacity(c_max as usize + 1);
        let mut acc = ExactRational::from_integer(BigInt::from(0));
        harm.push(acc.clone());
        for c in 1..=c_max {
            acc += ExactRational::new(BigInt::one(), BigInt::from(k0 + c - 1));
            harm.push(acc.clone());
        }
        Self {
            n,
            m,
            zeta_outer,
            zeta_shift,
            harm,
            zeta_top,
        }
    }

    /// `sum_{k>=K} 1/(k^n (k+c)^m)`.
    fn tail(&self, ctx: &PrecisionContext, c: u64) -> BigReal {
        if c == 0 {
            return self.zeta_top.clone();
        }
        let c_rat = ExactRational::from_integer(BigInt::from(c));
        let (a, b) = pf_coeffs(self.n, self.m, &c_rat);
        let mut acc = BigReal::from_rational(&(&a[0] * &self.harm[c as usize]), ctx);
        for h in 2..=self.n {
            let z = self.zeta_outer[h as usize].as_ref().expect("built");
            acc = acc.add(&z.mul_rat(&a[(h - 1) as usize]));
        }
        for h in 2..=self.m {
            let z = &self.zeta_shift[h as usize].as_ref().expect("built")[c as usize];
            acc = acc.add(&z.mul_rat(&b[(h - 1) as usize]));
        }
        acc
    }
}

/// Half-integer analogue: supports `sum_{k>=K} 1/(k^n (k+i+1/2)^m)` for
/// `i = 0..=i_max`, as needed by the odd-denominator remainders.
struct HalfShiftTails {
    n: u32,
    m: u32,
    zeta_outer: Vec<Option<BigReal>>,
    /// `zeta(h; K+i+1/2)` for `h = 2..=m`, `i = 0..=i_max`.
    zeta_shift: Vec<Option<Vec<BigReal>>>,
    /// `HT(i+1/2, K) = sum_{k>=K} (1/k - 1/(k+i+1/2))`, `i = 0..=i_max`.
    hshift: Vec<BigReal>,
}

impl HalfShiftTails {
    fn build(cache: &mut SpecialCache, n: u32, m: u32, k0: u64, i_max: u64) -> Self {
        let ctx = *cache.ctx();
        let k0_real = BigReal::from_integer(k0 as i64, &ctx);
        let mut zeta_outer = alloc::vec![None; n as usize + 1];
        for h in 2..=n {
            zeta_outer[h as usize] =
                Some(special::hurwitz_em(h, &k0_real, &ctx, &mut cache.bern));
        }
        let mut zeta_shift = alloc::vec![None; m as usize + 1];
        for h in 2..=m {
            let top_shift = arith::rat(2 * (k0 + i_max) as i64 + 1, 2);
            let seed = special::hurwitz_em(
                h,
                &BigReal::from_rational(&top_shift, &ctx),
                &ctx,
                &mut cache.bern,
            );
            let mut v = alloc::vec![BigReal::zero(&ctx); i_max as usize + 1];
            v[i_max as usize] = seed;
            for i in (0..i_max).rev() {
                // zeta(h; y) = y^{-h} + zeta(h; y+1) with y = K + i + 1/2
                let y = arith::rat(2 * (k0 + i) as i64 + 1, 2);
                let pw = BigReal::from_rational(&pow_rat(&y.recip(), h), &ctx);
                v[i as usize] = pw.add(&v[i as usize + 1]);
            }
            zeta_shift[h as usize] = Some(v);
        }
        // HT(1/2, K), then HT(c+1, K) = HT(c, K) + 1/(K+c)
        let half = BigReal::from_rational(&arith::rat(1, 2), &ctx);
        let mut ht = special::harmonic_shift_em(&half, k0, &ctx, &mut cache.bern);
        let mut hshift = Vec::with_capacity(i_max as usize + 1);
        hshift.push(ht.clone());
        for i in 0..i_max {
            let step = arith::rat(2, 2 * (k0 + i) as i64 + 1); // 1/(K+i+1/2)
            ht = ht.add(&BigReal::from_rational(&step, &ctx));
            hshift.push(ht.clone());
        }
        Self {
            n,
            m,
            zeta_outer,
            zeta_shift,
            hshift,
        }
    }

    /// `sum_{k>=K} 1/(k^n (k+i+1/2)^m)`.
    fn tail(&self, i: u64) -> BigReal {
        let c = arith::rat(2 * i as i64 + 1, 2);
        let (a, b) = pf_coeffs(self.n, self.m, &c);
        let mut acc = self.hshift[i as usize].mul_rat(&a[0]);
        for h in 2..=self.n {
            let z = self.zeta_outer[h as usize].as_ref().expect("built");
            acc = acc.add(&z.mul_rat(&a[(h - 1) as usize]));
        }
        for h in 2..=self.m {
            let z = &self.zeta_shift[h as usize].as_ref().expect("built")[i as usize];
            acc = acc.add(&z.mul_rat(&b[(h - 1) as usize]));
        }
        acc
    }
}

// ---------------------------------------------------------------------------
// series over the remainders
// ---------------------------------------------------------------------------

fn hurwitz_tail_f64(s: u32, x: f64) -> f64 {
    libm::pow(x, 1.0 - s as f64) / (s as f64 - 1.0) + libm::pow(x, -(s as f64))
}

/// `log10` of the Hurwitz tail estimate, robust far below the f64 range.
fn hurwitz_tail_log10(s: u32, x: f64) -> f64 {
    (1.0 - s as f64) * libm::log10(x) - libm::log10(s as f64 - 1.0) + 0.5
}

/// `sum_{k>=1} R_k / k^n`: explicit ascending head below `k0`, then the
/// exchanged-order tail `sum_i (-1)^i 2^{-m} sum_{k>=k0} 1/(k^n (k+i+1/2)^m)`
/// under acceleration.
fn rk_sum(cache: &mut SpecialCache, m: u32, n: u32, k0: u64, trace: &mut Trace) -> BigReal {
    let ctx = *cache.ctx();
    let tol = ctx.series_tol();
    let table = rk_table(cache, m, k0 - 1);
    let mut head = BigReal::zero(&ctx);
    for k in 1..k0 {
        head = head.add(&table[k as usize].mul_rat(&recip_pow_rat(k, n)));
    }
    let mass = libm::pow(2.0, -(m as f64)) * hurwitz_tail_f64(n + m, k0 as f64);
    let mass = mass.max(1e-30);
    let terms = accel::terms_needed(mass, tol);
    let tails = HalfShiftTails::build(cache, n, m, k0, terms + 1);
    let scale = ExactRational::new(BigInt::one(), BigInt::one() << m);
    let tail = accel::alternating_sum_n(|i| tails.tail(i).mul_rat(&scale), terms, mass * 1.5);
    trace.push(("head_cutoff", k0));
    trace.push(("tail_accel_terms", terms));
    head.add(&tail)
}

/// `sum_{k>=1} s_k / k^n` (positive series), same head/tail split with
/// integer shifts.
fn sk_pos_sum(cache: &mut SpecialCache, m: u32, n: u32, k0: u64, trace: &mut Trace) -> BigReal {
    let ctx = *cache.ctx();
    let tol = ctx.series_tol();
    let table = sk_table(cache, m, k0 - 1);
    let mut head = BigReal::zero(&ctx);
    for k in 1..k0 {
        head = head.add(&table[k as usize].mul_rat(&recip_pow_rat(k, n)));
    }
    let mass = hurwitz_tail_f64(n + m, k0 as f64).max(1e-30);
    let terms = accel::terms_needed(mass, tol);
    let tails = IntShiftTails::build(cache, n, m, k0, terms + 1);
    let tail = accel::alternating_sum_n(|i| tails.tail(&ctx, i), terms, mass * 1.5);
    trace.push(("head_cutoff", k0));
    trace.push(("tail_accel_terms", terms));
    head.add(&tail)
}

/// `sum_{k>=1} (-1)^k s_k / k^n = -sum_{t>=0} (-1)^t s_{t+1}/(t+1)^n`,
/// accelerated directly (the terms are moments of a positive measure).
fn sk_alt_sum(cache: &mut SpecialCache, m: u32, n: u32, trace: &mut Trace) -> BigReal {
    let ctx = *cache.ctx();
    let tol = ctx.series_tol();
    let terms = accel::terms_needed(1.0, tol);
    let table = sk_table(cache, m, terms + 2);
    trace.push(("accel_terms", terms));
    accel::alternating_sum_n(
        |t| table[t as usize + 1].mul_rat(&recip_pow_rat(t + 1, n)),
        terms,
        1.0,
    )
    .neg()
}

/// `sum_{k>=1} (-1)^k zeta(m;k) / k^n` for `m >= 2`, accelerated directly.
fn hz_alt_sum(cache: &mut SpecialCache, m: u32, n: u32, trace: &mut Trace) -> BigReal {
    let ctx = *cache.ctx();
    let tol = ctx.series_tol();
    let mass = hurwitz_tail_f64(m, 1.0).max(1.0) + 1.0;
    let terms = accel::terms_needed(mass, tol);
    let table = hurwitz_partial_table(cache, m, terms + 2);
    trace.push(("accel_terms", terms));
    accel::alternating_sum_n(
        |t| table[t as usize + 1].mul_rat(&recip_pow_rat(t + 1, n)),
        terms,
        mass,
    )
    .neg()
}

/// `sum_{k>=1} zeta(m;k) / k^n` for `m >= 2`, `n >= 2`: explicit head plus
/// the asymptotic-expansion tail (pure `zeta(h; K)` pieces).
fn hz_pos_sum(cache: &mut SpecialCache, m: u32, n: u32, trace: &mut Trace) -> Result<BigReal> {
    let ctx = *cache.ctx();
    let digits = ctx.target_digits() as f64;
    let k0 = (libm::ceil(0.5 * digits) as u64 + 10).max(DEFAULT_HEAD);
    let table = hurwitz_partial_table(cache, m, k0 - 1);
    let mut head = BigReal::zero(&ctx);
    for k in 1..k0 {
        head = head.add(&table[k as usize].mul_rat(&recip_pow_rat(k, n)));
    }
    let tail = hurwitz_asym_tail(cache, m, n, k0)?;
    trace.push(("head_cutoff", k0));
    Ok(head.add(&tail))
}

/// Weighted Hurwitz tail `coef * zeta(p; k0)` evaluated at a context deep
/// enough that the coefficient cannot amplify quantization error: large
/// asymptotic coefficients meet correspondingly small tail values, and the
/// product must keep its relative accuracy.
fn scaled_hurwitz_tail(
    cache: &mut SpecialCache,
    p: u32,
    k0: u64,
    coef: &ExactRational,
) -> BigReal {
    let ctx = *cache.ctx();
    let coef_log = arith::rat_log10_abs(coef);
    let extra = if coef_log > 0.0 {
        libm::ceil(coef_log) as u32 + 2
    } else {
        0
    };
    let deep = ctx.padded(extra);
    let k0_real = BigReal::from_integer(k0 as i64, &deep);
    let mut out = special::hurwitz_em(p, &k0_real, &deep, &mut cache.bern).mul_rat(coef);
    // the deep evaluation's own error, scaled by the coefficient, expressed
    // in log space because the unscaled error may underflow an f64
    let err_log = coef_log - (deep.target_digits() as f64 + 4.0);
    if err_log > -320.0 {
        out.add_err(libm::pow(10.0, err_log));
    }
    out
}

/// `sum_{k>=K} zeta(m;k)/k^n` by substituting the asymptotic expansion
/// `zeta(m;y) ~ y^{1-m}/(m-1) + y^{-m}/2 + sum_i B_{2i} (m)_{2i-1}/(2i)!
/// y^{-m-2i+1}` and summing the resulting pure powers.
fn hurwitz_asym_tail(cache: &mut SpecialCache, m: u32, n: u32, k0: u64) -> Result<BigReal> {
    let ctx = *cache.ctx();
    let k0f = k0 as f64;
    let mut acc = BigReal::zero(&ctx);

    let lead = ExactRational::new(BigInt::one(), BigInt::from(m as u64 - 1));
    acc = acc.add(&scaled_hurwitz_tail(cache, n + m - 1, k0, &lead));
    acc = acc.add(&scaled_hurwitz_tail(cache, n + m, k0, &arith::rat(1, 2)));

    let mut rising = ExactRational::from_integer(BigInt::from(m)); // (m)_1
    let mut fact = ExactRational::new(BigInt::one(), BigInt::from(2)); // 1/(2i)! at i=1
    let mut prev_mag_log = f64::INFINITY;
    let tol_log = ctx.series_tol_log10();
    let mut i = 1u32;
    loop {
        let coef = cache.bernoulli(2 * i) * &rising * &fact;
        let p = m + 2 * i - 1;
        // pointwise error at k >= k0 sums to |coef| * zeta(n+p; k0)
        let mag_log = arith::rat_log10_abs(&coef) + hurwitz_tail_log10(n + p, k0f);
        if mag_log < tol_log {
            let mut out = acc;
            out.add_err(2.0 * libm::pow(10.0, mag_log.max(-320.0)));
            return Ok(out);
        }
        if mag_log >= prev_mag_log {
            return Err(Error::Truncation(
                "asymptotic tail cannot reach tolerance; increase the head cutoff".into(),
            ));
        }
        prev_mag_log = mag_log;
        let term = scaled_hurwitz_tail(cache, n + p, k0, &coef);
        acc = acc.add(&term);
        rising *= ExactRational::from_integer(BigInt::from(
            (m as u64 + 2 * i as u64 - 1) * (m as u64 + 2 * i as u64),
        ));
        fact *= ExactRational::new(
            BigInt::one(),
            BigInt::from((2 * i as u64 + 1) * (2 * i as u64 + 2)),
        );
        i += 1;
    }
}

/// `sum_{j>=1} zeta(n; j+1)/j` for `n >= 2`: the inner-weight-1 untwisted
/// case after exchanging the roles of the indices.
fn hz_shift_over_j(cache: &mut SpecialCache, n: u32, trace: &mut Trace) -> Result<BigReal> {
    let ctx = *cache.ctx();
    let tol = ctx.series_tol();
    let digits = ctx.target_digits() as f64;
    let j0 = (libm::ceil(0.5 * digits) as u64 + 10).max(DEFAULT_HEAD);
    let table = hurwitz_partial_table(cache, n, j0);
    let mut head = BigReal::zero(&ctx);
    for j in 1..j0 {
        head = head.add(&table[j as usize + 1].div_uint(j));
    }
    trace.push(("head_cutoff", j0));

    // tail: sum_p gamma_p(n) * sum_{j>=J} (j+1)^{-p}/j, where
    // sum_{j>=J} (j+1)^{-p}/j = 1/J - sum_{h=2}^{p} zeta(h; J+1).
    let mut gammas: Vec<(u32, ExactRational)> = Vec::new();
    gammas.push((
        n - 1,
        ExactRational::new(BigInt::one(), BigInt::from(n as u64 - 1)),
    ));
    gammas.push((n, arith::rat(1, 2)));
    let mut rising = ExactRational::from_integer(BigInt::from(n));
    let mut fact = ExactRational::new(BigInt::one(), BigInt::from(2));
    let j0f = j0 as f64;
    let mut prev_mag_log = f64::INFINITY;
    let tol_log = ctx.series_tol_log10();
    let mut i = 1u32;
    loop {
        let coef = cache.bernoulli(2 * i) * &rising * &fact;
        let p = n + 2 * i - 1;
        let mag_log = arith::rat_log10_abs(&coef) + hurwitz_tail_log10(p + 1, j0f);
        if mag_log < tol_log {
            break;
        }
        if mag_log >= prev_mag_log {
            return Err(Error::Truncation(
                "asymptotic tail cannot reach tolerance; increase the head cutoff".into(),
            ));
        }
        prev_mag_log = mag_log;
        gammas.push((p, coef));
        rising *= ExactRational::from_integer(BigInt::from(
            (n as u64 + 2 * i as u64 - 1) * (n as u64 + 2 * i as u64),
        ));
        fact *= ExactRational::new(
            BigInt::one(),
            BigInt::from((2 * i as u64 + 1) * (2 * i as u64 + 2)),
        );
        i += 1;
    }
    let mut gamma_total = ExactRational::from_integer(BigInt::from(0));
    for (_, g) in &gammas {
        gamma_total += g.clone();
    }
    let mut tail = BigReal::from_rational(
        &(gamma_total * ExactRational::new(BigInt::one(), BigInt::from(j0))),
        &ctx,
    );
    let p_max = gammas.iter().map(|(p, _)| *p).max().unwrap_or(2);
    for h in 2..=p_max {
        let mut suffix = ExactRational::from_integer(BigInt::from(0));
        for (p, g) in &gammas {
            if *p >= h {
                suffix += g.clone();
            }
        }
        if suffix.numer().bits() == 0 {
            continue;
        }
        tail = tail.sub(&scaled_hurwitz_tail(cache, h, j0 + 1, &suffix));
    }
    let mut out = head.add(&tail);
    out.add_err(2.0 * tol);
    Ok(out)
}

// ---------------------------------------------------------------------------
// public operations
// ---------------------------------------------------------------------------

/// `S(m) = sum_{k>=1} sum_{j=0}^{k-1} (-1)^{j+k+1} / ((2j+1)^m k)` for odd
/// `m >= 1`, evaluated through the decomposition
/// `S = beta(m) log 2 + sum_{k>=1} R_k / k` with
/// `R_k = sum_{i>=0} (-1)^i / (2(k+i)+1)^m > 0`.
pub fn sum_s(m: u32, ctx: &PrecisionContext) -> Result<BigReal> {
    sum_s_traced(m, ctx).map(|(v, _)| v)
}

/// [`sum_s`] plus truncation metadata.
pub fn sum_s_traced(m: u32, ctx: &PrecisionContext) -> Result<(BigReal, Trace)> {
    if m == 0 || m % 2 == 0 {
        return Err(Error::Domain(alloc::format!(
            "S(m) requires odd positive m, got {m}"
        )));
    }
    let mut cache = SpecialCache::new(ctx.padded(PAD_DIGITS));
    let mut trace = Trace::new();
    let v = sum_s_inner(&mut cache, m, DEFAULT_HEAD, &mut trace)?;
    Ok((v, trace))
}

pub(crate) fn sum_s_inner(
    cache: &mut SpecialCache,
    m: u32,
    k0: u64,
    trace: &mut Trace,
) -> Result<BigReal> {
    let beta_m = cache.beta(m)?;
    let log2 = cache.log2();
    let rest = rk_sum(cache, m, 1, k0, trace);
    Ok(beta_m.mul(&log2).add(&rest))
}

/// `sum_{0<=j<k} (-1)^{j+k} / ((2j+1)^m k^n)`, the real combination behind
/// the fourth-root twist identity. Note `j` starts at zero here.
pub fn sum_colored(n: u32, m: u32, ctx: &PrecisionContext) -> Result<BigReal> {
    sum_colored_traced(n, m, ctx).map(|(v, _)| v)
}

/// [`sum_colored`] plus truncation metadata.
pub fn sum_colored_traced(n: u32, m: u32, ctx: &PrecisionContext) -> Result<(BigReal, Trace)> {
    if n == 0 || m == 0 {
        return Err(Error::Domain("weights must be positive".into()));
    }
    let mut cache = SpecialCache::new(ctx.padded(PAD_DIGITS));
    let mut trace = Trace::new();
    let v = sum_colored_inner(&mut cache, n, m, DEFAULT_HEAD, &mut trace)?;
    Ok((v, trace))
}

pub(crate) fn sum_colored_inner(
    cache: &mut SpecialCache,
    n: u32,
    m: u32,
    k0: u64,
    trace: &mut Trace,
) -> Result<BigReal> {
    // inner partial sum C_k = beta(m) - (-1)^k R_k, so the value is
    // -beta(m) eta(n) - sum_k R_k / k^n.
    let beta_m = cache.beta(m)?;
    let eta_n = cache.eta(n)?;
    let rest = rk_sum(cache, m, n, k0, trace);
    Ok(beta_m.mul(&eta_n).neg().sub(&rest))
}

/// `Li_{n,m}(rho, sigma) = sum_{0<j<k} sigma^j rho^k / (j^m k^n)` for
/// twists in `{+1, -1}`.
pub fn sum_li_pm(spec: &SumSpec, ctx: &PrecisionContext) -> Result<BigReal> {
    sum_li_pm_traced(spec, ctx).map(|(v, _)| v)
}

/// [`sum_li_pm`] plus truncation metadata.
pub fn sum_li_pm_traced(spec: &SumSpec, ctx: &PrecisionContext) -> Result<(BigReal, Trace)> {
    if !spec.outer_twist.is_real() || !spec.inner_twist.is_real() {
        return Err(Error::Domain(
            "sum_li_pm expects twists in {1, -1}; use sum_li_quartic for {i, -i}".into(),
        ));
    }
    SumSpec::new(
        spec.outer_weight,
        spec.inner_weight,
        spec.outer_twist,
        spec.inner_twist,
    )?;
    let mut cache = SpecialCache::new(ctx.padded(PAD_DIGITS));
    let mut trace = Trace::new();
    let v = sum_li_pm_inner(&mut cache, spec, &mut trace)?;
    Ok((v, trace))
}

pub(crate) fn sum_li_pm_inner(
    cache: &mut SpecialCache,
    spec: &SumSpec,
    trace: &mut Trace,
) -> Result<BigReal> {
    let n = spec.outer_weight;
    let m = spec.inner_weight;
    let rho_neg = spec.outer_twist == Twist::MinusOne;
    let sigma_neg = spec.inner_twist == Twist::MinusOne;

    if !sigma_neg && m == 1 {
        // Inner partial sums are harmonic numbers; exchange the summation
        // roles instead: sum_j (1/j) sum_{k>j} rho^k / k^n.
        return if rho_neg {
            // = sum_{t>=0} (-1)^t s_{t+2}(n)/(t+1), accelerated
            let ctx = *cache.ctx();
            let terms = accel::terms_needed(1.0, ctx.series_tol());
            let table = sk_table(cache, n, terms + 3);
            trace.push(("accel_terms", terms));
            Ok(accel::alternating_sum_n(
                |t| table[t as usize + 2].div_uint(t + 1),
                terms,
                1.0,
            ))
        } else {
            hz_shift_over_j(cache, n, trace)
        };
    }

    // Limit-plus-remainder split:
    // Li = lambda Li_n(rho) - sum_k rho^k rem_k / k^n.
    let lambda = special::li_unit_real(cache, m, sigma_neg)?;
    let outer_unit = special::li_unit_real(cache, n, rho_neg)?;
    let main = lambda.mul(&outer_unit);

    let series = if sigma_neg {
        if rho_neg {
            sk_pos_sum(cache, m, n, DEFAULT_HEAD, trace)
        } else {
            sk_alt_sum(cache, m, n, trace)
        }
    } else if rho_neg {
        hz_alt_sum(cache, m, n, trace)
    } else {
        hz_pos_sum(cache, m, n, trace)?
    };
    Ok(main.sub(&series))
}

/// `Li_{n,m}(rho, sigma)` for quartic twists `rho, sigma in {i, -i}`.
pub fn sum_li_quartic(spec: &SumSpec, ctx: &PrecisionContext) -> Result<BigComplex> {
    sum_li_quartic_traced(spec, ctx).map(|(v, _)| v)
}

/// [`sum_li_quartic`] plus truncation metadata.
pub fn sum_li_quartic_traced(
    spec: &SumSpec,
    ctx: &PrecisionContext,
) -> Result<(BigComplex, Trace)> {
    if spec.outer_twist.is_real() || spec.inner_twist.is_real() {
        return Err(Error::Domain(
            "sum_li_quartic expects twists in {i, -i}".into(),
        ));
    }
    SumSpec::new(
        spec.outer_weight,
        spec.inner_weight,
        spec.outer_twist,
        spec.inner_twist,
    )?;
    let mut cache = SpecialCache::new(ctx.padded(PAD_DIGITS));
    let mut trace = Trace::new();
    let v = sum_li_quartic_inner(&mut cache, spec, &mut trace)?;
    Ok((v, trace))
}

pub(crate) fn sum_li_quartic_inner(
    cache: &mut SpecialCache,
    spec: &SumSpec,
    trace: &mut Trace,
) -> Result<BigComplex> {
    let ctx = *cache.ctx();
    let n = spec.outer_weight;
    let m = spec.inner_weight;
    let rho_pos = spec.outer_twist == Twist::I;
    let sigma_pos = spec.inner_twist == Twist::I;

    let lambda = special::li_unit_quartic(cache, m, sigma_pos)?;
    let outer_unit = special::li_unit_quartic(cache, n, rho_pos)?;
    let main = lambda.mul(&outer_unit);

    // rem_k = sigma^k W(k); the remaining series runs over tau = rho*sigma.
    let tau_is_minus_one = rho_pos == sigma_pos; // i*i = (-i)(-i) = -1
    let series = if tau_is_minus_one {
        // sum_k (-1)^k W(k)/k^n = -sum_t (-1)^t W(t+1)/(t+1)^n
        let tol = ctx.series_tol();
        let terms = accel::terms_needed(1.0, tol);
        let table = w_table(cache, m, sigma_pos, terms + 2);
        trace.push(("accel_terms", terms));
        let re = accel::alternating_sum_n(
            |t| table[t as usize + 1].re.mul_rat(&recip_pow_rat(t + 1, n)),
            terms,
            1.0,
        )
        .neg();
        let im = accel::alternating_sum_n(
            |t| table[t as usize + 1].im.mul_rat(&recip_pow_rat(t + 1, n)),
            terms,
            1.0,
        )
        .neg();
        BigComplex::new(re, im)
    } else {
        // tau = +1: positive-pair series; head below k0, then exchanged
        // tails with even/odd integer shifts under acceleration, using
        // Re W(k) = sum_t (-1)^t (k+2t)^{-m} and
        // Im W(k) = +- sum_t (-1)^t (k+2t+1)^{-m}.
        let k0 = DEFAULT_HEAD;
        let tol = ctx.series_tol();
        let table = w_table(cache, m, sigma_pos, k0 - 1);
        let mut head = BigComplex::zero(&ctx);
        for k in 1..k0 {
            head = head.add(&table[k as usize].mul_rat(&recip_pow_rat(k, n)));
        }
        let mass = hurwitz_tail_f64(n + m, k0 as f64).max(1e-30);
        let terms = accel::terms_needed(mass, tol);
        let tails = IntShiftTails::build(cache, n, m, k0, 2 * terms + 2);
        trace.push(("head_cutoff", k0));
        trace.push(("tail_accel_terms", terms));
        let re_tail =
            accel::alternating_sum_n(|t| tails.tail(&ctx, 2 * t), terms, mass * 1.5);
        let im_tail =
            accel::alternating_sum_n(|t| tails.tail(&ctx, 2 * t + 1), terms, mass * 1.5);
        let im_tail = if sigma_pos { im_tail } else { im_tail.neg() };
        head.add(&BigComplex::new(re_tail, im_tail))
    };
    Ok(main.sub(&series))
}
