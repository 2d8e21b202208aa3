//! Fixed-point arbitrary-precision reals with a conservative error bound.
//!
//! A [`BigReal`] stores `mantissa * 2^(-frac_bits)` together with `err`, an
//! absolute bound on the distance between the stored value and the exact
//! quantity it stands for. Arithmetic aligns operands to the larger
//! `frac_bits`, rounds to nearest, and charges at most one ulp per rounding
//! step into the propagated bound. The bound is a scalar estimate, not
//! interval arithmetic; the verification suites cross-check results computed
//! by independent methods, which is what ultimately backs it.

use alloc::string::{String, ToString};
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::ExactRational;
use crate::prec::PrecisionContext;

/// `2^e` as an `f64`, saturating at the representable range.
pub(crate) fn pow2(e: i64) -> f64 {
    if e < -1074 {
        0.0
    } else if e > 1023 {
        f64::INFINITY
    } else if e >= -1022 {
        f64::from_bits(((e + 1023) as u64) << 52)
    } else {
        // subnormal range
        f64::from_bits(1u64 << (e + 1074) as u32)
    }
}

/// Rounded division `a / b` for `b > 0`, ties away from zero.
pub(crate) fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    debug_assert!(b.is_positive());
    let (q, r) = a.div_rem(b);
    let two_r_abs: BigInt = r.abs() << 1;
    match two_r_abs.cmp(b) {
        Ordering::Less => q,
        _ => {
            if a.is_negative() {
                q - 1
            } else {
                q + 1
            }
        }
    }
}

/// Rounded right shift, ties away from zero.
pub(crate) fn shr_round(a: &BigInt, bits: u32) -> BigInt {
    if bits == 0 {
        return a.clone();
    }
    let d = BigInt::from(1) << bits;
    div_round(a, &d)
}

/// Rounded division of a nonnegative `a` by `b > 0` with ties to even; used
/// only when printing decimals.
fn div_round_half_even(a: &BigInt, b: &BigInt) -> BigInt {
    debug_assert!(!a.is_negative() && b.is_positive());
    let (q, r) = a.div_rem(b);
    let two_r: BigInt = r << 1;
    match two_r.cmp(b) {
        Ordering::Less => q,
        Ordering::Greater => q + 1,
        Ordering::Equal => {
            if q.is_odd() {
                q + 1
            } else {
                q
            }
        }
    }
}

/// Arbitrary-precision real: `mant * 2^(-frac_bits)` plus an absolute error
/// bound `err`.
#[derive(Clone, Debug)]
pub struct BigReal {
    mant: BigInt,
    frac_bits: u32,
    err: f64,
}

impl BigReal {
    pub fn zero(ctx: &PrecisionContext) -> Self {
        Self {
            mant: BigInt::zero(),
            frac_bits: ctx.working_bits(),
            err: 0.0,
        }
    }

    pub fn one(ctx: &PrecisionContext) -> Self {
        Self::from_integer(1, ctx)
    }

    pub fn from_integer(v: i64, ctx: &PrecisionContext) -> Self {
        let f = ctx.working_bits();
        Self {
            mant: BigInt::from(v) << f,
            frac_bits: f,
            err: 0.0,
        }
    }

    pub fn from_bigint(v: &BigInt, ctx: &PrecisionContext) -> Self {
        let f = ctx.working_bits();
        Self {
            mant: v.clone() << f,
            frac_bits: f,
            err: 0.0,
        }
    }

    /// Rounds `r` to the working precision; at most one ulp of error.
    pub fn from_rational(r: &ExactRational, ctx: &PrecisionContext) -> Self {
        let f = ctx.working_bits();
        let scaled = r.numer().clone() << f;
        let mant = div_round(&scaled, r.denom());
        Self {
            mant,
            frac_bits: f,
            err: pow2(-(f as i64)),
        }
    }

    /// `1 / base^exp` at working precision (`base > 0`).
    pub fn recip_pow(base: &BigInt, exp: u32, ctx: &PrecisionContext) -> Self {
        debug_assert!(base.is_positive());
        let f = ctx.working_bits();
        let den = base.pow(exp);
        let num = BigInt::from(1) << f;
        Self {
            mant: div_round(&num, &den),
            frac_bits: f,
            err: pow2(-(f as i64)),
        }
    }

    pub fn frac_bits(&self) -> u32 {
        self.frac_bits
    }

    /// Consumes the value, returning the raw mantissa.
    pub(crate) fn into_mant(self) -> BigInt {
        self.mant
    }

    /// Rebuilds a value from a raw mantissa with zero error bound.
    pub(crate) fn from_mant(mant: BigInt, frac_bits: u32) -> Self {
        Self {
            mant,
            frac_bits,
            err: 0.0,
        }
    }

    /// Absolute error bound against the exact quantity this value stands for.
    pub fn err_bound(&self) -> f64 {
        self.err
    }

    pub(crate) fn set_err(&mut self, err: f64) {
        self.err = err;
    }

    pub(crate) fn add_err(&mut self, extra: f64) {
        self.err += extra;
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    fn ulp(&self) -> f64 {
        pow2(-(self.frac_bits as i64))
    }

    /// Double-precision approximation of the stored value. Accurate to f64
    /// precision even when the mantissa far exceeds the f64 range.
    pub fn approx(&self) -> f64 {
        let mag = self.mant.magnitude();
        let bits = mag.bits();
        if bits == 0 {
            return 0.0;
        }
        let v = if bits <= 53 {
            mag.to_u64().expect("fits") as f64 * pow2(-(self.frac_bits as i64))
        } else {
            let shift = bits - 53;
            let top = (mag >> shift).to_u64().expect("top 53 bits fit");
            top as f64 * pow2(shift as i64 - self.frac_bits as i64)
        };
        if self.mant.is_negative() {
            -v
        } else {
            v
        }
    }

    fn aligned(&self, f: u32) -> BigInt {
        debug_assert!(f >= self.frac_bits);
        self.mant.clone() << (f - self.frac_bits)
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = self.frac_bits.max(other.frac_bits);
        Self {
            mant: self.aligned(f) + other.aligned(f),
            frac_bits: f,
            err: self.err + other.err,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let f = self.frac_bits.max(other.frac_bits);
        Self {
            mant: self.aligned(f) - other.aligned(f),
            frac_bits: f,
            err: self.err + other.err,
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            mant: -self.mant.clone(),
            frac_bits: self.frac_bits,
            err: self.err,
        }
    }

    pub fn abs(&self) -> Self {
        Self {
            mant: self.mant.abs(),
            frac_bits: self.frac_bits,
            err: self.err,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = self.frac_bits.max(other.frac_bits);
        let prod = &self.mant * &other.mant;
        let down = self.frac_bits + other.frac_bits - f;
        let mant = shr_round(&prod, down);
        let a = libm::fabs(self.approx()) + self.err;
        let b = libm::fabs(other.approx()) + other.err;
        Self {
            mant,
            frac_bits: f,
            err: a * other.err + b * self.err + pow2(-(f as i64)),
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        let f = self.frac_bits.max(other.frac_bits);
        // (ma / mb) * 2^(fb - fa), rescaled to f fractional bits.
        let num = self.mant.clone() << (f + other.frac_bits - self.frac_bits);
        let mant = if other.mant.is_negative() {
            -div_round(&num, &(-other.mant.clone()))
        } else {
            div_round(&num, &other.mant)
        };
        let babs = libm::fabs(other.approx()) - other.err;
        let err = if babs <= 0.0 {
            f64::INFINITY
        } else {
            (self.err + libm::fabs(self.approx() / other.approx()) * other.err) / babs
                + pow2(-(f as i64))
        };
        Self {
            mant,
            frac_bits: f,
            err,
        }
    }

    pub fn recip(&self) -> Self {
        let f = self.frac_bits;
        let num = BigInt::from(1) << (2 * f);
        let mant = if self.mant.is_negative() {
            -div_round(&num, &(-self.mant.clone()))
        } else {
            div_round(&num, &self.mant)
        };
        let aabs = libm::fabs(self.approx()) - self.err;
        let err = if aabs <= 0.0 {
            f64::INFINITY
        } else {
            self.err / (aabs * aabs) + pow2(-(f as i64))
        };
        Self {
            mant,
            frac_bits: f,
            err,
        }
    }

    /// Multiplication by an exact machine integer.
    pub fn mul_int(&self, k: i64) -> Self {
        Self {
            mant: &self.mant * k,
            frac_bits: self.frac_bits,
            err: self.err * libm::fabs(k as f64),
        }
    }

    /// Division by an exact positive integer.
    pub fn div_uint(&self, k: u64) -> Self {
        debug_assert!(k > 0);
        let d = BigInt::from(k);
        Self {
            mant: div_round(&self.mant, &d),
            frac_bits: self.frac_bits,
            err: self.err / k as f64 + self.ulp(),
        }
    }

    /// Multiplication by an exact rational; one rounding step.
    pub fn mul_rat(&self, r: &ExactRational) -> Self {
        let num = &self.mant * r.numer();
        let (num, den) = if r.denom().is_negative() {
            (-num, -r.denom().clone())
        } else {
            (num, r.denom().clone())
        };
        let mant = div_round(&num, &den);
        let rf = libm::fabs(r.to_f64().unwrap_or(f64::INFINITY));
        Self {
            mant,
            frac_bits: self.frac_bits,
            err: self.err * rf + self.ulp(),
        }
    }

    /// `self^e` by repeated squaring.
    pub fn pow_u32(&self, e: u32) -> Self {
        if e == 0 {
            return Self {
                mant: BigInt::from(1) << self.frac_bits,
                frac_bits: self.frac_bits,
                err: 0.0,
            };
        }
        let mut base = self.clone();
        let mut acc: Option<Self> = None;
        let mut e = e;
        loop {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.mul(&base);
        }
        acc.expect("e > 0")
    }

    /// Exact scaling by `2^k`, `k >= 0`.
    pub fn mul_pow2(&self, k: u32) -> Self {
        Self {
            mant: self.mant.clone() << k,
            frac_bits: self.frac_bits,
            err: self.err * pow2(k as i64),
        }
    }

    /// Compares the stored values (error bounds are not consulted).
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        let f = self.frac_bits.max(other.frac_bits);
        self.aligned(f).cmp(&other.aligned(f))
    }

    /// `floor(-log10(|value|))`-style magnitude probe: returns `log10|value|`
    /// as an `f64`, or `f64::NEG_INFINITY` for zero.
    pub fn log10_abs(&self) -> f64 {
        let mag = self.mant.magnitude();
        let bits = mag.bits();
        if bits == 0 {
            return f64::NEG_INFINITY;
        }
        let take = bits.min(53);
        let top = (mag >> (bits - take)).to_u64().expect("fits") as f64;
        let exp = (bits - take) as i64 - self.frac_bits as i64;
        libm::log10(top) + exp as f64 * core::f64::consts::LN_2 / core::f64::consts::LN_10
    }

    /// Decimal rendering with `digits` places after the point, rounding
    /// half-to-even at the last printed digit.
    pub fn to_decimal(&self, digits: u32) -> String {
        let neg = self.mant.is_negative();
        let mag = self.mant.abs();
        let scaled = mag * BigInt::from(10u32).pow(digits);
        let den = BigInt::from(1) << self.frac_bits;
        let q = div_round_half_even(&scaled, &den);
        let s = q.to_string();
        let (int_part, frac_part) = if digits == 0 {
            (s.clone(), String::new())
        } else if s.len() > digits as usize {
            let split = s.len() - digits as usize;
            (String::from(&s[..split]), String::from(&s[split..]))
        } else {
            let mut frac = String::new();
            for _ in 0..(digits as usize - s.len()) {
                frac.push('0');
            }
            frac.push_str(&s);
            (String::from("0"), frac)
        };
        let mut out = String::new();
        if neg && !q.is_zero() {
            out.push('-');
        }
        out.push_str(&int_part);
        if digits > 0 {
            out.push('.');
            out.push_str(&frac_part);
        }
        out
    }
}
