//! Complex values over [`BigReal`], enough for fourth-root-of-unity twists.

use crate::arith::ExactRational;
use crate::prec::PrecisionContext;
use crate::real::BigReal;

/// Arbitrary-precision complex number; the error bound discipline of
/// [`BigReal`] applies componentwise.
#[derive(Clone, Debug)]
pub struct BigComplex {
    pub re: BigReal,
    pub im: BigReal,
}

impl BigComplex {
    pub fn new(re: BigReal, im: BigReal) -> Self {
        Self { re, im }
    }

    pub fn zero(ctx: &PrecisionContext) -> Self {
        Self {
            re: BigReal::zero(ctx),
            im: BigReal::zero(ctx),
        }
    }

    pub fn from_real(re: BigReal, ctx: &PrecisionContext) -> Self {
        Self {
            re,
            im: BigReal::zero(ctx),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            re: self.re.add(&other.re),
            im: self.im.add(&other.im),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            re: self.re.sub(&other.re),
            im: self.im.sub(&other.im),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let re = self.re.mul(&other.re).sub(&self.im.mul(&other.im));
        let im = self.re.mul(&other.im).add(&self.im.mul(&other.re));
        Self { re, im }
    }

    pub fn mul_real(&self, other: &BigReal) -> Self {
        Self {
            re: self.re.mul(other),
            im: self.im.mul(other),
        }
    }

    pub fn mul_rat(&self, r: &ExactRational) -> Self {
        Self {
            re: self.re.mul_rat(r),
            im: self.im.mul_rat(r),
        }
    }

    pub fn div_uint(&self, k: u64) -> Self {
        Self {
            re: self.re.div_uint(k),
            im: self.im.div_uint(k),
        }
    }

    /// Exact multiplication by `i` or `-i`.
    pub fn mul_i(&self, positive: bool) -> Self {
        if positive {
            Self {
                re: self.im.neg(),
                im: self.re.clone(),
            }
        } else {
            Self {
                re: self.im.clone(),
                im: self.re.neg(),
            }
        }
    }

    pub fn pow_u32(&self, e: u32, ctx: &PrecisionContext) -> Self {
        let mut acc = Self {
            re: BigReal::one(ctx),
            im: BigReal::zero(ctx),
        };
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Largest componentwise error bound.
    pub fn err_bound(&self) -> f64 {
        if self.re.err_bound() > self.im.err_bound() {
            self.re.err_bound()
        } else {
            self.im.err_bound()
        }
    }
}
