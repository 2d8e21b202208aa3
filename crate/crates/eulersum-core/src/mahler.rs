//! Quasi-Monte Carlo estimation of the logarithmic Mahler measure of
//! `P(x, x1, y, z) = 1 + x + ((1-x1)/(1+x1)) (1+y) z` over the torus, and
//! the high-precision identity that pins its exact value.
//!
//! The integration runs in ordinary double precision: the integrand has
//! logarithmic singularities but is absolutely integrable, and two to three
//! correct digits is the honest ceiling for sampling at desk scale. The
//! exact statement `pi^3 m(P) = 24 beta(4)` is certified separately by
//! [`mahler_identity_check`] through the arbitrary-precision machinery.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::eulersums;
use crate::identities::{self, IdentityReport};
use crate::prec::PrecisionContext;
use crate::special::SpecialCache;

/// Point generator for the torus sampler.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    /// xoshiro256++ pseudo-random stream.
    PseudoRandom,
    /// Halton sequence in bases 2, 3, 5, 7 with a seeded Cranley-Patterson
    /// rotation, so the seed also randomizes the low-discrepancy points.
    LowDiscrepancy,
}

/// Which integrand to sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Integrand {
    /// `log |1 + x + ((1-x1)/(1+x1)) (1+y) z|`
    TorusPolynomial,
    /// sanity mode: the constant polynomial `2`, whose measure is `log 2`
    ConstantTwo,
    /// sanity mode: the monomial `x`, whose measure is `0`
    Monomial,
}

/// Sampling plan for [`mahler_qmc`].
#[derive(Debug, Clone, Copy)]
pub struct TorusSampleConfig {
    pub sample_count: u64,
    pub seed: u64,
    pub generator: Generator,
}

impl TorusSampleConfig {
    /// Smallest sample count for which an estimate is reportable.
    pub const MIN_SAMPLES: u64 = 10_000;

    pub fn new(sample_count: u64, seed: u64, generator: Generator) -> Result<Self> {
        if sample_count < Self::MIN_SAMPLES {
            return Err(Error::Domain(format!(
                "sample_count must be at least {}, got {sample_count}",
                Self::MIN_SAMPLES
            )));
        }
        Ok(Self {
            sample_count,
            seed,
            generator,
        })
    }
}

/// Sample mean and its standard error (`sample std dev / sqrt(n)`).
#[derive(Debug, Clone, Copy)]
pub struct MahlerEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples_used: u64,
    pub rejected: u64,
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

struct Xoshiro256pp {
    s: [u64; 4],
}

impl Xoshiro256pp {
    fn seeded(seed: u64) -> Self {
        let mut st = seed;
        Self {
            s: [
                splitmix64(&mut st),
                splitmix64(&mut st),
                splitmix64(&mut st),
                splitmix64(&mut st),
            ],
        }
    }

    fn next_u64(&mut self) -> u64 {
        let result = self.s[0]
            .wrapping_add(self.s[3])
            .rotate_left(23)
            .wrapping_add(self.s[0]);
        let t = self.s[1] << 17;
        self.s[2] ^= self.s[0];
        self.s[3] ^= self.s[1];
        self.s[1] ^= self.s[2];
        self.s[0] ^= self.s[3];
        self.s[2] ^= t;
        self.s[3] = self.s[3].rotate_left(45);
        result
    }

    fn next_unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / 9007199254740992.0)
    }
}

const HALTON_BASES: [u64; 4] = [2, 3, 5, 7];

fn radical_inverse(mut index: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut f = inv;
    let mut out = 0.0;
    while index > 0 {
        out += (index % base) as f64 * f;
        index /= base;
        f *= inv;
    }
    out
}

fn fract(x: f64) -> f64 {
    x - libm::floor(x)
}

enum PointStream {
    Pseudo(Xoshiro256pp),
    Halton { next_index: u64, shift: [f64; 4] },
}

impl PointStream {
    fn new(config: &TorusSampleConfig) -> Self {
        match config.generator {
            Generator::PseudoRandom => PointStream::Pseudo(Xoshiro256pp::seeded(config.seed)),
            Generator::LowDiscrepancy => {
                let mut st = config.seed;
                let shift = [
                    splitmix64(&mut st) as f64 / 18446744073709551616.0,
                    splitmix64(&mut st) as f64 / 18446744073709551616.0,
                    splitmix64(&mut st) as f64 / 18446744073709551616.0,
                    splitmix64(&mut st) as f64 / 18446744073709551616.0,
                ];
                PointStream::Halton {
                    next_index: 1,
                    shift,
                }
            }
        }
    }

    fn next_point(&mut self) -> [f64; 4] {
        match self {
            PointStream::Pseudo(rng) => [
                rng.next_unit(),
                rng.next_unit(),
                rng.next_unit(),
                rng.next_unit(),
            ],
            PointStream::Halton { next_index, shift } => {
                let i = *next_index;
                *next_index += 1;
                [
                    fract(radical_inverse(i, HALTON_BASES[0]) + shift[0]),
                    fract(radical_inverse(i, HALTON_BASES[1]) + shift[1]),
                    fract(radical_inverse(i, HALTON_BASES[2]) + shift[2]),
                    fract(radical_inverse(i, HALTON_BASES[3]) + shift[3]),
                ]
            }
        }
    }
}

fn unit_circle(theta01: f64) -> Complex64 {
    let angle = 2.0 * core::f64::consts::PI * theta01;
    Complex64::new(libm::cos(angle), libm::sin(angle))
}

/// Values below this norm are treated as underflowing the working range and
/// the sample is rejected-and-resampled.
const UNDERFLOW_NORM_SQ: f64 = 1e-280;

/// Evaluates `log |P|` at a torus point, or `None` when a denominator or
/// the polynomial value underflows.
fn sample_log_abs(integrand: Integrand, point: &[f64; 4]) -> Option<f64> {
    match integrand {
        Integrand::ConstantTwo => Some(core::f64::consts::LN_2),
        Integrand::Monomial => {
            // log |x| on the unit circle is identically zero
            let _ = point;
            Some(0.0)
        }
        Integrand::TorusPolynomial => {
            let x = unit_circle(point[0]);
            let x1 = unit_circle(point[1]);
            let y = unit_circle(point[2]);
            let z = unit_circle(point[3]);
            let denom = Complex64::new(1.0, 0.0) + x1;
            if denom.norm_sqr() < UNDERFLOW_NORM_SQ {
                return None;
            }
            let ratio = (Complex64::new(1.0, 0.0) - x1) / denom;
            let w = Complex64::new(1.0, 0.0) + x + ratio * (Complex64::new(1.0, 0.0) + y) * z;
            let n2 = w.norm_sqr();
            if n2 < UNDERFLOW_NORM_SQ {
                return None;
            }
            Some(0.5 * libm::log(n2))
        }
    }
}

#[derive(Clone, Copy, Default)]
struct ChunkStats {
    n: u64,
    mean: f64,
    m2: f64, // sum of squared deviations from the chunk mean
}

impl ChunkStats {
    fn push(&mut self, v: f64) {
        self.n += 1;
        let delta = v - self.mean;
        self.mean += delta / self.n as f64;
        self.m2 += delta * (v - self.mean);
    }

    /// Chan's pairwise combination of two partial statistics.
    fn merge(a: ChunkStats, b: ChunkStats) -> ChunkStats {
        if a.n == 0 {
            return b;
        }
        if b.n == 0 {
            return a;
        }
        let n = a.n + b.n;
        let delta = b.mean - a.mean;
        let mean = a.mean + delta * (b.n as f64 / n as f64);
        let m2 = a.m2 + b.m2 + delta * delta * (a.n as f64 * b.n as f64 / n as f64);
        ChunkStats { n, mean, m2 }
    }
}

/// Reduces chunk statistics pairwise in deterministic order.
fn pairwise_reduce(mut stats: Vec<ChunkStats>) -> ChunkStats {
    if stats.is_empty() {
        return ChunkStats::default();
    }
    while stats.len() > 1 {
        let mut next = Vec::with_capacity(stats.len().div_ceil(2));
        let mut it = stats.chunks(2);
        for pair in &mut it {
            next.push(if pair.len() == 2 {
                ChunkStats::merge(pair[0], pair[1])
            } else {
                pair[0]
            });
        }
        stats = next;
    }
    stats[0]
}

const CHUNK: u64 = 1 << 16;

/// Estimates the logarithmic Mahler measure of the four-variable torus
/// polynomial by sampling `log |P|` at `config.sample_count` points.
///
/// Samples where `|1 + x1|` (or `|P|` itself) underflows the working range
/// are rejected and resampled, with the rejection count reported; more than
/// 0.1% rejections indicates a sampler defect and is an error.
pub fn mahler_qmc(config: &TorusSampleConfig) -> Result<MahlerEstimate> {
    mahler_qmc_mode(config, Integrand::TorusPolynomial)
}

/// [`mahler_qmc`] with a selectable integrand (sanity modes included).
pub fn mahler_qmc_mode(
    config: &TorusSampleConfig,
    integrand: Integrand,
) -> Result<MahlerEstimate> {
    TorusSampleConfig::new(config.sample_count, config.seed, config.generator)?;
    let mut stream = PointStream::new(config);
    let mut chunks: Vec<ChunkStats> = Vec::new();
    let mut current = ChunkStats::default();
    let mut accepted = 0u64;
    let mut rejected = 0u64;
    while accepted < config.sample_count {
        let point = stream.next_point();
        match sample_log_abs(integrand, &point) {
            Some(v) => {
                current.push(v);
                accepted += 1;
                if current.n == CHUNK {
                    chunks.push(current);
                    current = ChunkStats::default();
                }
            }
            None => rejected += 1,
        }
    }
    if current.n > 0 {
        chunks.push(current);
    }
    if rejected * 1000 > config.sample_count {
        return Err(Error::Domain(format!(
            "sampler defect: {rejected} of {} samples rejected (> 0.1%)",
            config.sample_count
        )));
    }
    let total = pairwise_reduce(chunks);
    let variance = if total.n > 1 {
        total.m2 / (total.n as f64 - 1.0)
    } else {
        0.0
    };
    Ok(MahlerEstimate {
        mean: total.mean,
        std_error: libm::sqrt(variance / total.n as f64),
        samples_used: total.n,
        rejected,
    })
}

/// The exact-value identity behind the estimator:
/// `2 pi^2 beta(2) + 8 S(3) = 24 beta(4)`, verified at the context's digit
/// count. This is the reduction of `S(3)` to beta values, rearranged.
pub fn mahler_identity_check(ctx: &PrecisionContext) -> Result<IdentityReport> {
    let mut cache = SpecialCache::new(ctx.padded(10));
    let mut trace = eulersums::Trace::new();
    let s3 = eulersums::sum_s_inner(&mut cache, 3, 32, &mut trace)?;
    let pi2 = cache.pi().pow_u32(2);
    let lhs = pi2.mul_int(2).mul(&cache.beta(2)?).add(&s3.mul_int(8));
    let rhs = cache.beta(4)?.mul_int(24);
    let trace: Vec<(String, u64)> = trace
        .into_iter()
        .map(|(k, v)| (String::from(k), v))
        .collect();
    Ok(identities::make_report(
        "mahler_identity",
        Vec::new(),
        lhs,
        rhs,
        trace,
        ctx,
    ))
}

/// Closed-form target of the estimator, `24 beta(4) / pi^3`, in double
/// precision.
pub fn mahler_target(ctx: &PrecisionContext) -> Result<f64> {
    let mut cache = SpecialCache::new(*ctx);
    let pi3 = cache.pi().pow_u32(3);
    let v = cache.beta(4)?.mul_int(24).div(&pi3);
    Ok(v.approx())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(n: u64, seed: u64) -> TorusSampleConfig {
        TorusSampleConfig::new(n, seed, Generator::LowDiscrepancy).unwrap()
    }

    #[test]
    fn constant_sanity_mode() {
        let est = mahler_qmc_mode(&config(10_000, 1), Integrand::ConstantTwo).unwrap();
        assert!((est.mean - core::f64::consts::LN_2).abs() <= 3.0 * est.std_error.max(1e-15));
        assert_eq!(est.rejected, 0);
    }

    #[test]
    fn monomial_sanity_mode() {
        let est = mahler_qmc_mode(&config(10_000, 1), Integrand::Monomial).unwrap();
        assert!(est.mean.abs() <= 3.0 * est.std_error.max(1e-15));
    }

    #[test]
    fn estimates_are_reproducible() {
        let a = mahler_qmc(&config(50_000, 42)).unwrap();
        let b = mahler_qmc(&config(50_000, 42)).unwrap();
        assert_eq!(a.mean.to_bits(), b.mean.to_bits());
        assert_eq!(a.std_error.to_bits(), b.std_error.to_bits());
        // a different seed gives a different randomization
        let c = mahler_qmc(&config(50_000, 43)).unwrap();
        assert_ne!(a.mean.to_bits(), c.mean.to_bits());
    }

    #[test]
    fn qmc_tracks_the_closed_form() {
        let ctx = PrecisionContext::new(20);
        let target = mahler_target(&ctx).unwrap();
        assert!((target - 0.76548).abs() < 1e-4, "target {target}");
        let est = mahler_qmc(&config(200_000, 7)).unwrap();
        let err = (est.mean - target).abs();
        assert!(
            err <= (3.0 * est.std_error).max(2e-2),
            "mean {} vs target {target} (std_error {})",
            est.mean,
            est.std_error
        );
    }

    #[test]
    fn pseudo_random_also_converges() {
        let ctx = PrecisionContext::new(20);
        let target = mahler_target(&ctx).unwrap();
        let cfg = TorusSampleConfig::new(200_000, 9, Generator::PseudoRandom).unwrap();
        let est = mahler_qmc(&cfg).unwrap();
        assert!((est.mean - target).abs() <= (4.0 * est.std_error).max(2e-2));
    }

    #[test]
    fn rejects_small_sample_counts() {
        assert!(TorusSampleConfig::new(100, 1, Generator::LowDiscrepancy).is_err());
    }

    #[test]
    fn identity_check_passes_at_30_digits() {
        let ctx = PrecisionContext::new(30);
        let rep = mahler_identity_check(&ctx).unwrap();
        assert!(rep.pass, "digits agreed: {}", rep.digits_agreed);
        assert!(rep.abs_diff.approx() <= 1e-25);
    }
}
