//! Property tests for the exact-arithmetic layer and the analytic
//! invariants that hold at every parameter point.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use eulersum_core::arith::{self, binom_general, binomial, BernoulliTable, ExactRational};
use eulersum_core::identities::prop1_kernel_exact;
use eulersum_core::special::{hurwitz_zeta, zeta_int};
use eulersum_core::{BigReal, PrecisionContext};

fn small_rational() -> impl Strategy<Value = ExactRational> {
    (-40i64..=40, 1i64..=40)
        .prop_filter("nonzero", |(n, _)| *n != 0)
        .prop_map(|(n, d)| arith::rat(n, d))
}

proptest! {
    #[test]
    fn kernel_identity_is_exact(
        n in 1u32..=4,
        s in 1u32..=4,
        t in 1u32..=4,
        num in -7i64..=7,
        den in 2i64..=9,
    ) {
        prop_assume!(num != 0);
        prop_assume!(num.abs() < den); // -1 < x < 1
        let x = arith::rat(num, den);
        prop_assert!(prop1_kernel_exact(n, s, t, &x));
    }

    #[test]
    fn binom_general_matches_reflection(s in 1i64..=12, r in 0u32..=30) {
        let lhs = binom_general(-s, r);
        let mut rhs = ExactRational::from_integer(binomial((s + r as i64 - 1) as u64, r as u64));
        if r % 2 == 1 {
            rhs = -rhs;
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bernoulli_recurrence(n in 1u32..=40) {
        let mut table = BernoulliTable::new();
        let mut sum = ExactRational::zero();
        for j in 0..=n {
            sum += table.get(j) * binomial(n as u64 + 1, j as u64);
        }
        prop_assert!(sum.is_zero());
    }

    #[test]
    fn bigreal_tracks_rational_arithmetic(a in small_rational(), b in small_rational()) {
        let ctx = PrecisionContext::new(20);
        let ra = BigReal::from_rational(&a, &ctx);
        let rb = BigReal::from_rational(&b, &ctx);
        let sum = BigReal::from_rational(&(a.clone() + b.clone()), &ctx);
        let prod = BigReal::from_rational(&(a.clone() * b.clone()), &ctx);
        prop_assert!(ra.add(&rb).sub(&sum).abs().approx() < 1e-22);
        prop_assert!(ra.mul(&rb).sub(&prod).abs().approx() < 1e-20);
        if !b.is_zero() {
            let quot = BigReal::from_rational(&(a / b), &ctx);
            prop_assert!(ra.div(&rb).sub(&quot).abs().approx() < 1e-18);
        }
    }

    #[test]
    fn hurwitz_shift_identity(s in 2u32..=4, num in 1i64..=9, den in 2i64..=10) {
        prop_assume!(num < den); // 0 < x < 1
        let ctx = PrecisionContext::new(20);
        let x = BigReal::from_rational(&arith::rat(num, den), &ctx);
        let lhs = hurwitz_zeta(s, &x, &ctx).unwrap();
        let x1 = x.add(&BigReal::one(&ctx));
        let rhs = x.recip().pow_u32(s).add(&hurwitz_zeta(s, &x1, &ctx).unwrap());
        prop_assert!(lhs.sub(&rhs).abs().approx() < 1e-20);
    }

    #[test]
    fn decimal_rendering_matches_f64(a in small_rational()) {
        let ctx = PrecisionContext::new(30);
        let v = BigReal::from_rational(&a, &ctx);
        let s = v.to_decimal(12);
        let parsed: f64 = s.parse().unwrap();
        let expect = a.numer().to_string().parse::<f64>().unwrap()
            / a.denom().to_string().parse::<f64>().unwrap();
        prop_assert!((parsed - expect).abs() <= 1e-11);
    }
}

#[test]
fn err_bound_contract_on_sampled_operations() {
    // every public value satisfies err_bound <= 10^-target_digits
    for digits in [12u32, 30, 60] {
        let ctx = PrecisionContext::new(digits);
        assert!(zeta_int(3, &ctx).unwrap().err_bound() <= ctx.tol());
        assert!(zeta_int(12, &ctx).unwrap().err_bound() <= ctx.tol());
        let x = BigReal::from_rational(&arith::rat(3, 4), &ctx);
        assert!(hurwitz_zeta(2, &x, &ctx).unwrap().err_bound() <= ctx.tol());
        assert!(
            eulersum_core::special::beta_dirichlet(2, &ctx)
                .unwrap()
                .err_bound()
                <= ctx.tol()
        );
        assert!(
            eulersum_core::eulersums::sum_s(3, &ctx)
                .unwrap()
                .err_bound()
                <= ctx.tol()
        );
    }
}

#[test]
fn bernoulli_table_supports_concurrent_reads_after_warmup() {
    let mut table = BernoulliTable::new();
    table.ensure(32);
    let table = std::sync::Arc::new(table);
    let mut handles = Vec::new();
    for t in 0..4 {
        let shared = table.clone();
        handles.push(std::thread::spawn(move || {
            let mut sum = ExactRational::zero();
            for n in (0..=32u32).skip(t % 2) {
                if let Some(b) = shared.cached(n) {
                    sum += b;
                }
            }
            sum
        }));
    }
    let mut results: Vec<ExactRational> = handles.into_iter().map(|h| h.join().unwrap()).collect();
    results.sort();
    results.dedup();
    assert_eq!(results.len(), 2); // two distinct phase offsets, each consistent

    // values are freely transferable between threads
    let ctx = PrecisionContext::new(15);
    let v = BigReal::from_rational(&arith::rat(22, 7), &ctx);
    let h = std::thread::spawn(move || v.to_decimal(6));
    assert_eq!(h.join().unwrap(), "3.142857");
    let one = BigInt::one();
    assert_eq!(one, BigInt::from(1));
}
