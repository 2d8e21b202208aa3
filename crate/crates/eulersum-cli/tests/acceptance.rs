//! Acceptance suite: every exit criterion, one test per criterion, each at
//! its stated tolerance. Run with `cargo test --test acceptance` (add
//! `-- --nocapture` to see the per-criterion pass lines).

use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;

use eulersum_core::arith::{self, ExactRational};
use eulersum_core::eulersums::{self, SumSpec, Twist};
use eulersum_core::identities;
use eulersum_core::mahler::{self, Generator, TorusSampleConfig};
use eulersum_core::special;
use eulersum_core::{BigReal, PrecisionContext};

fn threshold(digits: u32) -> BigReal {
    let ctx = PrecisionContext::new(digits + 10);
    BigReal::from_rational(
        &ExactRational::new(1.into(), BigInt::from(10u32).pow(digits)),
        &ctx,
    )
}

fn assert_below(diff: &BigReal, digits: u32, what: &str) {
    let t = threshold(digits);
    assert!(
        diff.cmp_value(&t) != std::cmp::Ordering::Greater,
        "{what}: |diff| = {:e} exceeds 1e-{digits}",
        diff.approx()
    );
}

#[test]
fn criterion_01_theorem_reduction_end_to_end() {
    // |sum_S(m) - thm1_rhs(m)| <= 1e-25 at 30 digits for m in {1,3,5,7,9},
    // each value within 60 s.
    let ctx = PrecisionContext::new(30);
    for m in [1u32, 3, 5, 7, 9] {
        let started = Instant::now();
        let lhs = eulersums::sum_s(m, &ctx).unwrap();
        let rhs = identities::thm1_rhs(m, &ctx).unwrap();
        let elapsed = started.elapsed();
        assert_below(&lhs.sub(&rhs).abs(), 25, &format!("m={m}"));
        assert!(
            elapsed <= Duration::from_secs(60),
            "m={m} took {elapsed:?} (> 60 s)"
        );
    }
    println!("ACCEPTANCE 1 (theorem reduction, m in {{1,3,5,7,9}} at 1e-25): PASS");
}

/// Independent acceleration oracle: the Euler transform by iterated
/// averaging of the partial sums of `sum (-1)^k/(2k+1)^2`.
fn catalan_by_euler_transform(ctx: &PrecisionContext, levels: usize) -> BigReal {
    let mut partials = Vec::with_capacity(levels + 1);
    let mut acc = BigReal::zero(ctx);
    for k in 0..=levels as u64 {
        let t = BigReal::recip_pow(&BigInt::from(2 * k + 1), 2, ctx);
        acc = if k % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
        partials.push(acc.clone());
    }
    let mut v = partials;
    while v.len() > 1 {
        let mut next = Vec::with_capacity(v.len() - 1);
        for i in 0..v.len() - 1 {
            next.push(v[i].add(&v[i + 1]).div_uint(2));
        }
        v = next;
    }
    v.pop().expect("nonempty")
}

#[test]
fn criterion_02_catalan_specialization() {
    // sum_S(1) agrees with Catalan's constant to >= 20 printed digits,
    // reference digits from an independent acceleration scheme.
    let ctx = PrecisionContext::new(30);
    let s1 = eulersums::sum_s(1, &ctx).unwrap();
    let reference = catalan_by_euler_transform(&ctx, 140);
    // the oracle itself reproduces the published leading digits
    assert!(reference
        .to_decimal(18)
        .starts_with("0.915965594177219015"));
    assert_eq!(
        s1.to_decimal(20),
        reference.to_decimal(20),
        "printed 20-digit disagreement"
    );
    assert_below(&s1.sub(&reference).abs(), 20, "S(1) vs oracle");
    println!("ACCEPTANCE 2 (S(1) = Catalan to >= 20 printed digits): PASS");
}

#[test]
fn criterion_03_closed_forms_weight_le_9() {
    // |sum_li_pm - bbb_closed| <= 1e-20 at 25 digits over the full grid of
    // m+n odd <= 9, twists in {1,-1}, divergent instantiations excluded.
    let ctx = PrecisionContext::new(25);
    let mut points = 0;
    for w in [3u32, 5, 7, 9] {
        for n in 1..w {
            let m = w - n;
            for rho in [Twist::One, Twist::MinusOne] {
                for sigma in [Twist::One, Twist::MinusOne] {
                    if n == 1 && rho == Twist::One {
                        continue;
                    }
                    let spec = SumSpec::new(n, m, rho, sigma).unwrap();
                    let lhs = eulersums::sum_li_pm(&spec, &ctx).unwrap();
                    let rhs = identities::bbb_closed(n, m, rho, sigma, &ctx).unwrap();
                    assert_below(
                        &lhs.sub(&rhs).abs(),
                        20,
                        &format!("(n,m,rho,sigma)=({n},{m},{rho:?},{sigma:?})"),
                    );
                    points += 1;
                }
            }
        }
    }
    assert_eq!(points, 72);
    println!("ACCEPTANCE 3 (closed forms on {points} weight<=9 points at 1e-20): PASS");
}

#[test]
fn criterion_04_expansion_checks() {
    // ms on s in {2,3,4} x x in {1/4,1/2,3/4}; prop1 on (s,t) in {1,2,3}^2
    // x {1/2,1/3,-1/3}; prop2 on {(2,1),(3,2),(3,1)} x {1/4,1/2}; all pass
    // with digits_agreed >= 20.
    let ctx = PrecisionContext::new(25);
    for s in [2u32, 3, 4] {
        for x in [arith::rat(1, 4), arith::rat(1, 2), arith::rat(3, 4)] {
            let rep = identities::ms_check(s, &x, &ctx).unwrap();
            assert!(rep.pass && rep.digits_agreed >= 20, "ms s={s}");
        }
    }
    for s in 1u32..=3 {
        for t in 1u32..=3 {
            for x in [arith::rat(1, 2), arith::rat(1, 3), arith::rat(-1, 3)] {
                let rep = identities::prop1_check(s, t, &x, &ctx).unwrap();
                assert!(rep.pass && rep.digits_agreed >= 20, "prop1 s={s} t={t}");
            }
        }
    }
    for (s, k) in [(2u32, 1u32), (3, 2), (3, 1)] {
        for x in [arith::rat(1, 4), arith::rat(1, 2)] {
            let rep = identities::prop2_check(s, k, &x, &ctx).unwrap();
            assert!(rep.pass && rep.digits_agreed >= 20, "prop2 s={s} k={k}");
        }
    }
    println!("ACCEPTANCE 4 (binomial-expansion checks, digits_agreed >= 20): PASS");
}

#[test]
fn criterion_05_kernel_identity_exact() {
    // zero tolerance: exact rational equality for all n,s,t in 1..=4 and
    // x in {1/2, 1/3, -1/3}.
    for n in 1..=4u32 {
        for s in 1..=4u32 {
            for t in 1..=4u32 {
                for x in [arith::rat(1, 2), arith::rat(1, 3), arith::rat(-1, 3)] {
                    assert!(
                        identities::prop1_kernel_exact(n, s, t, &x),
                        "kernel n={n} s={s} t={t} x={x}"
                    );
                }
            }
        }
    }
    println!("ACCEPTANCE 5 (partial-fraction kernel exact, zero tolerance): PASS");
}

#[test]
fn criterion_06_even_zeta_lemma() {
    // |series - closed| <= 1e-25 for h in 0..=10; at h = 0 the closed side
    // is exactly 1 at working precision.
    let ctx = PrecisionContext::new(30);
    for h in 0..=10u32 {
        let (closed, series) = identities::lemma_value(h, &ctx).unwrap();
        assert_below(&closed.sub(&series).abs(), 25, &format!("h={h}"));
        if h == 0 {
            let one = BigReal::one(&ctx);
            assert!(
                closed.sub(&one).is_zero(),
                "h=0 closed side is not exactly 1"
            );
        }
    }
    println!("ACCEPTANCE 6 (even-zeta lemma, h <= 10 at 1e-25): PASS");
}

#[test]
fn criterion_07_fourth_root_twist_combination() {
    // Li(i,i) - Li(i,-i) + Li(-i,i) - Li(-i,-i) = 2^{2-n} i colored(n,m)
    // componentwise within 1e-12 for (n,m) in {(1,1),(1,3),(2,1),(2,2)}.
    let ctx = PrecisionContext::new(16);
    for (n, m) in [(1u32, 1u32), (1, 3), (2, 1), (2, 2)] {
        let mk = |rho, sigma| SumSpec::new(n, m, rho, sigma).unwrap();
        let a = eulersums::sum_li_quartic(&mk(Twist::I, Twist::I), &ctx).unwrap();
        let b = eulersums::sum_li_quartic(&mk(Twist::I, Twist::MinusI), &ctx).unwrap();
        let d = eulersums::sum_li_quartic(&mk(Twist::MinusI, Twist::I), &ctx).unwrap();
        let e = eulersums::sum_li_quartic(&mk(Twist::MinusI, Twist::MinusI), &ctx).unwrap();
        let combo = a.sub(&b).add(&d).sub(&e);
        let colored = eulersums::sum_colored(n, m, &ctx).unwrap();
        // rhs = 2^{2-n} i colored: real part 0, imaginary part 2^{2-n} colored
        let expect_im = colored.mul_rat(&ExactRational::new(
            BigInt::from(4),
            BigInt::from(2u32).pow(n),
        ));
        assert_below(&combo.re.abs(), 12, &format!("(n,m)=({n},{m}) re"));
        assert_below(
            &combo.im.sub(&expect_im).abs(),
            12,
            &format!("(n,m)=({n},{m}) im"),
        );
    }
    println!("ACCEPTANCE 7 (fourth-root twist combination at 1e-12): PASS");
}

#[test]
fn criterion_08_measure_identity() {
    // |2 pi^2 beta(2) + 8 S(3) - 24 beta(4)| <= 1e-25 at 30 digits.
    let ctx = PrecisionContext::new(30);
    let pi = special::const_pi(&ctx);
    let beta2 = special::beta_dirichlet(2, &ctx).unwrap();
    let beta4 = special::beta_dirichlet(4, &ctx).unwrap();
    let s3 = eulersums::sum_s(3, &ctx).unwrap();
    let lhs = pi.pow_u32(2).mul_int(2).mul(&beta2).add(&s3.mul_int(8));
    let rhs = beta4.mul_int(24);
    assert_below(&lhs.sub(&rhs).abs(), 25, "2 pi^2 beta(2) + 8 S(3) = 24 beta(4)");

    // and the report wrapper agrees
    let rep = mahler::mahler_identity_check(&ctx).unwrap();
    assert!(rep.pass);

    // equivalent restatement: S(3) = 3 beta(4) - (pi^2/4) beta(2)
    let restated = beta4.mul_int(3).sub(&pi.pow_u32(2).div_uint(4).mul(&beta2));
    assert_below(&s3.sub(&restated).abs(), 25, "rearranged form");
    println!("ACCEPTANCE 8 (measure identity at 1e-25): PASS");
}

#[test]
fn criterion_09_torus_sampling() {
    // 4e6 low-discrepancy samples: std_error <= 2e-3 and
    // |mean - 24 beta(4)/pi^3| <= max(3 std_error, 1e-2), within 5 minutes.
    let started = Instant::now();
    let config = TorusSampleConfig::new(4_000_000, 7, Generator::LowDiscrepancy).unwrap();
    let est = mahler::mahler_qmc(&config).unwrap();
    let elapsed = started.elapsed();
    let ctx = PrecisionContext::new(20);
    let target = mahler::mahler_target(&ctx).unwrap();
    assert!(
        est.std_error <= 2e-3,
        "std_error {} exceeds 2e-3",
        est.std_error
    );
    let err = (est.mean - target).abs();
    let allowed = (3.0 * est.std_error).max(1e-2);
    assert!(
        err <= allowed,
        "mean {} vs target {target}: err {err} > {allowed}",
        est.mean
    );
    assert!(
        elapsed <= Duration::from_secs(300),
        "sampling took {elapsed:?} (> 5 min)"
    );
    println!(
        "ACCEPTANCE 9 (torus sampling: mean {:.5} vs {:.5}, se {:.1e}): PASS",
        est.mean, target, est.std_error
    );
}

fn strip_timing(v: &mut serde_json::Value) {
    match v {
        serde_json::Value::Array(items) => {
            for item in items {
                strip_timing(item);
            }
        }
        serde_json::Value::Object(map) => {
            map.remove("wall_time_ms");
            for (_, item) in map.iter_mut() {
                strip_timing(item);
            }
        }
        _ => {}
    }
}

#[test]
fn criterion_10_cli_reproducibility() {
    // the full default verify suite exits 0 and produces byte-identical
    // JSON (modulo the timing fields) across two runs.
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_eulersum"))
            .arg("verify")
            .env_remove("EULERSUM_DIGITS")
            .output()
            .expect("binary runs")
    };
    let a = run();
    let b = run();
    assert!(a.status.success(), "first verify run failed");
    assert!(b.status.success(), "second verify run failed");
    let mut ja: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let mut jb: serde_json::Value = serde_json::from_slice(&b.stdout).unwrap();
    assert!(!ja.as_array().unwrap().is_empty());
    strip_timing(&mut ja);
    strip_timing(&mut jb);
    let sa = serde_json::to_string(&ja).unwrap();
    let sb = serde_json::to_string(&jb).unwrap();
    assert_eq!(sa, sb, "JSON output differs between identical runs");
    println!(
        "ACCEPTANCE 10 (default verify suite: exit 0, byte-identical JSON, {} reports): PASS",
        ja.as_array().unwrap().len()
    );
}
