//! Command-line front end: evaluate sums and special functions, run the
//! identity-verification suites, estimate the Mahler measure.
//!
//! Machine-readable output is a UTF-8 JSON array with one object per
//! report, written to stdout (or `--out FILE`, in which case the
//! human-readable table goes to stdout instead of stderr). Exit codes:
//! 0 all checks passed, 1 verification or truncation failure, 2 usage or
//! domain error.

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use eulersum_core::arith::{self, ExactRational};
use eulersum_core::eulersums::{self, SumSpec, Twist};
use eulersum_core::identities::{self, ChainStep, IdentityReport, ReportValue};
use eulersum_core::mahler::{self, Generator, Integrand, TorusSampleConfig};
use eulersum_core::special;
use eulersum_core::{BigReal, Error, PrecisionContext};

const DEFAULT_DIGITS: u32 = 30;
const DIGITS_ENV: &str = "EULERSUM_DIGITS";

#[derive(Parser)]
#[command(
    name = "eulersum",
    about = "High-precision alternating Euler sums, their closed forms, and identity verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one value: zeta, beta, hurwitz, S, li, li4, colored,
    /// bernoulli, or euler0
    Eval(EvalArgs),
    /// Run identity-verification suites and emit one report per point
    Verify(VerifyArgs),
    /// Estimate the Mahler measure of the torus polynomial by sampling
    Mahler(MahlerArgs),
}

#[derive(Args)]
struct EvalArgs {
    /// One of: zeta, beta, hurwitz, S, li, li4, colored, bernoulli, euler0
    name: String,
    /// Positional parameters of the chosen quantity. Negative twists can
    /// be written `-1` directly; for `-i` use the alias `mi` (or escape
    /// with `--`).
    #[arg(allow_negative_numbers = true)]
    params: Vec<String>,
    /// Decimal digits of requested accuracy (10..=200)
    #[arg(long)]
    digits: Option<u32>,
    /// Write the JSON report array here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Comma-separated identity ids (default: the full suite):
    /// thm1,bbb,ms,prop1,prop2,lemma,eq1,chain,mahler_identity
    #[arg(long, value_delimiter = ',')]
    only: Option<Vec<String>>,
    /// Decimal digits of requested accuracy (10..=200)
    #[arg(long)]
    digits: Option<u32>,
    /// Override the m-grid for thm1/eq1/chain (comma-separated odd values)
    #[arg(long, value_delimiter = ',')]
    m: Option<Vec<u32>>,
    /// Override the h-grid for lemma (comma-separated values)
    #[arg(long, value_delimiter = ',')]
    h: Option<Vec<u32>>,
    /// Write the JSON report array here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MahlerArgs {
    /// Number of accepted samples
    #[arg(long, default_value_t = 4_000_000)]
    samples: u64,
    /// Seed for the scrambled sequence / pseudo-random stream
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Sanity mode: constant2 (measure log 2) or monomial (measure 0)
    #[arg(long)]
    sanity: Option<String>,
    /// Point generator: low-discrepancy (default) or pseudo-random
    #[arg(long, default_value = "low-discrepancy")]
    generator: String,
    /// Write the JSON report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

// ---------------------------------------------------------------------------
// JSON records
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct EvalRecord {
    command: &'static str,
    name: String,
    params: Vec<String>,
    digits: u32,
    value: serde_json::Value,
    err_bound: f64,
    truncation: Vec<(String, u64)>,
    wall_time_ms: u64,
}

#[derive(Serialize)]
struct VerifyRecord {
    command: &'static str,
    identity: String,
    params: Vec<(String, String)>,
    digits: u32,
    lhs: serde_json::Value,
    rhs: serde_json::Value,
    abs_diff: String,
    digits_agreed: i64,
    pass: bool,
    truncation: Vec<(String, u64)>,
    wall_time_ms: u64,
}

#[derive(Serialize)]
struct MahlerRecord {
    command: &'static str,
    params: Vec<(String, String)>,
    digits: u32,
    samples: u64,
    seed: u64,
    generator: String,
    mean: f64,
    std_error: f64,
    rejected: u64,
    target: f64,
    z_score: f64,
    pass: bool,
    truncation: Vec<(String, u64)>,
    wall_time_ms: u64,
}

fn real_json(v: &BigReal, digits: u32) -> serde_json::Value {
    serde_json::Value::String(v.to_decimal(digits))
}

fn report_value_json(v: &ReportValue, digits: u32) -> serde_json::Value {
    match v {
        ReportValue::Real(r) => real_json(r, digits),
        ReportValue::Complex(c) => serde_json::json!({
            "re": c.re.to_decimal(digits),
            "im": c.im.to_decimal(digits),
        }),
    }
}

fn diff_str(d: &BigReal) -> String {
    format!("{:e}", d.approx())
}

// ---------------------------------------------------------------------------
// dispatch
// ---------------------------------------------------------------------------

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Eval(args) => run_eval(args),
        Command::Verify(args) => run_verify(args),
        Command::Mahler(args) => run_mahler(args),
    };
    match code {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn resolve_digits(flag: Option<u32>) -> Result<u32, Error> {
    let digits = match flag {
        Some(d) => d,
        None => match std::env::var(DIGITS_ENV) {
            Ok(v) => v
                .parse::<u32>()
                .map_err(|_| Error::Domain(format!("invalid {DIGITS_ENV}: {v}")))?,
            Err(_) => DEFAULT_DIGITS,
        },
    };
    if !(10..=200).contains(&digits) {
        return Err(Error::Domain(format!(
            "digits must lie in [10, 200], got {digits}"
        )));
    }
    Ok(digits)
}

fn parse_u32(s: &str, what: &str) -> Result<u32, Error> {
    s.parse::<u32>()
        .map_err(|_| Error::Domain(format!("invalid {what}: {s}")))
}

fn parse_rational(s: &str) -> Result<ExactRational, Error> {
    let parse_int = |t: &str| {
        t.trim()
            .parse::<i64>()
            .map_err(|_| Error::Domain(format!("invalid rational: {s}")))
    };
    if let Some((num, den)) = s.split_once('/') {
        let d = parse_int(den)?;
        if d == 0 {
            return Err(Error::Domain("rational with zero denominator".into()));
        }
        Ok(arith::rat(parse_int(num)?, d))
    } else {
        Ok(ExactRational::from_integer(parse_int(s)?.into()))
    }
}

fn parse_real_twist(s: &str) -> Result<Twist, Error> {
    match s {
        "1" | "+1" => Ok(Twist::One),
        "-1" => Ok(Twist::MinusOne),
        _ => Err(Error::Domain(format!("expected twist 1 or -1, got {s}"))),
    }
}

fn parse_quartic_twist(s: &str) -> Result<Twist, Error> {
    match s {
        "i" | "+i" => Ok(Twist::I),
        "-i" | "mi" => Ok(Twist::MinusI),
        _ => Err(Error::Domain(format!(
            "expected twist i or -i (alias mi), got {s}"
        ))),
    }
}

fn emit(json: String, table: String, out: Option<&PathBuf>) -> Result<(), Error> {
    match out {
        Some(path) => {
            std::fs::write(path, json.as_bytes())
                .map_err(|e| Error::Domain(format!("cannot write {}: {e}", path.display())))?;
            print!("{table}");
        }
        None => {
            println!("{json}");
            eprint!("{table}");
        }
    }
    std::io::stdout().flush().ok();
    Ok(())
}

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

fn run_eval(args: EvalArgs) -> Result<ExitCode, Error> {
    let digits = resolve_digits(args.digits)?;
    let ctx = PrecisionContext::new(digits);
    let started = Instant::now();
    let p = &args.params;
    let need = |n: usize| -> Result<(), Error> {
        if p.len() != n {
            return Err(Error::Domain(format!(
                "`{}` takes {n} parameter(s), got {}",
                args.name,
                p.len()
            )));
        }
        Ok(())
    };

    let mut truncation: Vec<(String, u64)> = Vec::new();
    let mut err_bound = 0.0f64;
    let value: serde_json::Value = match args.name.as_str() {
        "zeta" => {
            need(1)?;
            let v = special::zeta_int(parse_u32(&p[0], "s")?, &ctx)?;
            err_bound = v.err_bound();
            real_json(&v, digits)
        }
        "beta" => {
            need(1)?;
            let v = special::beta_dirichlet(parse_u32(&p[0], "s")?, &ctx)?;
            err_bound = v.err_bound();
            real_json(&v, digits)
        }
        "hurwitz" => {
            need(2)?;
            let s = parse_u32(&p[0], "s")?;
            let x = parse_rational(&p[1])?;
            let v = special::hurwitz_zeta(s, &BigReal::from_rational(&x, &ctx), &ctx)?;
            err_bound = v.err_bound();
            real_json(&v, digits)
        }
        "S" => {
            need(1)?;
            let (v, tr) = eulersums::sum_s_traced(parse_u32(&p[0], "m")?, &ctx)?;
            err_bound = v.err_bound();
            truncation = tr.into_iter().map(|(k, v)| (k.into(), v)).collect();
            real_json(&v, digits)
        }
        "li" => {
            need(4)?;
            let spec = SumSpec::new(
                parse_u32(&p[0], "n")?,
                parse_u32(&p[1], "m")?,
                parse_real_twist(&p[2])?,
                parse_real_twist(&p[3])?,
            )?;
            let (v, tr) = eulersums::sum_li_pm_traced(&spec, &ctx)?;
            err_bound = v.err_bound();
            truncation = tr.into_iter().map(|(k, v)| (k.into(), v)).collect();
            real_json(&v, digits)
        }
        "li4" => {
            need(4)?;
            let spec = SumSpec::new(
                parse_u32(&p[0], "n")?,
                parse_u32(&p[1], "m")?,
                parse_quartic_twist(&p[2])?,
                parse_quartic_twist(&p[3])?,
            )?;
            let (v, tr) = eulersums::sum_li_quartic_traced(&spec, &ctx)?;
            err_bound = v.err_bound();
            truncation = tr.into_iter().map(|(k, v)| (k.into(), v)).collect();
            serde_json::json!({
                "re": v.re.to_decimal(digits),
                "im": v.im.to_decimal(digits),
            })
        }
        "colored" => {
            need(2)?;
            let (v, tr) = eulersums::sum_colored_traced(
                parse_u32(&p[0], "n")?,
                parse_u32(&p[1], "m")?,
                &ctx,
            )?;
            err_bound = v.err_bound();
            truncation = tr.into_iter().map(|(k, v)| (k.into(), v)).collect();
            real_json(&v, digits)
        }
        "bernoulli" => {
            need(1)?;
            let b = arith::bernoulli(parse_u32(&p[0], "n")?);
            serde_json::Value::String(format!("{}/{}", b.numer(), b.denom()))
        }
        "euler0" => {
            need(1)?;
            let e = arith::euler_poly_zero(parse_u32(&p[0], "n")?);
            serde_json::Value::String(format!("{}/{}", e.numer(), e.denom()))
        }
        other => {
            return Err(Error::Domain(format!(
                "unknown value `{other}`; expected one of zeta, beta, hurwitz, S, li, li4, colored, bernoulli, euler0"
            )));
        }
    };

    let record = EvalRecord {
        command: "eval",
        name: args.name.clone(),
        params: args.params.clone(),
        digits,
        value: value.clone(),
        err_bound,
        truncation,
        wall_time_ms: started.elapsed().as_millis() as u64,
    };
    let json = serde_json::to_string_pretty(&vec![record]).expect("serializable");
    let pretty = match &value {
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    let table = format!("{} {} = {}\n", args.name, args.params.join(" "), pretty);
    emit(json, table, args.out.as_ref())?;
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

const ALL_IDENTITIES: [&str; 9] = [
    "thm1",
    "bbb",
    "ms",
    "prop1",
    "prop2",
    "lemma",
    "eq1",
    "chain",
    "mahler_identity",
];

fn run_verify(args: VerifyArgs) -> Result<ExitCode, Error> {
    let digits = resolve_digits(args.digits)?;
    let ctx = PrecisionContext::new(digits);
    let selected: Vec<String> = match &args.only {
        Some(ids) => {
            for id in ids {
                if !ALL_IDENTITIES.contains(&id.as_str()) {
                    return Err(Error::Domain(format!(
                        "unknown identity `{id}`; known: {}",
                        ALL_IDENTITIES.join(", ")
                    )));
                }
            }
            ids.clone()
        }
        None => ALL_IDENTITIES.iter().map(|s| s.to_string()).collect(),
    };

    let mut records: Vec<VerifyRecord> = Vec::new();
    let mut failed = false;
    let mut push = |rep: IdentityReport, elapsed_ms: u64, records: &mut Vec<VerifyRecord>| {
        failed |= !rep.pass;
        records.push(VerifyRecord {
            command: "verify",
            identity: rep.identity_id,
            params: rep.parameters,
            digits,
            lhs: report_value_json(&rep.lhs, digits),
            rhs: report_value_json(&rep.rhs, digits),
            abs_diff: diff_str(&rep.abs_diff),
            digits_agreed: rep.digits_agreed,
            pass: rep.pass,
            truncation: rep.truncation,
            wall_time_ms: elapsed_ms,
        });
    };

    for id in &selected {
        match id.as_str() {
            "thm1" => {
                let ms = args.m.clone().unwrap_or_else(|| vec![1, 3, 5, 7, 9]);
                for m in ms {
                    let t = Instant::now();
                    let rep = identities::thm1_check(m, &ctx)?;
                    push(rep, t.elapsed().as_millis() as u64, &mut records);
                }
            }
            "bbb" => {
                for w in [3u32, 5, 7, 9] {
                    for n in 1..w {
                        let m = w - n;
                        for rho in [Twist::One, Twist::MinusOne] {
                            for sigma in [Twist::One, Twist::MinusOne] {
                                if n == 1 && rho == Twist::One {
                                    continue; // divergent instantiation
                                }
                                let t = Instant::now();
                                let rep = identities::bbb_check(n, m, rho, sigma, &ctx)?;
                                push(rep, t.elapsed().as_millis() as u64, &mut records);
                            }
                        }
                    }
                }
            }
            "ms" => {
                for s in [2u32, 3, 4] {
                    for x in [arith::rat(1, 4), arith::rat(1, 2), arith::rat(3, 4)] {
                        let t = Instant::now();
                        let rep = identities::ms_check(s, &x, &ctx)?;
                        push(rep, t.elapsed().as_millis() as u64, &mut records);
                    }
                }
            }
            "prop1" => {
                for s in 1u32..=3 {
                    for tt in 1u32..=3 {
                        for x in [arith::rat(1, 2), arith::rat(1, 3), arith::rat(-1, 3)] {
                            let t = Instant::now();
                            let rep = identities::prop1_check(s, tt, &x, &ctx)?;
                            push(rep, t.elapsed().as_millis() as u64, &mut records);
                        }
                    }
                }
            }
            "prop2" => {
                for (s, k) in [(2u32, 1u32), (3, 2), (3, 1)] {
                    for x in [arith::rat(1, 4), arith::rat(1, 2)] {
                        let t = Instant::now();
                        let rep = identities::prop2_check(s, k, &x, &ctx)?;
                        push(rep, t.elapsed().as_millis() as u64, &mut records);
                    }
                }
            }
            "lemma" => {
                let hs = args.h.clone().unwrap_or_else(|| (0..=10).collect());
                for h in hs {
                    let t = Instant::now();
                    let rep = identities::lemma_check(h, &ctx)?;
                    push(rep, t.elapsed().as_millis() as u64, &mut records);
                }
            }
            "eq1" => {
                let ms = args.m.clone().unwrap_or_else(|| vec![1, 3, 5]);
                for m in ms {
                    let t = Instant::now();
                    let rep = identities::eq1_check(m, &ctx)?;
                    push(rep, t.elapsed().as_millis() as u64, &mut records);
                }
            }
            "chain" => {
                let ms = args.m.clone().unwrap_or_else(|| vec![3, 5]);
                for m in ms {
                    for step in ChainStep::ALL {
                        let t = Instant::now();
                        let rep = identities::chain_check(m, step, &ctx)?;
                        push(rep, t.elapsed().as_millis() as u64, &mut records);
                    }
                }
            }
            "mahler_identity" => {
                let t = Instant::now();
                let rep = mahler::mahler_identity_check(&ctx)?;
                push(rep, t.elapsed().as_millis() as u64, &mut records);
            }
            _ => unreachable!("validated above"),
        }
    }

    let mut table = String::new();
    for r in &records {
        let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        table.push_str(&format!(
            "{:<16} {:<28} digits_agreed={:<4} diff={:<12} {}\n",
            r.identity,
            params.join(" "),
            r.digits_agreed,
            r.abs_diff,
            if r.pass { "pass" } else { "FAIL" }
        ));
    }
    let total = records.len();
    let passed = records.iter().filter(|r| r.pass).count();
    table.push_str(&format!("{passed}/{total} identities passed\n"));

    let json = serde_json::to_string_pretty(&records).expect("serializable");
    emit(json, table, args.out.as_ref())?;
    Ok(if failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

// ---------------------------------------------------------------------------
// mahler
// ---------------------------------------------------------------------------

fn run_mahler(args: MahlerArgs) -> Result<ExitCode, Error> {
    let digits = resolve_digits(None)?;
    let ctx = PrecisionContext::new(digits);
    let generator = match args.generator.as_str() {
        "low-discrepancy" | "low_discrepancy" => Generator::LowDiscrepancy,
        "pseudo-random" | "pseudo_random" => Generator::PseudoRandom,
        other => {
            return Err(Error::Domain(format!(
                "unknown generator `{other}`; expected low-discrepancy or pseudo-random"
            )));
        }
    };
    let integrand = match args.sanity.as_deref() {
        None => Integrand::TorusPolynomial,
        Some("constant2") => Integrand::ConstantTwo,
        Some("monomial") => Integrand::Monomial,
        Some(other) => {
            return Err(Error::Domain(format!(
                "unknown sanity mode `{other}`; expected constant2 or monomial"
            )));
        }
    };
    let config = TorusSampleConfig::new(args.samples, args.seed, generator)?;
    let started = Instant::now();
    let est = mahler::mahler_qmc_mode(&config, integrand)?;
    let target = match integrand {
        Integrand::TorusPolynomial => mahler::mahler_target(&ctx)?,
        Integrand::ConstantTwo => std::f64::consts::LN_2,
        Integrand::Monomial => 0.0,
    };
    let z_score = if est.std_error > 0.0 {
        (est.mean - target) / est.std_error
    } else {
        0.0
    };
    let pass = (est.mean - target).abs() <= (3.0 * est.std_error).max(1e-2);
    let record = MahlerRecord {
        command: "mahler",
        params: vec![
            (
                "sanity".into(),
                args.sanity.clone().unwrap_or_else(|| "none".into()),
            ),
            ("generator".into(), args.generator.clone()),
        ],
        digits,
        samples: args.samples,
        seed: args.seed,
        generator: args.generator.clone(),
        mean: est.mean,
        std_error: est.std_error,
        rejected: est.rejected,
        target,
        z_score,
        pass,
        truncation: vec![("samples_used".into(), est.samples_used)],
        wall_time_ms: started.elapsed().as_millis() as u64,
    };
    let json = serde_json::to_string_pretty(&vec![record]).expect("serializable");
    let table = format!(
        "mean = {:.6} +/- {:.2e}   target = {:.6}   z = {:+.3}   rejected = {}   {}\n",
        est.mean,
        est.std_error,
        target,
        z_score,
        est.rejected,
        if pass { "pass" } else { "FAIL" }
    );
    emit(json, table, args.out.as_ref())?;
    Ok(if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
