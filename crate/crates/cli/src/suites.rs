//! Verification grids: which checks run on which blocks, and how results
//! are reported.

use std::collections::BTreeMap;
use std::io::Write;

use clap::ValueEnum;
use rayon::prelude::*;
use schur2::block::BlockShape;
use schur2::verify::{
    verify_factorization, verify_interval_symmetry, verify_lemmas, verify_ringel_self_duality,
    verify_tilting_decomposition_duality, verify_tilting_projective, verify_truncated_cartan,
};
use schur2::weights::is_prime;
use schur2::{BlockMatrices, BlockSpec, VerificationReport, Variant};

use crate::{usage, Outcome, VerifyArgs};

const DEFAULT_PRIMES: [u64; 4] = [2, 3, 5, 7];
const DEFAULT_ELLS: [u64; 5] = [2, 3, 4, 5, 7];
const DEFAULT_MAX_SIZE: u64 = 1000;
const DEFAULT_MAX_TRUNCATED: u64 = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Suite {
    All,
    #[value(name = "prop4.1")]
    Duality,
    #[value(name = "prop4.4")]
    Symmetry,
    #[value(name = "cor4.3")]
    TiltingProjective,
    Lemmas,
    #[value(name = "lemma4.6")]
    TruncatedCartan,
    Ringel,
    Factorization,
}

impl Suite {
    const CONCRETE: [Suite; 7] = [
        Suite::Duality,
        Suite::Symmetry,
        Suite::TiltingProjective,
        Suite::Lemmas,
        Suite::TruncatedCartan,
        Suite::Ringel,
        Suite::Factorization,
    ];

    fn name(self) -> String {
        self.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
    }

    /// Whether the suite applies to a block of this size.
    fn accepts(self, size: u64, p: u64) -> bool {
        let shape = BlockShape::of(size, p);
        match self {
            Suite::All => Suite::CONCRETE.iter().any(|s| s.accepts(size, p)),
            Suite::TruncatedCartan => shape.is_none(),
            Suite::Ringel => shape.is_some_and(|s| s.a == 2),
            _ => shape.is_some(),
        }
    }

    fn run(self, b: &BlockMatrices) -> schur2::Result<Vec<VerificationReport>> {
        Ok(match self {
            Suite::All => unreachable!("expanded during planning"),
            Suite::Duality => vec![verify_tilting_decomposition_duality(b)?],
            Suite::Symmetry => vec![verify_interval_symmetry(b)?],
            Suite::TiltingProjective => vec![verify_tilting_projective(b)?],
            Suite::Lemmas => verify_lemmas(b)?,
            Suite::TruncatedCartan => vec![verify_truncated_cartan(b)?],
            Suite::Ringel => vec![verify_ringel_self_duality(b)?],
            Suite::Factorization => vec![verify_factorization(b)?],
        })
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Task {
    pub suite: Suite,
    pub spec: BlockSpec,
}

fn families(args: &VerifyArgs, p: u64) -> Vec<(Variant, u64)> {
    if let Some(ell) = args.ell {
        return vec![(Variant::Quantum, ell)];
    }
    let mut out = vec![(Variant::Classical, p)];
    if !args.classical {
        out.extend(DEFAULT_ELLS.iter().filter(|&&l| l % p != 0).map(|&l| (Variant::Quantum, l)));
    }
    out
}

fn floor_log(w: u64, p: u64) -> u32 {
    let mut k = 0;
    let mut x = w;
    while x >= p {
        x /= p;
        k += 1;
    }
    k
}

fn sizes(suite: Suite, args: &VerifyArgs, p: u64) -> Vec<u64> {
    if let Some(s) = args.size {
        return vec![s];
    }
    let k_ok = |w: u64| args.k_max.is_none_or(|km| floor_log(w, p) <= km);
    let max = match (suite, args.max_size, args.k_max) {
        (_, Some(m), _) => m,
        (Suite::TruncatedCartan, None, _) => DEFAULT_MAX_TRUNCATED,
        (_, None, Some(_)) => u64::MAX,
        (_, None, None) => DEFAULT_MAX_SIZE,
    };
    if suite == Suite::TruncatedCartan {
        return (p + 1..=max).filter(|&w| k_ok(w) && suite.accepts(w, p)).collect();
    }
    let mut out = Vec::new();
    let mut pk = 1u64;
    for k in 0.. {
        if args.k_max.is_some_and(|km| k > km) || 2u64.saturating_mul(pk) > max {
            break;
        }
        for a in 2..=p {
            let w = a.saturating_mul(pk);
            if w <= max && suite.accepts(w, p) {
                out.push(w);
            }
        }
        match pk.checked_mul(p) {
            Some(x) => pk = x,
            None => break,
        }
    }
    out
}

/// Expands the arguments into the list of (suite, block) checks to run.
pub fn plan(args: &VerifyArgs) -> anyhow::Result<Vec<Task>> {
    let mut problems = Vec::new();
    let primes: Vec<u64> = match args.p {
        Some(p) => vec![p],
        None => DEFAULT_PRIMES.to_vec(),
    };
    if let Some(p) = args.p {
        if !is_prime(p) {
            problems.push(format!("p = {p} is not a prime"));
        }
    }
    if args.size == Some(0) {
        problems.push("--size must be positive".to_string());
    }
    if args.max_size == Some(0) {
        problems.push("--max-size must be positive".to_string());
    }
    if args.size.is_some() && (args.max_size.is_some() || args.k_max.is_some()) {
        problems.push("--size cannot be combined with --max-size or --k-max".to_string());
    }
    if args.jobs == Some(0) {
        problems.push("--jobs must be positive".to_string());
    }
    if !problems.is_empty() {
        return Err(usage(problems.join("; ")));
    }

    let suites: Vec<Suite> = match args.suite {
        Suite::All => Suite::CONCRETE.to_vec(),
        s => vec![s],
    };
    if let Some(size) = args.size {
        let rejected: Vec<String> = primes
            .iter()
            .filter(|&&p| !args.suite.accepts(size, p))
            .map(|p| format!("suite {} does not apply to a block of size {size} at p = {p}", args.suite.name()))
            .collect();
        if !rejected.is_empty() {
            return Err(usage(rejected.join("; ")));
        }
    }

    let mut tasks = Vec::new();
    for &p in &primes {
        for (variant, ell) in families(args, p) {
            for &suite in &suites {
                for w in sizes(suite, args, p) {
                    if !suite.accepts(w, p) {
                        continue;
                    }
                    let spec = BlockSpec { variant, p, ell, lowest: 0, size: w };
                    spec.validate().map_err(usage)?;
                    tasks.push(Task { suite, spec });
                }
            }
        }
    }
    if tasks.is_empty() {
        return Err(usage("the requested grid is empty"));
    }
    Ok(tasks)
}

fn describe(r: &VerificationReport) -> String {
    let pr = &r.params;
    let mut line = format!(
        "{} {} {} p={} ell={} lowest={} size={}",
        if r.passed() { "PASS" } else { "FAIL" },
        r.theorem,
        pr.variant,
        pr.p,
        pr.ell,
        pr.lowest,
        pr.size
    );
    if let Some(i) = pr.index {
        line += &format!(" index={i}");
    }
    if let Some(w) = &r.witness {
        line += &format!(" witness λ={}", w.lambda);
        if let Some(rho) = w.rho {
            line += &format!(" ρ={rho}");
        }
        line += &format!(" lhs={} rhs={}", w.lhs, w.rhs);
        if let Some(part) = &w.part {
            line += &format!(" part={part}");
        }
    }
    line + &format!(" ({} ms)", r.millis)
}

/// Runs the tasks and prints the reports. Fails if any check fails.
pub fn execute(args: &VerifyArgs, tasks: &[Task], out: &mut dyn Write) -> anyhow::Result<Outcome> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = args.jobs {
        builder = builder.num_threads(n);
    }
    let pool = builder.build()?;
    let results: Vec<schur2::Result<Vec<VerificationReport>>> = pool.install(|| {
        tasks
            .par_iter()
            .map(|t| BlockMatrices::for_spec(t.spec).and_then(|b| t.suite.run(&b)))
            .collect()
    });
    let mut reports = Vec::new();
    for r in results {
        reports.extend(r?);
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();

    if args.json {
        writeln!(out, "{}", serde_json::to_string_pretty(&reports)?)?;
    } else {
        let every = args.verbose || args.size.is_some();
        for r in reports.iter().filter(|r| every || !r.passed()) {
            writeln!(out, "{}", describe(r))?;
        }
        let mut tally: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
        for r in &reports {
            let e = tally.entry(r.theorem.as_str()).or_default();
            if r.passed() {
                e.0 += 1;
            } else {
                e.1 += 1;
            }
        }
        for (theorem, (pass, fail)) in &tally {
            writeln!(out, "{theorem}: {pass} passed, {fail} failed")?;
        }
        if failed == 0 {
            writeln!(out, "all {} checks passed", reports.len())?;
        } else {
            writeln!(out, "{failed} of {} checks failed", reports.len())?;
        }
    }
    Ok(if failed == 0 { Outcome::Pass } else { Outcome::Fail })
}
