//! `verify`: runs suites per prime and writes a report.

use std::io::Write;

use modrep_core::charsums::odd_primes;
use modrep_core::repcheck::suites::{run_suite, Suite, SuiteOptions};
use modrep_core::repcheck::{CommutantOptions, NUMERIC_TOL};
use modrep_core::{RepLabel, VerifyReport};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::args::{Format, Mode, PrimeRange, VerifyArgs};
use crate::build::SCHEMA;
use crate::error::CliResult;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Skipped {
    pub prime: u64,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyOutput {
    pub schema: u32,
    pub suite: String,
    pub mode: String,
    /// Set in float mode; applies to every check marked `exact: false`.
    pub tolerance: Option<f64>,
    pub passed: bool,
    #[serde(default)]
    pub skipped: Vec<Skipped>,
    pub reports: Vec<VerifyReport>,
}

fn needs_inert(suite: Suite, rep: Option<RepLabel>) -> bool {
    suite.needs_inert() || matches!(rep, Some(RepLabel::Unfolded | RepLabel::Psu3Restricted))
}

/// Odd primes of the range, split into those the target supports and the rest.
pub fn select_primes(range: &PrimeRange, inert_only: bool) -> (Vec<u64>, Vec<Skipped>) {
    let mut keep = Vec::new();
    let mut skipped = Vec::new();
    for p in odd_primes(range.lo, range.hi) {
        if inert_only && p % 3 != 2 {
            skipped.push(Skipped { prime: p, reason: "r = 1 mod 3".into() });
        } else {
            keep.push(p);
        }
    }
    (keep, skipped)
}

pub fn suite_options(mode: Mode, rep: Option<RepLabel>, crosscheck: bool, field_order: Option<u32>) -> SuiteOptions {
    SuiteOptions {
        rep,
        float: mode == Mode::Float,
        crosscheck,
        field_order,
        commutant: CommutantOptions::from_env(),
        seed: 0,
    }
}

pub fn run(args: &VerifyArgs) -> CliResult<VerifyOutput> {
    let (primes, skipped) = match (&args.primes.prime, &args.primes.primes) {
        (Some(p), _) => (vec![*p], Vec::new()),
        (None, Some(range)) => select_primes(range, needs_inert(args.suite, args.rep)),
        (None, None) => (Vec::new(), Vec::new()),
    };
    let opts = suite_options(args.mode, args.rep, args.crosscheck, args.field_order);
    let results: Vec<_> = primes.par_iter().map(|&r| run_suite(args.suite, r, &opts)).collect();
    let reports = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(VerifyOutput {
        schema: SCHEMA,
        suite: args.suite.as_str().to_string(),
        mode: if args.mode == Mode::Float { "float" } else { "exact" }.to_string(),
        tolerance: (args.mode == Mode::Float).then_some(NUMERIC_TOL),
        passed: reports.iter().all(VerifyReport::passed),
        skipped,
        reports,
    })
}

pub fn write(v: &VerifyOutput, format: Format, out: &mut dyn Write) -> CliResult<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, v)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["prime", "check", "passed", "exact", "witness"])?;
            for rep in &v.reports {
                for c in &rep.checks {
                    w.write_record([
                        rep.prime.to_string(),
                        c.name.clone(),
                        c.passed.to_string(),
                        c.exact.to_string(),
                        c.witness.clone(),
                    ])?;
                }
            }
            w.flush()?;
        }
        Format::Pretty => {
            for rep in &v.reports {
                let failed = rep.checks.iter().filter(|c| !c.passed).count();
                writeln!(
                    out,
                    "r = {}: {} ({} checks, {} failed)",
                    rep.prime,
                    if rep.passed() { "PASS" } else { "FAIL" },
                    rep.checks.len(),
                    failed
                )?;
                for c in &rep.checks {
                    let tag = if c.exact { String::new() } else { format!(" [float, tol {NUMERIC_TOL:e}]") };
                    writeln!(out, "  [{}] {}{tag}: {}", if c.passed { "ok" } else { "FAIL" }, c.name, c.witness)?;
                }
                if let Some(eps) = rep.epsilon {
                    writeln!(out, "  epsilon = {eps:+}")?;
                }
                if let Some((p, m)) = rep.parity_dims {
                    writeln!(out, "  parity dims: plus {p}, minus {m} (sum {})", p + m)?;
                }
                if let Some(c) = &rep.proportionality_constant {
                    writeln!(out, "  proportionality constant: {} ~ {}", c.exact, c.numeric())?;
                }
                for n in &rep.notes {
                    writeln!(out, "  note: {n}")?;
                }
            }
            for s in &v.skipped {
                writeln!(out, "r = {}: skipped ({})", s.prime, s.reason)?;
            }
            writeln!(out, "suite {} ({}): {}", v.suite, v.mode, if v.passed { "PASS" } else { "FAIL" })?;
        }
    }
    Ok(())
}
