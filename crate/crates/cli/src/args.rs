use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use modrep_core::repcheck::suites::Suite;
use modrep_core::RepLabel;

#[derive(Debug, Parser)]
#[command(name = "modrep", version, about = "Exact SL(2,Z) representations from quantum PSU(3) and PSU(2)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write S and T of one representation.
    Build(BuildArgs),
    /// Run verification suites; exit 1 if any check fails.
    Verify(VerifyArgs),
    /// Per-prime summary table, from earlier verify output or a live run.
    Report(ReportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Float,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeRange {
    pub lo: u64,
    pub hi: u64,
}

pub fn parse_range(s: &str) -> Result<PrimeRange, String> {
    let (a, b) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .ok_or_else(|| format!("expected A..B, got {s:?}"))?;
    let lo = a.trim().parse().map_err(|_| format!("bad lower bound {a:?}"))?;
    let hi = b.trim().parse().map_err(|_| format!("bad upper bound {b:?}"))?;
    if lo > hi {
        return Err(format!("empty range {s}"));
    }
    Ok(PrimeRange { lo, hi })
}

fn parse_label(s: &str) -> Result<RepLabel, String> {
    s.parse().map_err(|e: modrep_core::Error| e.to_string())
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: modrep_core::Error| e.to_string())
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct Primes {
    /// A single prime.
    #[arg(long)]
    pub prime: Option<u64>,
    /// Inclusive range `A..B`; primes the target does not support are skipped.
    #[arg(long, value_parser = parse_range)]
    pub primes: Option<PrimeRange>,
}

#[derive(Debug, Clone, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value = "pretty")]
    pub format: Format,
    /// Write here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct BuildArgs {
    #[arg(long)]
    pub prime: u64,
    /// unfolded, psu3, psu2 or psu2conj.
    #[arg(long, value_parser = parse_label, default_value = "psu3")]
    pub rep: RepLabel,
    /// Write entries over `Q(ζ_M)`; must be a multiple of the natural order.
    #[arg(long)]
    pub field_order: Option<u32>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub primes: Primes,
    #[arg(long, value_parser = parse_suite, default_value = "all")]
    pub suite: Suite,
    /// Restricts the relations suite to one representation.
    #[arg(long, value_parser = parse_label)]
    pub rep: Option<RepLabel>,
    #[arg(long, value_enum, default_value = "exact")]
    pub mode: Mode,
    #[arg(long)]
    pub field_order: Option<u32>,
    /// Also project Ŝ onto the orbit basis in the theorem2 suite.
    #[arg(long)]
    pub crosscheck: bool,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Args)]
pub struct ReportArgs {
    /// JSON written by `verify --format json`; a live run when absent.
    #[arg(long, conflicts_with_all = ["prime", "primes"])]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub prime: Option<u64>,
    #[arg(long, value_parser = parse_range)]
    pub primes: Option<PrimeRange>,
    #[arg(long, value_enum, default_value = "exact")]
    pub mode: Mode,
    #[command(flatten)]
    pub output: Output,
}
