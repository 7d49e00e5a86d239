//! `report`: per-prime summary rows gathered from verify reports.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use modrep_core::repcheck::suites::{run_suite, Suite};
use modrep_core::repcheck::Scalar;
use modrep_core::VerifyReport;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::args::{Format, ReportArgs};
use crate::build::SCHEMA;
use crate::error::{CliError, CliResult};
use crate::verify::{select_primes, suite_options, VerifyOutput};

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub prime: u64,
    pub epsilon: Option<i8>,
    pub parity_dims: Option<(usize, usize)>,
    pub proportionality: Option<Scalar>,
    pub proportionality_squared: Option<Scalar>,
    pub product_scalar: Option<Scalar>,
    /// Representation name to commutant dimension.
    pub commutant: BTreeMap<String, usize>,
    /// `rep.c1`, `rep.c2`, ... to value.
    pub lift: BTreeMap<String, Scalar>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub schema: u32,
    pub rows: Vec<Row>,
}

fn last_two(key: &str) -> String {
    let parts: Vec<&str> = key.rsplitn(3, '.').collect();
    match parts.as_slice() {
        [a, b, ..] => format!("{b}.{a}"),
        _ => key.to_string(),
    }
}

fn absorb(row: &mut Row, rep: &VerifyReport) {
    row.epsilon = row.epsilon.or(rep.epsilon);
    row.parity_dims = row.parity_dims.or(rep.parity_dims);
    if row.proportionality.is_none() {
        row.proportionality = rep.proportionality_constant.clone();
    }
    for (key, v) in &rep.scalars {
        let last = key.rsplit('.').next().unwrap_or(key);
        match last {
            "proportionality_constant" if row.proportionality.is_none() => row.proportionality = Some(v.clone()),
            "proportionality_constant_squared" => row.proportionality_squared = Some(v.clone()),
            "product_scalar" if row.product_scalar.is_none() => row.product_scalar = Some(v.clone()),
            "commutant_dim" => {
                let name = last_two(key);
                let name = name.trim_end_matches(".commutant_dim").to_string();
                row.commutant.insert(name, v.re.round() as usize);
            }
            "c1" | "c2" | "c1_compatible" => {
                row.lift.insert(last_two(key), v.clone());
            }
            _ => {}
        }
    }
}

pub fn rows_from_reports(reports: &[VerifyReport]) -> Vec<Row> {
    let mut rows: BTreeMap<u64, Row> = BTreeMap::new();
    for rep in reports {
        let row = rows.entry(rep.prime).or_insert_with(|| Row { prime: rep.prime, ..Row::default() });
        absorb(row, rep);
    }
    rows.into_values().collect()
}

/// Accepts verify output, a list of verify outputs or reports, or nothing.
pub fn read_reports(path: &Path) -> CliResult<Vec<VerifyReport>> {
    let text = std::fs::read_to_string(path)?;
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let value: serde_json::Value = serde_json::from_str(&text)?;
    let items = match value {
        serde_json::Value::Array(items) => items,
        other => vec![other],
    };
    let mut out = Vec::new();
    for item in items {
        if item.get("reports").is_some() {
            out.extend(serde_json::from_value::<VerifyOutput>(item)?.reports);
        } else if item.get("checks").is_some() {
            out.push(serde_json::from_value::<VerifyReport>(item)?);
        } else {
            return Err(CliError::Usage("input is neither verify output nor a report".into()));
        }
    }
    Ok(out)
}

pub fn run(args: &ReportArgs) -> CliResult<Table> {
    let reports = if let Some(path) = &args.input {
        read_reports(path)?
    } else {
        let primes = match (&args.prime, &args.primes) {
            (Some(p), _) => vec![*p],
            (None, Some(range)) => select_primes(range, false).0,
            (None, None) => Vec::new(),
        };
        let opts = suite_options(args.mode, None, false, None);
        let results: Vec<_> = primes.par_iter().map(|&r| run_suite(Suite::All, r, &opts)).collect();
        results.into_iter().collect::<Result<Vec<_>, _>>()?
    };
    Ok(Table { schema: SCHEMA, rows: rows_from_reports(&reports) })
}

fn num(s: &Option<Scalar>) -> String {
    s.as_ref().map_or_else(|| "-".to_string(), Scalar::numeric)
}

fn exact(s: &Option<Scalar>) -> String {
    s.as_ref().map_or_else(String::new, |s| s.exact.to_string())
}

fn commutant_cell(row: &Row) -> String {
    row.commutant.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
}

pub fn write(table: &Table, format: Format, out: &mut dyn Write) -> CliResult<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, table)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record([
                "prime", "epsilon", "plus_dim", "minus_dim", "c_exact", "c_re", "c_im", "c_squared", "product_exact",
                "product_re", "product_im", "commutant", "lift",
            ])?;
            for row in &table.rows {
                let (p, m) = row.parity_dims.map_or((String::new(), String::new()), |(p, m)| (p.to_string(), m.to_string()));
                let re_im = |s: &Option<Scalar>| {
                    s.as_ref().map_or((String::new(), String::new()), |s| (s.re.to_string(), s.im.to_string()))
                };
                let (c_re, c_im) = re_im(&row.proportionality);
                let (x_re, x_im) = re_im(&row.product_scalar);
                let lift = row.lift.iter().map(|(k, v)| format!("{k}={}", v.exact)).collect::<Vec<_>>().join("; ");
                w.write_record([
                    row.prime.to_string(),
                    row.epsilon.map_or(String::new(), |e| e.to_string()),
                    p,
                    m,
                    exact(&row.proportionality),
                    c_re,
                    c_im,
                    exact(&row.proportionality_squared),
                    exact(&row.product_scalar),
                    x_re,
                    x_im,
                    commutant_cell(row),
                    lift,
                ])?;
            }
            w.flush()?;
        }
        Format::Pretty => {
            writeln!(
                out,
                "{:>5}  {:>4}  {:>11}  {:>24}  {:>6}  {:>26}  commutant",
                "prime", "eps", "parity", "c", "c^2", "S S'"
            )?;
            for row in &table.rows {
                let parity = row.parity_dims.map_or("-".to_string(), |(p, m)| format!("{p}+{m}"));
                let eps = row.epsilon.map_or("-".to_string(), |e| format!("{e:+}"));
                let c2 = row
                    .proportionality_squared
                    .as_ref()
                    .and_then(|s| s.exact.to_rational().map(|q| q.to_string()))
                    .unwrap_or_else(|| num(&row.proportionality_squared));
                writeln!(
                    out,
                    "{:>5}  {:>4}  {:>11}  {:>24}  {:>6}  {:>26}  {}",
                    row.prime,
                    eps,
                    parity,
                    num(&row.proportionality),
                    c2,
                    num(&row.product_scalar),
                    commutant_cell(row)
                )?;
            }
            for row in &table.rows {
                writeln!(out, "\nr = {}", row.prime)?;
                if let Some(c) = &row.proportionality {
                    writeln!(out, "  c = {}", c.exact)?;
                }
                if let Some(x) = &row.product_scalar {
                    writeln!(out, "  S S' = ({}) I", x.exact)?;
                }
                for (k, v) in &row.lift {
                    writeln!(out, "  {k} = {} ~ {}", v.exact, v.numeric())?;
                }
            }
        }
    }
    Ok(())
}
