//! `build`: the matrix file format and its writers.

use std::io::Write;

use modrep_core::repcheck::suites::build_rep;
use modrep_core::{CycMatrix, CycNum, RepLabel, RepPair};
use serde::{Deserialize, Serialize};

use crate::args::{BuildArgs, Format};
use crate::error::{CliError, CliResult};

pub const SCHEMA: u32 = 1;

/// On-disk form of a representation. `T` is stored as its diagonal.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepFile {
    pub schema: u32,
    pub prime: u64,
    pub label: String,
    pub dim: usize,
    pub field_order: u32,
    pub basis_labels: Vec<String>,
    #[serde(rename = "S")]
    pub s: Vec<Vec<CycNum>>,
    #[serde(rename = "T")]
    pub t: Vec<CycNum>,
}

impl RepFile {
    pub fn from_rep(rep: &RepPair) -> CliResult<Self> {
        if !rep.t.is_diagonal() {
            return Err(CliError::Usage(format!("{}: T is not diagonal", rep.label)));
        }
        let n = rep.dim();
        Ok(RepFile {
            schema: SCHEMA,
            prime: rep.r,
            label: rep.label.as_str().to_string(),
            dim: n,
            field_order: rep.field_order(),
            basis_labels: rep.basis_labels.clone(),
            s: (0..n).map(|i| rep.s.row(i).to_vec()).collect(),
            t: rep.t.diag(),
        })
    }

    pub fn to_rep(&self) -> CliResult<RepPair> {
        if self.schema != SCHEMA {
            return Err(CliError::Usage(format!("unsupported schema {}", self.schema)));
        }
        let bad = |what: &str| CliError::Usage(format!("malformed matrix file: {what}"));
        if self.s.len() != self.dim || self.s.iter().any(|r| r.len() != self.dim) {
            return Err(bad("S is not dim x dim"));
        }
        if self.t.len() != self.dim {
            return Err(bad("T does not have dim entries"));
        }
        let m = self.field_order;
        if m == 0 || self.s.iter().flatten().chain(&self.t).any(|x| m % x.order() != 0) {
            return Err(bad("entry outside Q(zeta_field_order)"));
        }
        let label: RepLabel = self.label.parse()?;
        let s = CycMatrix::from_rows(m, self.s.clone());
        let t = CycMatrix::diagonal(m, &self.t);
        Ok(RepPair::new(self.prime, label, s, t, self.basis_labels.clone())?)
    }
}

pub fn make(args: &BuildArgs) -> CliResult<RepPair> {
    let rep = build_rep(args.prime, args.rep)?;
    Ok(match args.field_order {
        Some(m) => rep.promote(m)?,
        None => rep,
    })
}

pub fn write(rep: &RepPair, format: Format, out: &mut dyn Write) -> CliResult<()> {
    match format {
        Format::Json => {
            serde_json::to_writer(&mut *out, &RepFile::from_rep(rep)?)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["matrix", "row", "col", "re", "im"])?;
            let n = rep.dim();
            for (name, m) in [("S", &rep.s), ("T", &rep.t)] {
                for (k, z) in m.to_c64().iter().enumerate() {
                    let (i, j) = (k / n, k % n);
                    if name == "T" && i != j {
                        continue;
                    }
                    w.write_record([name.to_string(), i.to_string(), j.to_string(), z.re.to_string(), z.im.to_string()])?;
                }
            }
            w.flush()?;
        }
        Format::Pretty => {
            writeln!(
                out,
                "{} at r = {}: dim {}, entries in Q(zeta_{})",
                rep.label,
                rep.r,
                rep.dim(),
                rep.field_order()
            )?;
            writeln!(out, "basis: {}", rep.basis_labels.join(", "))?;
            writeln!(out, "S:")?;
            for i in 0..rep.dim() {
                let row: Vec<String> = rep.s.row(i).iter().map(|x| x.to_string()).collect();
                writeln!(out, "  [{}]", row.join(" | "))?;
            }
            writeln!(out, "T (diagonal):")?;
            for (i, x) in rep.t.diag().iter().enumerate() {
                writeln!(out, "  {}: {x}", rep.basis_labels[i])?;
            }
        }
    }
    Ok(())
}
