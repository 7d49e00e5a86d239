//! The `(S, T)` pair that every representation-level operation works on.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::CycMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RepLabel {
    Unfolded,
    Psu3Restricted,
    Psu2,
    /// The literature form of the PSU(2) matrices, before reindexing.
    Psu2Le,
    Psu2Conjugated,
    /// Anything built by hand, e.g. test fixtures.
    Other,
}

impl RepLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            RepLabel::Unfolded => "unfolded",
            RepLabel::Psu3Restricted => "psu3_restricted",
            RepLabel::Psu2 => "psu2",
            RepLabel::Psu2Le => "psu2_le",
            RepLabel::Psu2Conjugated => "psu2_conjugated",
            RepLabel::Other => "other",
        }
    }
}

impl fmt::Display for RepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RepLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "unfolded" => RepLabel::Unfolded,
            "psu3_restricted" | "psu3" => RepLabel::Psu3Restricted,
            "psu2" => RepLabel::Psu2,
            "psu2_le" => RepLabel::Psu2Le,
            "psu2_conjugated" | "psu2conj" => RepLabel::Psu2Conjugated,
            "other" => RepLabel::Other,
            _ => return Err(Error::Parse(format!("unknown representation label {s:?}"))),
        })
    }
}

#[derive(Clone, Debug)]
pub struct RepPair {
    pub r: u64,
    pub label: RepLabel,
    pub s: CycMatrix,
    pub t: CycMatrix,
    pub basis_labels: Vec<String>,
}

impl RepPair {
    pub fn new(r: u64, label: RepLabel, s: CycMatrix, t: CycMatrix, basis_labels: Vec<String>) -> Result<Self> {
        if s.dim() != t.dim() {
            return Err(Error::DimensionMismatch(s.dim(), t.dim()));
        }
        if basis_labels.len() != s.dim() {
            return Err(Error::DimensionMismatch(s.dim(), basis_labels.len()));
        }
        let (s, t) = if s.order() == t.order() {
            (s, t)
        } else {
            let m = crate::arith::lcm(s.order() as u64, t.order() as u64) as u32;
            (s.promote(m), t.promote(m))
        };
        Ok(RepPair { r, label, s, t, basis_labels })
    }

    pub fn dim(&self) -> usize {
        self.s.dim()
    }

    /// Order `m` of the cyclotomic field `Q(ζ_m)` holding the entries.
    pub fn field_order(&self) -> u32 {
        self.s.order()
    }

    pub fn promote(&self, m: u32) -> Result<RepPair> {
        if m % self.field_order() != 0 {
            return Err(Error::FieldOrder {
                field: m,
                required: self.field_order(),
            });
        }
        Ok(RepPair {
            s: self.s.promote(m),
            t: self.t.promote(m),
            ..self.clone()
        })
    }

    /// Both matrices with every entry complex-conjugated.
    pub fn conj(&self) -> RepPair {
        RepPair {
            s: self.s.conj(),
            t: self.t.conj(),
            ..self.clone()
        }
    }

    /// The 1-dimensional trivial representation.
    pub fn trivial() -> RepPair {
        RepPair {
            r: 1,
            label: RepLabel::Other,
            s: CycMatrix::identity(1, 1),
            t: CycMatrix::identity(1, 1),
            basis_labels: vec!["e".into()],
        }
    }
}
