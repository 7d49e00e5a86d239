//! Representation-level checks: projective relations and lifts, comparison
//! of `S`-matrices, the charge-conjugation grading, commutants and the full
//! PSU(2)-inside-PSU(3) pipeline.

mod commutant;
mod compare;
mod lift;
mod parity;
pub mod suites;
mod theorem2;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::CycNum;

pub use commutant::{
    commutant_dim, commutant_dim_with, invariant_subspaces, unitarity_defect, CommutantMethod, CommutantOptions,
    CommutantResult, InvariantSubspace, MAX_EXACT_DIM_ENV, DEFAULT_MAX_EXACT_SIZE, NUMERIC_TOL,
};
pub use compare::{product_check, proportionality, Proportionality};
pub use lift::{lift, lift_in, lift_with, projective_relations, LiftedRep, ProjectiveScalars};
pub use parity::{parity_split, ParitySplit};
pub use theorem2::{theorem2_verify, Theorem2Options};

/// A named exact scalar together with its double-precision value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Scalar {
    pub exact: CycNum,
    pub re: f64,
    pub im: f64,
}

impl Scalar {
    pub fn new(x: &CycNum) -> Self {
        let v = x.embed(128).to_c64();
        Scalar {
            exact: x.clone(),
            re: v.re,
            im: v.im,
        }
    }

    pub fn numeric(&self) -> String {
        if self.im.abs() < 1e-12 {
            format!("{:.10}", self.re)
        } else if self.re.abs() < 1e-12 {
            format!("{:.10}i", self.im)
        } else {
            format!("{:.10}{:+.10}i", self.re, self.im)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Discovered value or residual description.
    pub witness: String,
    /// `false` when the check relies on a floating-point tolerance.
    pub exact: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub prime: u64,
    pub checks: Vec<Check>,
    pub commutant_dim: Option<usize>,
    pub parity_dims: Option<(usize, usize)>,
    pub proportionality_constant: Option<Scalar>,
    /// `ε = (-1)^{(r+1)/6}` when it applies.
    pub epsilon: Option<i8>,
    pub scalars: BTreeMap<String, Scalar>,
    pub notes: Vec<String>,
}

impl VerifyReport {
    pub fn new(prime: u64) -> Self {
        VerifyReport {
            prime,
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&mut self, name: &str, passed: bool, witness: impl Into<String>) -> bool {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            witness: witness.into(),
            exact: true,
        });
        passed
    }

    pub fn check_numeric(&mut self, name: &str, passed: bool, witness: impl Into<String>) -> bool {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            witness: witness.into(),
            exact: false,
        });
        passed
    }

    pub fn scalar(&mut self, name: &str, x: &CycNum) {
        self.scalars.insert(name.to_string(), Scalar::new(x));
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Appends the checks, scalars and notes of `other`, prefixing names.
    pub fn absorb(&mut self, prefix: &str, other: VerifyReport) {
        let join = |n: &str| if prefix.is_empty() { n.to_string() } else { format!("{prefix}.{n}") };
        for mut c in other.checks {
            c.name = join(&c.name);
            self.checks.push(c);
        }
        for (k, v) in other.scalars {
            self.scalars.insert(join(&k), v);
        }
        self.notes.extend(other.notes);
        self.commutant_dim = self.commutant_dim.or(other.commutant_dim);
        self.parity_dims = self.parity_dims.or(other.parity_dims);
        self.epsilon = self.epsilon.or(other.epsilon);
        if self.proportionality_constant.is_none() {
            self.proportionality_constant = other.proportionality_constant;
        }
    }
}
