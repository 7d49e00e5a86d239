//! Named groups of checks run per prime by the command-line front end.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::charsums::{
    alpha_beta_sweep, degree2_sweep, gauss_sweep, jacobsthal_sweep, s_value, square_sweep, SweepResult,
};
use crate::eisenstein::{build_symmetry_data, check_inert_prime, WeylElement};
use crate::error::{Error, Result};
use crate::psu2::{build_psu2, check_odd_prime, conjugated, reindex_witness};
use crate::rep::{RepLabel, RepPair};
use crate::weil::{build_restricted, build_unfolded, restriction_crosscheck, symmetry_operator, Symmetry};

use super::{
    commutant_dim_with, lift_with, parity_split, projective_relations, theorem2_verify, CommutantMethod,
    CommutantOptions, Theorem2Options, VerifyReport,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Relations,
    Symmetries,
    Parity,
    Identities,
    Svalue,
    Theorem2,
    All,
}

impl Suite {
    pub const EACH: [Suite; 6] = [
        Suite::Relations,
        Suite::Symmetries,
        Suite::Parity,
        Suite::Identities,
        Suite::Svalue,
        Suite::Theorem2,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Relations => "relations",
            Suite::Symmetries => "symmetries",
            Suite::Parity => "parity",
            Suite::Identities => "identities",
            Suite::Svalue => "svalue",
            Suite::Theorem2 => "theorem2",
            Suite::All => "all",
        }
    }

    /// Whether the suite needs `r ≡ 2 (mod 3)`.
    pub fn needs_inert(self) -> bool {
        matches!(self, Suite::Symmetries | Suite::Parity | Suite::Svalue | Suite::Theorem2)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "relations" => Ok(Suite::Relations),
            "symmetries" => Ok(Suite::Symmetries),
            "parity" => Ok(Suite::Parity),
            "identities" => Ok(Suite::Identities),
            "svalue" | "s-value" => Ok(Suite::Svalue),
            "theorem2" => Ok(Suite::Theorem2),
            "all" => Ok(Suite::All),
            other => Err(Error::Parse(format!("unknown suite {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SuiteOptions {
    /// Restricts the relations suite to one representation.
    pub rep: Option<RepLabel>,
    /// Floating-point commutant when the exact one is refused.
    pub float: bool,
    pub crosscheck: bool,
    pub field_order: Option<u32>,
    pub commutant: CommutantOptions,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            rep: None,
            float: false,
            crosscheck: false,
            field_order: None,
            commutant: CommutantOptions::from_env(),
            seed: 0,
        }
    }
}

/// Builds a representation by label.
pub fn build_rep(r: u64, label: RepLabel) -> Result<RepPair> {
    match label {
        RepLabel::Unfolded => build_unfolded(r),
        RepLabel::Psu3Restricted => build_restricted(r),
        RepLabel::Psu2 => build_psu2(r),
        RepLabel::Psu2Le => crate::psu2::build_psu2_le_form(r),
        RepLabel::Psu2Conjugated => Ok(conjugated(&build_psu2(r)?)),
        RepLabel::Other => Err(Error::InvalidParameters("no builder for label other".into())),
    }
}

/// Runs one suite at one prime. Unsupported primes are errors for suites
/// that need them; `All` skips those parts with a note instead.
pub fn run_suite(suite: Suite, r: u64, opts: &SuiteOptions) -> Result<VerifyReport> {
    check_odd_prime(r)?;
    if suite == Suite::All {
        let mut report = VerifyReport::new(r);
        let inert = check_inert_prime(r).is_ok();
        for s in Suite::EACH {
            if s.needs_inert() && !inert {
                report.note(format!("{s}: skipped, r = {r} is 1 mod 3"));
                continue;
            }
            report.absorb(s.as_str(), run_suite(s, r, opts)?);
        }
        return Ok(report);
    }
    if suite.needs_inert() {
        check_inert_prime(r)?;
    }
    match suite {
        Suite::Relations => relations(r, opts),
        Suite::Symmetries => symmetries(r),
        Suite::Parity => Ok(parity_split(&build_unfolded(r)?)?.report),
        Suite::Identities => identities(r, opts.seed),
        Suite::Svalue => {
            let mut report = VerifyReport::new(r);
            let s = s_value(r)?;
            report.check("s_direct_equals_closed", s.equal, format!("s = {}", s.direct));
            report.scalar("s", &s.direct);
            Ok(report)
        }
        Suite::Theorem2 => theorem2_verify(
            r,
            Theorem2Options {
                crosscheck: opts.crosscheck,
                field_order: opts.field_order,
            },
        ),
        Suite::All => unreachable!(),
    }
}

fn relations(r: u64, opts: &SuiteOptions) -> Result<VerifyReport> {
    let mut report = VerifyReport::new(r);
    let labels = match opts.rep {
        Some(l) => vec![l],
        None if check_inert_prime(r).is_ok() => vec![RepLabel::Psu3Restricted, RepLabel::Psu2],
        None => {
            report.note(format!("psu3: skipped, r = {r} is 1 mod 3"));
            vec![RepLabel::Psu2]
        }
    };
    for label in labels {
        let rep = build_rep(r, label)?;
        let name = label.as_str();
        let (rel, scalars) = projective_relations(&rep);
        report.absorb(name, rel);
        let Some(p) = scalars else { continue };
        let m = opts.field_order.unwrap_or_else(|| super::lift::default_lift_order(&rep));
        match lift_with(&rep, &p, m) {
            Ok(l) => {
                report.check(&format!("{name}.lift"), true, format!("c1 = {}, c2 = {}", l.c1, l.c2));
                report.scalar(&format!("{name}.c1"), &l.c1);
                report.scalar(&format!("{name}.c2"), &l.c2);
            }
            Err(e) => {
                report.check(&format!("{name}.lift"), false, e.to_string());
            }
        }
        let copts = CommutantOptions {
            allow_numeric: opts.float,
            ..opts.commutant
        };
        let res = commutant_dim_with(&rep, copts)?;
        let how = match res.method {
            CommutantMethod::Exact => "exact".to_string(),
            CommutantMethod::Numeric { tol, gap } => format!("float, tol {tol:e}, gap {gap:.3e}"),
        };
        report.note(format!("{name}: commutant dim {} ({how})", res.dim));
        report.scalar(
            &format!("{name}.commutant_dim"),
            &crate::cyclotomic::CycNum::from_int(1, res.dim as i64),
        );
        if matches!(label, RepLabel::Psu2 | RepLabel::Psu2Conjugated | RepLabel::Psu2Le) {
            let irreducible = format!("{name}.commutant_irreducible");
            if matches!(res.method, CommutantMethod::Exact) {
                report.check(&irreducible, res.dim == 1, format!("dim = {}", res.dim));
            } else {
                report.check_numeric(&irreducible, res.dim == 1, format!("dim = {} ({how})", res.dim));
            }
        }
        report.commutant_dim = report.commutant_dim.or(Some(res.dim));
    }
    Ok(report)
}

fn symmetries(r: u64) -> Result<VerifyReport> {
    let data = build_symmetry_data(r)?;
    let rep = build_unfolded(r)?;
    let mut report = VerifyReport::new(r);
    let mut ops = vec![("unit_generator".to_string(), Symmetry::Unit(1))];
    ops.extend(WeylElement::ALL.iter().map(|w| (format!("weyl_{}", w.name()), Symmetry::Weyl(*w))));
    ops.push(("charge_conj".to_string(), Symmetry::ChargeConj));
    for (name, which) in ops {
        let p = symmetry_operator(&data, which);
        report.check(
            &format!("{name}_commutes"),
            p.commutes_with(&rep.s) && p.commutes_with(&rep.t),
            "commutes with S and T",
        );
    }
    let u = symmetry_operator(&data, Symmetry::Unit(1));
    report.check(
        "unit_generator_order",
        u.pow(data.r as usize + 1).is_identity(),
        format!("U^{} = I", r + 1),
    );
    let c = symmetry_operator(&data, Symmetry::ChargeConj).to_matrix(rep.field_order());
    let s2 = rep.s.mul(&rep.s);
    let r2 = crate::cyclotomic::CycNum::from_int(1, (r * r) as i64);
    report.check("s_squared_r2_c", s2.equals(&c.scale(&r2)), format!("S^2 = {} C", r * r));

    let cc = restriction_crosscheck(&data)?;
    report.check(
        "restriction_no_leakage",
        cc.leaking_columns == 0,
        format!("{} leaking columns", cc.leaking_columns),
    );
    report.check("restriction_t_eigen", cc.t_eigen, "orbit vectors are T eigenvectors");
    match &cc.factor {
        Some(f) => {
            report.check("restriction_factor", true, format!("projected S = ({f}) closed-form S"));
            report.scalar("restriction_factor", f);
        }
        None => {
            report.check("restriction_factor", false, "no global constant");
        }
    }
    match reindex_witness(r) {
        Ok(w) => {
            report.check("psu2_reindex_witness", true, format!("S scalar {}, T scalar {}", w.s_scalar, w.t_scalar));
        }
        Err(e) => {
            report.check("psu2_reindex_witness", false, e.to_string());
        }
    }
    Ok(report)
}

fn sweep_check(report: &mut VerifyReport, res: SweepResult) {
    let witness = match &res.first_failure {
        None => format!("{} cases", res.cases),
        Some(p) => format!("{} of {} cases fail, first at {p:?}", res.failures, res.cases),
    };
    report.check(&res.name, res.passed(), witness);
}

fn identities(r: u64, seed: u64) -> Result<VerifyReport> {
    let mut report = VerifyReport::new(r);
    sweep_check(&mut report, gauss_sweep(r)?);
    sweep_check(&mut report, degree2_sweep(r)?);
    sweep_check(&mut report, square_sweep(r, seed)?);
    sweep_check(&mut report, jacobsthal_sweep(r)?);
    if check_inert_prime(r).is_ok() {
        sweep_check(&mut report, alpha_beta_sweep(r)?);
    } else {
        report.note(format!("alpha_beta: skipped, r = {r} is 1 mod 3"));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_names() {
        for s in Suite::EACH.iter().chain([Suite::All].iter()) {
            assert_eq!(s.as_str().parse::<Suite>().unwrap(), *s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn all_at_5_passes() {
        let rep = run_suite(Suite::All, 5, &SuiteOptions::default()).unwrap();
        assert!(rep.passed(), "{:#?}", rep.checks.iter().filter(|c| !c.passed).collect::<Vec<_>>());
        assert_eq!(rep.parity_dims, Some((13, 12)));
    }

    #[test]
    fn all_at_7_skips_psu3_parts() {
        let rep = run_suite(Suite::All, 7, &SuiteOptions::default()).unwrap();
        assert!(rep.passed());
        assert!(rep.notes.iter().any(|n| n.starts_with("theorem2: skipped")));
        assert!(matches!(
            run_suite(Suite::Theorem2, 7, &SuiteOptions::default()),
            Err(Error::UnsupportedPrime { .. })
        ));
    }
}
