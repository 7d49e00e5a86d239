use crate::eisenstein::{build_symmetry_data, check_inert_prime};
use crate::error::Result;
use crate::weil::{build_restricted_with, orbit_basis, restriction_crosscheck, symmetry_operator, OrbitKind, Symmetry};

use super::compare::{product_check_with, psu2_partner};
use super::lift::{default_lift_order, fit, lift_with, projective_relations};
use super::{proportionality, unitarity_defect, LiftedRep, Scalar, VerifyReport, NUMERIC_TOL};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Theorem2Options {
    /// Also project `Ŝ` onto the orbit basis and compare with the closed form.
    pub crosscheck: bool,
    /// Lift field `Q(ζ_m)`; defaults to `lcm(24r, entry order)`.
    pub field_order: Option<u32>,
}

/// Runs the PSU(2)-inside-PSU(3) pipeline for an inert prime `r`.
///
/// Every stage is a named check. All are exact except `lifted_s_unitary`.
/// Errors are reserved for unsupported primes and malformed options; a
/// failing stage is a failed check in the report.
pub fn theorem2_verify(r: u64, opts: Theorem2Options) -> Result<VerifyReport> {
    check_inert_prime(r)?;
    let data = build_symmetry_data(r)?;
    let restricted = build_restricted_with(&data)?;
    let partner = psu2_partner(r)?;
    let mut report = VerifyReport::new(r);
    report.note(format!(
        "partner: {} (r = {} mod 4), restricted dim {}",
        partner.label,
        r % 4,
        restricted.dim()
    ));

    let prop = proportionality(&restricted, &partner);
    report.check("t_equal", prop.t_equal, "T entrywise equal to the PSU(2) T");
    let c = match prop.constant {
        Some(c) => {
            report.check("s_proportional", true, format!("S = ({c}) S'"));
            report.proportionality_constant = Some(Scalar::new(&c));
            report.scalar("proportionality_constant", &c);
            let c2 = &c * &c;
            report.scalar("proportionality_constant_squared", &c2);
            if r % 4 == 1 {
                let want = crate::cyclotomic::CycNum::from_int(1, r as i64);
                report.check("c_squared_equals_r", c2 == want, format!("c^2 = {c2}"));
            } else {
                report.note(format!("r = {r}: c^2 = {c2}"));
            }
            Some(c)
        }
        None => {
            report.check("s_proportional", false, "no scalar c with S = c S'");
            None
        }
    };

    report.absorb("product", product_check_with(&restricted, &partner)?);

    let m = match opts.field_order {
        Some(m) => m,
        None => default_lift_order(&restricted).max(default_lift_order(&partner)),
    };
    let (rel, scalars) = projective_relations(&restricted);
    report.absorb("restricted", rel);
    let lifted = scalars.as_ref().map(|p| lift_with(&restricted, p, m));
    let lifted = match lifted {
        Some(Ok(l)) => {
            report.check("restricted_lift", true, format!("c1 = {}, c2 = {}", l.c1, l.c2));
            report.scalar("restricted.c1", &l.c1);
            report.scalar("restricted.c2", &l.c2);
            Some(l)
        }
        Some(Err(e)) => {
            report.check("restricted_lift", false, e.to_string());
            None
        }
        None => {
            report.check("restricted_lift", false, "restricted representation is not projective");
            None
        }
    };

    let (rel2, scalars2) = projective_relations(&partner);
    report.absorb("psu2", rel2);
    let own = scalars2.as_ref().map(|p| lift_with(&partner, p, m));
    let own = match own {
        Some(Ok(l)) => {
            report.check("psu2_lift", true, format!("c1 = {}, c2 = {}", l.c1, l.c2));
            report.scalar("psu2.c1", &l.c1);
            report.scalar("psu2.c2", &l.c2);
            Some(l)
        }
        Some(Err(e)) => {
            report.check("psu2_lift", false, e.to_string());
            None
        }
        None => {
            report.check("psu2_lift", false, "PSU(2) representation is not projective");
            None
        }
    };

    // With S = c S' and T = T', the lift of the restricted side induces one of
    // the PSU(2) side: c1' = c1 c, c2' = c2. Equal lifted matrices make the
    // PSU(2) representation a summand.
    if let (Some(l), Some(c), Some(p2)) = (&lifted, &c, &scalars2) {
        let compat = fit(&(&l.c1 * c), m).map(|c1| LiftedRep {
            base: partner.clone(),
            c1,
            c2: l.c2.clone(),
            field_order: m,
        });
        match compat {
            Some(k) => {
                report.check("compatible_lift_honest", k.verify(p2), "c1' = c1 c, c2' = c2");
                let s_eq = k.s().equals(&l.s());
                let t_eq = k.t().equals(&l.t());
                report.check("lifted_s_equal", s_eq, "c1 S = c1' S'");
                report.check("lifted_t_equal", t_eq, "c2 T = c2' T'");
                if let Some(o) = &own {
                    if let (Some(a), Some(b)) = (o.c1.inverse(), o.c2.inverse()) {
                        report.scalar("psu2.c1_twist", &(&k.c1 * &a));
                        report.scalar("psu2.c2_twist", &(&k.c2 * &b));
                    }
                }
                report.scalar("psu2.c1_compatible", &k.c1);
            }
            None => {
                report.check("compatible_lift_honest", false, "c1 c does not lie in the lift field");
            }
        }
        let defect = unitarity_defect(&l.s());
        report.check_numeric(
            "lifted_s_unitary",
            defect < NUMERIC_TOL,
            format!("max |S S^H - I| = {defect:.3e}, tol {NUMERIC_TOL:e}"),
        );
    }

    let eps = data.epsilon();
    report.epsilon = Some(eps);
    let kind = if r % 4 == 1 { OrbitKind::Plus } else { OrbitKind::Minus };
    let basis = orbit_basis(&data, kind)?;
    let conj = symmetry_operator(&data, Symmetry::ChargeConj);
    let parity_ok = basis.vectors.iter().all(|v| conj.apply(v) == v.scaled(eps as i64));
    report.check(
        "parity_epsilon",
        parity_ok,
        format!("C e_a = {eps:+} e_a for all {} basis vectors", basis.vectors.len()),
    );

    if opts.crosscheck {
        let cc = restriction_crosscheck(&data)?;
        report.check("crosscheck_no_leakage", cc.leaking_columns == 0, format!("{} leaking columns", cc.leaking_columns));
        report.check("crosscheck_t_eigen", cc.t_eigen, "orbit vectors are T eigenvectors");
        match &cc.factor {
            Some(f) => {
                report.check("crosscheck_factor", true, format!("projected S = ({f}) closed-form S"));
                report.scalar("crosscheck_factor", f);
            }
            None => {
                report.check("crosscheck_factor", false, "projected S is not a multiple of the closed form");
            }
        }
    }
    report.note(format!("rho = {}+{}w with N(rho) = {}", data.rho.a, data.rho.b, data.rho_norm));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn r5_passes_with_negative_epsilon() {
        let rep = theorem2_verify(5, Theorem2Options { crosscheck: true, field_order: None }).unwrap();
        assert!(rep.passed(), "{:#?}", rep.checks.iter().filter(|c| !c.passed).collect::<Vec<_>>());
        assert_eq!(rep.epsilon, Some(-1));
        let c = rep.proportionality_constant.unwrap();
        assert!((c.re + 5f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn r11_passes_with_positive_epsilon() {
        let rep = theorem2_verify(11, Theorem2Options::default()).unwrap();
        assert!(rep.passed(), "{:#?}", rep.checks.iter().filter(|c| !c.passed).collect::<Vec<_>>());
        assert_eq!(rep.epsilon, Some(1));
    }

    #[test]
    fn r7_is_unsupported() {
        assert!(matches!(
            theorem2_verify(7, Theorem2Options::default()),
            Err(Error::UnsupportedPrime { r: 7, .. })
        ));
    }
}
