use std::f64::consts::PI;

use crate::arith::{is_prime, lcm};
use crate::cyclotomic::{sqrt_prime, CycNum};
use crate::error::{Error, Result};
use crate::matrix::CycMatrix;
use crate::rational::Rational;
use crate::rep::RepPair;

use super::VerifyReport;

/// `S⁴ = κ·I` and `(ST)³ = λ·S²`, with the matrices they were read from.
#[derive(Clone, Debug)]
pub struct ProjectiveScalars {
    pub kappa: CycNum,
    pub lambda: CycNum,
    pub s2: CycMatrix,
    pub s4: CycMatrix,
    pub st3: CycMatrix,
}

/// Computes `S²`, `S⁴`, `(ST)³` exactly and reads off `κ`, `λ`.
pub fn projective_relations(rep: &RepPair) -> (VerifyReport, Option<ProjectiveScalars>) {
    let mut report = VerifyReport::new(rep.r);
    let s2 = rep.s.mul(&rep.s);
    let s4 = s2.mul(&s2);
    let st = rep.s.mul(&rep.t);
    let st3 = st.mul(&st).mul(&st);
    let kappa = s4.as_scalar();
    let lambda = st3.ratio_to(&s2);
    match &kappa {
        Some(k) => {
            report.check("s4_scalar", true, format!("S^4 = ({k}) I"));
            report.scalar("kappa", k);
        }
        None => {
            report.check("s4_scalar", false, "S^4 is not a scalar matrix");
        }
    }
    match &lambda {
        Some(l) => {
            report.check("st3_proportional_s2", true, format!("(ST)^3 = ({l}) S^2"));
            report.scalar("lambda", l);
        }
        None => {
            report.check("st3_proportional_s2", false, "(ST)^3 is not a multiple of S^2");
        }
    }
    let scalars = match (kappa, lambda) {
        (Some(kappa), Some(lambda)) => Some(ProjectiveScalars { kappa, lambda, s2, s4, st3 }),
        _ => None,
    };
    (report, scalars)
}

/// A projective representation rescaled to an honest one:
/// `S̃ = c1·S`, `T̃ = c2·T` with `(S̃T̃)³ = S̃²` and `S̃⁴ = I`.
#[derive(Clone, Debug)]
pub struct LiftedRep {
    pub base: RepPair,
    pub c1: CycNum,
    pub c2: CycNum,
    pub field_order: u32,
}

impl LiftedRep {
    pub fn s(&self) -> CycMatrix {
        self.base.s.promote(self.field_order).scale(&self.c1)
    }

    pub fn t(&self) -> CycMatrix {
        self.base.t.promote(self.field_order).scale(&self.c2)
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    /// Re-checks `c1⁴·S⁴ = I` and `(c1c2)³·(ST)³ = c1²·S²` entrywise.
    pub fn verify(&self, scalars: &ProjectiveScalars) -> bool {
        honest(&scalars.s2, &scalars.s4, &scalars.st3, &self.c1, &self.c2)
    }

    /// Same as [`LiftedRep::verify`], computing the powers afresh.
    pub fn verify_fresh(&self) -> bool {
        let (_, scalars) = projective_relations(&self.base);
        scalars.is_some_and(|p| self.verify(&p))
    }
}

fn honest(s2: &CycMatrix, s4: &CycMatrix, st3: &CycMatrix, c1: &CycNum, c2: &CycNum) -> bool {
    let c1_4 = c1.pow(4);
    let c1c2_3 = (c1 * c2).pow(3);
    let c1_2 = c1.pow(2);
    let n = s2.dim();
    let one = CycNum::one(1);
    let zero = CycNum::zero(1);
    (0..n).all(|i| {
        (0..n).all(|j| {
            let want = if i == j { &one } else { &zero };
            &c1_4 * s4.get(i, j) == *want && &c1c2_3 * st3.get(i, j) == &c1_2 * s2.get(i, j)
        })
    })
}

/// Default lift field: `Q(ζ_{lcm(24r, m)})` with `m` the order of the entries.
pub fn default_lift_order(rep: &RepPair) -> u32 {
    lcm(24 * rep.r.max(1), rep.field_order() as u64) as u32
}

/// Lifts over the default field.
pub fn lift(rep: &RepPair) -> Result<LiftedRep> {
    lift_in(rep, default_lift_order(rep))
}

pub fn lift_in(rep: &RepPair, field_order: u32) -> Result<LiftedRep> {
    let (_, scalars) = projective_relations(rep);
    let scalars = scalars.ok_or_else(|| Error::NotProjective(format!("{} at r = {}", rep.label, rep.r)))?;
    lift_with(rep, &scalars, field_order)
}

/// Positive real `r^{e/2}` in `Q(ζ_{4r})`.
fn half_power(r: u64, e: i64) -> Result<CycNum> {
    let whole = Rational::from_int(r as i64).pow(e.div_euclid(2) as i32);
    let base = CycNum::from_rational(1, whole);
    if e.rem_euclid(2) == 0 {
        Ok(base)
    } else {
        Ok(&base * &sqrt_prime(r)?)
    }
}

/// Exponents `e` with `r^{e/2}` within 1e-6 (relative) of `target`.
fn modulus_exponent(r: u64, target: f64) -> Option<i64> {
    if (target - 1.0).abs() < 1e-6 {
        return Some(0);
    }
    if r < 2 || !is_prime(r) {
        return None;
    }
    let e = (2.0 * target.ln() / (r as f64).ln()).round() as i64;
    let approx = (r as f64).powf(e as f64 / 2.0);
    ((approx - target).abs() <= 1e-6 * target).then_some(e)
}

/// Smallest `k` in `0..m` (then the modulus factor) with `x = |·|·ζ_m^k` and
/// `x^p = target`, or `None`.
fn root_in_field(r: u64, target: &CycNum, p: u32, m: u32) -> Option<CycNum> {
    let v = target.embed(128).to_c64();
    if v.norm() == 0.0 {
        return None;
    }
    let e = modulus_exponent(r, v.norm().powf(1.0 / p as f64))?;
    let modulus = fit(&half_power(r, e).ok()?, m)?;
    let m_f = m as f64;
    let units = v.arg() / (2.0 * PI) * m_f;
    (0..m).find_map(|k| {
        let resid = (p as f64 * k as f64 - units).rem_euclid(m_f);
        let close = resid.min(m_f - resid) < 1e-6;
        if !close {
            return None;
        }
        let cand = &modulus * &CycNum::root_power(m, k as i64);
        (cand.pow(p as i64) == *target).then_some(cand)
    })
}

/// Solves `c1⁴κ = 1` and `c1c2³λ = 1` in `Q(ζ_m)`, taking the solution with
/// the smallest root-of-unity exponent for `c1` and then for `c2`, and checks
/// the honest relations before returning.
pub fn lift_with(rep: &RepPair, p: &ProjectiveScalars, field_order: u32) -> Result<LiftedRep> {
    let m = field_order;
    if m % rep.field_order() != 0 {
        return Err(Error::FieldOrder {
            field: m,
            required: rep.field_order(),
        });
    }
    let r = rep.r;
    let no_lift = |detail: String| Error::NoLift { order: m, detail };
    let kappa_inv = p.kappa.inverse().ok_or_else(|| no_lift("kappa = 0".into()))?;
    let kappa_inv = fit(&kappa_inv, m).ok_or_else(|| no_lift("1/kappa outside the field".into()))?;
    let c1 = root_in_field(r, &kappa_inv, 4, m)
        .ok_or_else(|| no_lift(format!("no c1 with c1^4 = 1/kappa, kappa = {}", p.kappa)))?;
    let tau = (&c1 * &p.lambda).inverse().ok_or_else(|| no_lift("lambda = 0".into()))?;
    let tau = fit(&tau, m).ok_or_else(|| no_lift("1/(c1 lambda) outside the field".into()))?;
    let c2 = root_in_field(r, &tau, 3, m)
        .ok_or_else(|| no_lift(format!("no c2 with c2^3 = 1/(c1 lambda), lambda = {}", p.lambda)))?;
    let lifted = LiftedRep {
        base: rep.clone(),
        c1,
        c2,
        field_order: m,
    };
    if !lifted.verify(p) {
        return Err(no_lift("solved scalars fail the honest relations".into()));
    }
    Ok(lifted)
}

/// Rewrites `x` over `Q(ζ_m)`, compacting first when its order does not
/// divide `m`; `None` if it does not lie in that field's obvious copy.
pub(crate) fn fit(x: &CycNum, m: u32) -> Option<CycNum> {
    if m % x.order() == 0 {
        return Some(x.promote(m));
    }
    let c = x.compact();
    (m % c.order() == 0).then(|| c.promote(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::psu2::build_psu2;
    use crate::weil::{build_restricted, build_unfolded};

    #[test]
    fn trivial_rep() {
        let rep = RepPair::trivial();
        let (report, p) = projective_relations(&rep);
        assert!(report.passed());
        let p = p.unwrap();
        assert!(p.kappa.is_one() && p.lambda.is_one());
        let l = lift(&rep).unwrap();
        assert!(l.c1.is_one() && l.c2.is_one());
    }

    #[test]
    fn unfolded_r5() {
        let rep = build_unfolded(5).unwrap();
        let (_, p) = projective_relations(&rep);
        let p = p.unwrap();
        assert_eq!(p.kappa, CycNum::from_int(1, 625));
        let l = lift_with(&rep, &p, 120).unwrap();
        assert_eq!(l.c1.pow(4), CycNum::from_rational(1, Rational::new(1, 625)));
        assert_eq!(l.c1, CycNum::from_rational(1, Rational::new(1, 5)));
    }

    #[test]
    fn psu2_and_restricted_lift() {
        for r in [5u64, 11] {
            for rep in [build_psu2(r).unwrap(), build_restricted(r).unwrap()] {
                let l = lift(&rep).unwrap();
                assert!(l.verify_fresh());
                let s = l.s();
                let t = l.t();
                let st = s.mul(&t);
                assert!(st.mul(&st).mul(&st).equals(&s.mul(&s)));
                assert!(s.pow(4).equals(&CycMatrix::identity(s.dim(), l.field_order)));
            }
        }
    }

    #[test]
    fn non_projective_is_reported() {
        let m = 5;
        let s = CycMatrix::from_rows(
            m,
            vec![
                vec![CycNum::from_int(m, 1), CycNum::from_int(m, 1)],
                vec![CycNum::from_int(m, 0), CycNum::from_int(m, 1)],
            ],
        );
        let rep = RepPair::new(5, crate::rep::RepLabel::Other, s, CycMatrix::identity(2, m), vec!["a".into(), "b".into()])
            .unwrap();
        let (report, p) = projective_relations(&rep);
        assert!(p.is_none());
        assert!(!report.passed());
        assert!(matches!(lift(&rep), Err(Error::NotProjective(_))));
    }
}
