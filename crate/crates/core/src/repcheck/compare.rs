use crate::cyclotomic::{gauss_sqrt, CycNum};
use crate::eisenstein::check_inert_prime;
use crate::error::Result;
use crate::psu2::{build_psu2, conjugated};
use crate::rep::RepPair;
use crate::weil::build_restricted;

use super::VerifyReport;

#[derive(Clone, Debug)]
pub struct Proportionality {
    /// `c` with `A.S = c · B.S`, if it exists.
    pub constant: Option<CycNum>,
    pub t_equal: bool,
}

pub fn proportionality(a: &RepPair, b: &RepPair) -> Proportionality {
    if a.dim() != b.dim() {
        return Proportionality { constant: None, t_equal: false };
    }
    Proportionality {
        constant: a.s.ratio_to(&b.s),
        t_equal: a.t.equals(&b.t),
    }
}

/// The PSU(2) partner of the restricted representation: the reindexed form
/// for `r ≡ 1 (mod 4)`, its complex conjugate for `r ≡ 3 (mod 4)`.
pub(crate) fn psu2_partner(r: u64) -> Result<RepPair> {
    let rep = build_psu2(r)?;
    Ok(if r % 4 == 1 { rep } else { conjugated(&rep) })
}

/// `S_ζ · S'_ξ` must be a scalar matrix; for `r ≡ 1 (mod 4)` the scalar must
/// be `r·g` with `g` the Gauss sum. For `r ≡ 3 (mod 4)` the scalar is
/// recorded with its modulus checked against `r^{3/2}` to 1e-9.
pub fn product_check(r: u64) -> Result<VerifyReport> {
    check_inert_prime(r)?;
    let restricted = build_restricted(r)?;
    let partner = psu2_partner(r)?;
    product_check_with(&restricted, &partner)
}

pub(crate) fn product_check_with(restricted: &RepPair, partner: &RepPair) -> Result<VerifyReport> {
    let r = restricted.r;
    let mut report = VerifyReport::new(r);
    let product = restricted.s.mul(&partner.s);
    let n = product.dim();
    let off_zero = (0..n).all(|i| (0..n).all(|j| i == j || product.get(i, j).is_zero()));
    report.check("product_offdiagonal_zero", off_zero, format!("{} off-diagonal entries", n * n - n));
    let Some(scalar) = product.as_scalar() else {
        report.check("product_scalar", false, "S S' is not a scalar matrix");
        return Ok(report);
    };
    report.check("product_scalar", true, format!("S S' = ({scalar}) I"));
    report.scalar("product_scalar", &scalar);
    let g = gauss_sqrt(r)?;
    let r_g = g.scale_int(r as i64);
    if r % 4 == 1 {
        report.check("product_equals_r_sqrt_r", scalar == r_g, "scalar = r * g");
    } else {
        let v = scalar.embed(256).to_c64();
        let want = (r as f64).powf(1.5);
        let err = (v.norm() - want).abs();
        report.check_numeric(
            "product_modulus_r_three_halves",
            err < 1e-9,
            format!("|scalar| = {:.12}, r^(3/2) = {want:.12}, |diff| = {err:.3e}", v.norm()),
        );
        // Express the scalar in units of r*g when that ratio is rational.
        if let Some(q) = r_g.inverse().and_then(|inv| (&scalar * &inv).to_rational()) {
            report.note(format!("r = {r}: S S' = ({q}) * r * g with g the Gauss sum, g^2 = -r"));
            report.scalar("product_over_r_g", &CycNum::from_rational(1, q));
        }
    }
    Ok(report)
}
