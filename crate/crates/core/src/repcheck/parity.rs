use rayon::prelude::*;

use crate::eisenstein::{build_symmetry_data, EisElem};
use crate::error::{Error, Result};
use crate::matrix::{CycMatrix, IntVec};
use crate::rep::{RepLabel, RepPair};
use crate::weil::{orbit_basis, symmetry_operator, OrbitKind, Symmetry};

use super::VerifyReport;

/// The `±1` eigenspaces of `C: e_z ↦ e_{-z}` on the unfolded space.
#[derive(Clone, Debug)]
pub struct ParitySplit {
    /// `e_0` and `e_z + e_{-z}`.
    pub plus: Vec<IntVec>,
    /// `e_z - e_{-z}`.
    pub minus: Vec<IntVec>,
    pub report: VerifyReport,
}

fn image_has_parity(m: &CycMatrix, v: &IntVec, sign: i64, r: u64) -> bool {
    let w = m.mul_intvec(v);
    (0..w.len()).all(|k| {
        let neg = EisElem::from_index(r, k).neg().index();
        // (Cw)_k = w_{-k}; need C w = sign * w.
        if sign == 1 {
            w[neg] == w[k]
        } else {
            (&w[neg] + &w[k]).is_zero()
        }
    })
}

/// Splits the unfolded space by charge conjugation and checks that `Ŝ`, `T̂`
/// preserve both parts, that the odd part is nonzero and that the restricted
/// basis vectors have parity `ε = (-1)^{(r+1)/6}`.
pub fn parity_split(rep: &RepPair) -> Result<ParitySplit> {
    if rep.label != RepLabel::Unfolded {
        return Err(Error::InvalidParameters(format!(
            "parity split needs the unfolded representation, got {}",
            rep.label
        )));
    }
    let r = rep.r;
    let data = build_symmetry_data(r)?;
    let mut plus = vec![IntVec(vec![(0, 1)])];
    let mut minus = Vec::new();
    for z in EisElem::all(r).skip(1) {
        let nz = z.neg();
        if z.index() < nz.index() {
            plus.push(IntVec::from_unsorted(vec![(z.index(), 1), (nz.index(), 1)]));
            minus.push(IntVec::from_unsorted(vec![(z.index(), 1), (nz.index(), -1)]));
        }
    }
    let mut report = VerifyReport::new(r);
    let (p, m) = (plus.len(), minus.len());
    report.parity_dims = Some((p, m));
    report.check("parity_dims_sum", p + m == rep.dim(), format!("{p} + {m} = {}", p + m));
    report.check("parity_minus_nonzero", m > 0, format!("dim minus = {m}"));
    let c = symmetry_operator(&data, Symmetry::ChargeConj);
    report.check("charge_conj_involution", c.compose(&c).is_identity(), "C^2 = I");
    report.check(
        "charge_conj_commutes",
        c.commutes_with(&rep.s) && c.commutes_with(&rep.t),
        "C S = S C and C T = T C",
    );
    let s_ok = plus.par_iter().all(|v| image_has_parity(&rep.s, v, 1, r))
        && minus.par_iter().all(|v| image_has_parity(&rep.s, v, -1, r));
    let t_ok = plus.par_iter().all(|v| image_has_parity(&rep.t, v, 1, r))
        && minus.par_iter().all(|v| image_has_parity(&rep.t, v, -1, r));
    report.check("parity_preserved_by_s", s_ok, "S maps each eigenspace into itself");
    report.check("parity_preserved_by_t", t_ok, "T maps each eigenspace into itself");

    let eps = data.epsilon();
    report.epsilon = Some(eps);
    let kind = if r % 4 == 1 { OrbitKind::Plus } else { OrbitKind::Minus };
    let basis = orbit_basis(&data, kind)?;
    let eig_ok = basis.vectors.iter().all(|v| c.apply(v) == v.scaled(eps as i64));
    report.check(
        "restricted_parity_epsilon",
        eig_ok,
        format!("C e_a = {eps:+} e_a for the restricted basis, eps = (-1)^((r+1)/6)"),
    );
    Ok(ParitySplit { plus, minus, report })
}
