//! The unfolded representation on functions on `R_r`, its symmetries, the
//! orbit bases and the restricted `(r-1)/2`-dimensional representation.
//!
//! Matrices are built over `Q(ζ_r)`, the smallest field containing their
//! entries; promote them when a larger field is needed.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::CycNum;
use crate::eisenstein::{build_symmetry_data, check_inert_prime, EisElem, SymmetryData, WeylElement};
use crate::error::{Error, Result};
use crate::matrix::{CycMatrix, IntVec, SignedPerm};
use crate::rational::Rational;
use crate::rep::{RepLabel, RepPair};

fn elem_label(z: &EisElem) -> String {
    format!("{}+{}w", z.a, z.b)
}

/// `Ŝ_{xy} = ζ^{Tr(x̄y)}`, `T̂ = diag(ζ^{-N(x)})`, basis `R_r` in `(a, b)` order.
pub fn build_unfolded(r: u64) -> Result<RepPair> {
    check_inert_prime(r)?;
    let m = r as u32;
    let dim = (r * r) as usize;
    let elems: Vec<EisElem> = EisElem::all(r).collect();
    let s = CycMatrix::from_fn(dim, m, |i, j| {
        CycNum::root_power(m, elems[i].conj().mul(&elems[j]).trace() as i64)
    });
    let diag: Vec<CycNum> = elems.iter().map(|z| CycNum::root_power(m, -(z.norm() as i64))).collect();
    let t = CycMatrix::diagonal(m, &diag);
    RepPair::new(r, RepLabel::Unfolded, s, t, elems.iter().map(elem_label).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Symmetry {
    /// `u^k(e_z) = (-1)^k e_{u^k z}`.
    Unit(u64),
    Weyl(WeylElement),
    /// `C(e_z) = e_{-z}`.
    ChargeConj,
}

/// The signed permutation by which `which` acts on the standard basis.
pub fn symmetry_operator(data: &SymmetryData, which: Symmetry) -> SignedPerm {
    let r = data.r;
    let images = EisElem::all(r)
        .map(|z| match which {
            Symmetry::Unit(k) => {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                (data.u.pow(k).mul(&z).index(), sign)
            }
            Symmetry::Weyl(w) => (w.apply(&z).index(), w.sign()),
            Symmetry::ChargeConj => (z.neg().index(), 1),
        })
        .collect();
    SignedPerm::new(images)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrbitKind {
    Plus,
    Minus,
    PlusO,
    MinusO,
    PlusE,
    MinusE,
}

impl OrbitKind {
    pub fn as_str(self) -> &'static str {
        match self {
            OrbitKind::Plus => "plus",
            OrbitKind::Minus => "minus",
            OrbitKind::PlusO => "plus_o",
            OrbitKind::MinusO => "minus_o",
            OrbitKind::PlusE => "plus_e",
            OrbitKind::MinusE => "minus_e",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitIndex {
    pub a: u64,
    pub j: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitBasis {
    pub r: u64,
    pub kind: OrbitKind,
    pub vectors: Vec<IntVec>,
    pub index_labels: Vec<OrbitIndex>,
}

fn unit_orbit(data: &SymmetryData, start: EisElem) -> IntVec {
    let mut z = start;
    let mut terms = Vec::with_capacity(data.r as usize + 1);
    for j in 0..=data.r {
        terms.push((z.index(), if j % 2 == 0 { 1 } else { -1 }));
        z = z.mul(&data.u);
    }
    IntVec::from_unsorted(terms)
}

fn weyl_sum(z: &EisElem) -> IntVec {
    IntVec::from_unsorted(z.weyl_orbit().iter().map(|(w, s)| (w.index(), *s as i64)).collect())
}

/// Signed orbit sums spanning the symmetric subspaces.
///
/// `Plus`/`Minus` are the `U^(r)` orbit sums of `e_a` and `e_{aρ}`. The Weyl
/// orbit sums use `a·u^{2j}` (`PlusO`, `j = 0..n-1`), `aρu^j` (`MinusO`,
/// `j = 1..n`), `a·u^{n/2+j}` (`PlusE`, `j = 1..n`) and `aρu^{2j}` (`MinusE`,
/// `j = 1..n`). Since `u^{2n} = ω` fixes Weyl orbits, `j = 0` and `j = n`
/// give the same `PlusO` vector. Sums that cancel to zero are dropped.
///
/// Every even power of `u` enters `e^+_a` with sign `+1` and the Weyl signs
/// match the odd powers, so `e^+_a` is the plain sum of its `PlusO` vectors
/// (and `e^-_a` of its `MinusE` vectors); no alternating factor appears.
pub fn orbit_basis(data: &SymmetryData, kind: OrbitKind) -> Result<OrbitBasis> {
    let r = data.r;
    let n = data.n;
    let odd_class = r % 4 == 1;
    match kind {
        OrbitKind::PlusO | OrbitKind::MinusO if !odd_class => {
            return Err(Error::KindMismatch { kind: kind.as_str(), required: 1, r })
        }
        OrbitKind::PlusE | OrbitKind::MinusE if odd_class => {
            return Err(Error::KindMismatch { kind: kind.as_str(), required: 3, r })
        }
        _ => {}
    }
    let mut vectors = Vec::new();
    let mut index_labels = Vec::new();
    for a in 1..=(r - 1) / 2 {
        let base = EisElem::from_int(r, a as i64);
        let based = base.mul(&data.rho);
        match kind {
            OrbitKind::Plus => {
                vectors.push(unit_orbit(data, base));
                index_labels.push(OrbitIndex { a, j: None });
                continue;
            }
            OrbitKind::Minus => {
                vectors.push(unit_orbit(data, based));
                index_labels.push(OrbitIndex { a, j: None });
                continue;
            }
            _ => {}
        }
        let (range, start, step, offset) = match kind {
            OrbitKind::PlusO => (0..n, base, 2, 0),
            OrbitKind::MinusO => (1..n + 1, based, 1, 0),
            OrbitKind::PlusE => (1..n + 1, base, 1, n / 2),
            _ => (1..n + 1, based, 2, 0),
        };
        for j in range {
            let v = weyl_sum(&start.mul(&data.u.pow(offset + step * j)));
            if !v.is_zero() {
                vectors.push(v);
                index_labels.push(OrbitIndex { a, j: Some(j) });
            }
        }
    }
    Ok(OrbitBasis { r, kind, vectors, index_labels })
}

fn restricted_entry(m: u32, traces: &[u64], ab: u64, sign: i64) -> CycNum {
    let terms = traces.iter().enumerate().map(|(j, tr)| {
        let c = if j % 2 == 0 { 1 } else { -1 };
        ((sign * (ab * tr % m as u64) as i64).rem_euclid(m as i64), c)
    });
    CycNum::from_int_terms(m, terms)
}

/// The restricted representation on the span of `e^+_a` (`r ≡ 1 mod 4`) or
/// `e^-_a` (`r ≡ 3 mod 4`), `a = 1..(r-1)/2`, from the closed-form sums.
pub fn build_restricted(r: u64) -> Result<RepPair> {
    let data = build_symmetry_data(r)?;
    build_restricted_with(&data)
}

pub fn build_restricted_with(data: &SymmetryData) -> Result<RepPair> {
    let r = data.r;
    let m = r as u32;
    let h = data.half();
    let traces = data.unit_traces();
    let odd_class = r % 4 == 1;
    let sign = if odd_class { 1 } else { -1 };
    let s = CycMatrix::from_fn(h, m, |i, j| {
        restricted_entry(m, &traces, ((i + 1) * (j + 1)) as u64 % r, sign)
    });
    let diag: Vec<CycNum> = (1..=h as i64).map(|a| CycNum::root_power(m, -sign * a * a)).collect();
    let t = CycMatrix::diagonal(m, &diag);
    let prefix = if odd_class { "e+_" } else { "e-_" };
    let labels = (1..=h).map(|a| format!("{prefix}{a}")).collect();
    RepPair::new(r, RepLabel::Psu3Restricted, s, t, labels)
}

/// `Ŝ·v` for a sparse integer vector, computed from the entry formula
/// without materialising `Ŝ`.
pub fn unfolded_s_apply(r: u64, v: &IntVec) -> Vec<CycNum> {
    let m = r as u32;
    let src: Vec<(EisElem, i64)> = v.0.iter().map(|(k, c)| (EisElem::from_index(r, *k), *c)).collect();
    (0..(r * r) as usize)
        .into_par_iter()
        .map(|x| {
            let xb = EisElem::from_index(r, x).conj();
            let mut coeffs = vec![0i64; r as usize];
            for (y, c) in &src {
                coeffs[xb.mul(y).trace() as usize] += c;
            }
            CycNum::from_int_terms(m, coeffs.into_iter().enumerate().filter(|(_, c)| *c != 0).map(|(e, c)| (e as i64, c)))
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct Crosscheck {
    /// Number of basis images with a component outside the restricted span.
    pub leaking_columns: usize,
    /// Projected `S`: coefficient of `e^±_b` in `Ŝ e^±_a` at `(b, a)`.
    pub projected_s: CycMatrix,
    /// `c` with `projected_s = c · S_closed`, if one exists.
    pub factor: Option<CycNum>,
    /// Whether `T̂ e^±_a = T_aa e^±_a` for every `a`.
    pub t_eigen: bool,
}

impl Crosscheck {
    pub fn passed(&self) -> bool {
        self.leaking_columns == 0 && self.factor.is_some() && self.t_eigen
    }
}

/// Applies `Ŝ` to the basis `e^±_a` of the restricted space in the unfolded
/// space and reads the result back in that basis.
///
/// The vectors `e^±_a` have pairwise disjoint supports, so the coefficient
/// of `e^±_b` is the coordinate at `b` (or `bρ`); whatever remains after
/// subtracting the expansion is leakage.
pub fn restriction_crosscheck(data: &SymmetryData) -> Result<Crosscheck> {
    let r = data.r;
    let m = r as u32;
    let kind = if r % 4 == 1 { OrbitKind::Plus } else { OrbitKind::Minus };
    let basis = orbit_basis(data, kind)?;
    let anchor: Vec<usize> = (1..=data.half() as i64)
        .map(|b| {
            let z = EisElem::from_int(r, b);
            if kind == OrbitKind::Plus { z } else { z.mul(&data.rho) }.index()
        })
        .collect();
    let closed = build_restricted_with(data)?;
    let h = data.half();
    let mut leaking = 0;
    let mut columns = Vec::with_capacity(h);
    for v in &basis.vectors {
        let image = unfolded_s_apply(r, v);
        let coeffs: Vec<CycNum> = anchor.iter().map(|k| image[*k].clone()).collect();
        let mut residual = image;
        for (c, w) in coeffs.iter().zip(&basis.vectors) {
            for (k, sgn) in &w.0 {
                residual[*k] = &residual[*k] - &c.scale(&Rational::from_int(*sgn));
            }
        }
        if !residual.par_iter().all(CycNum::is_zero) {
            leaking += 1;
        }
        columns.push(coeffs);
    }
    let projected_s = CycMatrix::from_fn(h, m, |b, a| columns[a][b].clone());
    let factor = projected_s.ratio_to(&closed.s);
    let t_eigen = basis.vectors.iter().enumerate().all(|(a, v)| {
        let want = closed.t.get(a, a);
        v.0.iter().all(|(k, _)| {
            let z = EisElem::from_index(r, *k);
            CycNum::root_power(m, -(z.norm() as i64)) == *want
        })
    });
    Ok(Crosscheck { leaking_columns: leaking, projected_s, factor, t_eigen })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: u32, k: i64) -> CycNum {
        CycNum::root_power(m, k)
    }

    #[test]
    fn unfolded_r5_entries() {
        let rep = build_unfolded(5).unwrap();
        assert_eq!(rep.dim(), 25);
        assert!((0..25).all(|j| rep.s.get(0, j).is_one()));
        let one = EisElem::one(5).index();
        let w = EisElem::omega(5).index();
        assert_eq!(*rep.t.get(one, one), z(5, -1));
        assert_eq!(*rep.t.get(w, w), z(5, -1));
        assert!(rep.s.equals(&rep.s.transpose()));
        let prod = rep.s.mul(&rep.s.conj());
        assert_eq!(prod.as_scalar(), Some(CycNum::from_int(5, 25)));
    }

    #[test]
    fn unfolded_s_squared_is_charge_conjugation() {
        let data = build_symmetry_data(5).unwrap();
        let rep = build_unfolded(5).unwrap();
        let c = symmetry_operator(&data, Symmetry::ChargeConj).to_matrix(5);
        assert!(rep.s.mul(&rep.s).equals(&c.scale(&CycNum::from_int(5, 25))));
    }

    #[test]
    fn symmetries_r5() {
        let data = build_symmetry_data(5).unwrap();
        let rep = build_unfolded(5).unwrap();
        let c = symmetry_operator(&data, Symmetry::ChargeConj);
        assert!(c.compose(&c).is_identity());
        let u = symmetry_operator(&data, Symmetry::Unit(1));
        assert!(u.pow(6).is_identity());
        assert!(!u.pow(3).is_identity());
        for op in [c, u]
            .into_iter()
            .chain(WeylElement::ALL.iter().map(|w| symmetry_operator(&data, Symmetry::Weyl(*w))))
        {
            assert!(op.commutes_with(&rep.s));
            assert!(op.commutes_with(&rep.t));
        }
    }

    #[test]
    fn plus_orbit_r5() {
        let data = build_symmetry_data(5).unwrap();
        let b = orbit_basis(&data, OrbitKind::Plus).unwrap();
        let u = data.u;
        let mut want = Vec::new();
        let mut p = EisElem::one(5);
        for j in 0..6 {
            want.push((p.index(), if j % 2 == 0 { 1 } else { -1 }));
            p = p.mul(&u);
        }
        assert_eq!(b.vectors[0], IntVec::from_unsorted(want));
        assert_eq!(b.vectors.len(), 2);
        assert!(b.vectors.iter().all(|v| v.len() == 6));
        // For n = 1 the single Weyl orbit sum is e^+_1 itself.
        let o = orbit_basis(&data, OrbitKind::PlusO).unwrap();
        assert_eq!(o.vectors[0], b.vectors[0]);
    }

    fn expand_check(r: u64) {
        let data = build_symmetry_data(r).unwrap();
        let (pk, mk) = if r % 4 == 1 {
            (OrbitKind::PlusO, OrbitKind::MinusO)
        } else {
            (OrbitKind::PlusE, OrbitKind::MinusE)
        };
        let p = orbit_basis(&data, pk).unwrap();
        let m = orbit_basis(&data, mk).unwrap();
        assert_eq!(p.vectors.len() + m.vectors.len(), ((r - 1) * (r - 2) / 6) as usize);
        let mut seen = std::collections::HashSet::new();
        for v in p.vectors.iter().chain(&m.vectors) {
            assert!(v.len() <= 6);
            for (k, c) in &v.0 {
                assert!(c.abs() == 1);
                assert!(seen.insert(*k), "supports overlap");
            }
        }
        let n = data.n;
        let plus = orbit_basis(&data, OrbitKind::Plus).unwrap();
        let minus = orbit_basis(&data, OrbitKind::Minus).unwrap();
        for a in 1..=(r - 1) / 2 {
            let idx = (a - 1) as usize;
            if r % 4 == 1 {
                let mut acc = IntVec::default();
                for (v, l) in p.vectors.iter().zip(&p.index_labels) {
                    if l.a == a {
                        acc = acc.add(v);
                    }
                }
                assert_eq!(acc, plus.vectors[idx]);
                assert!(!m.index_labels.iter().any(|l| l.a == a && l.j == Some(n)));
            } else {
                let mut acc = IntVec::default();
                for (v, l) in m.vectors.iter().zip(&m.index_labels) {
                    if l.a == a {
                        acc = acc.add(v);
                    }
                }
                assert_eq!(acc, minus.vectors[idx]);
                assert!(!p.index_labels.iter().any(|l| l.a == a && l.j == Some(n)));
            }
        }
    }

    #[test]
    fn weyl_orbit_sums_expand_unit_orbits() {
        for r in [5, 11, 17, 23, 29] {
            expand_check(r);
        }
    }

    #[test]
    fn kind_mismatch_is_rejected() {
        let d5 = build_symmetry_data(5).unwrap();
        let d11 = build_symmetry_data(11).unwrap();
        assert!(matches!(orbit_basis(&d5, OrbitKind::PlusE), Err(Error::KindMismatch { .. })));
        assert!(matches!(orbit_basis(&d11, OrbitKind::MinusO), Err(Error::KindMismatch { .. })));
    }

    #[test]
    fn restricted_r5() {
        let rep = build_restricted(5).unwrap();
        assert_eq!(rep.dim(), 2);
        assert_eq!(*rep.t.get(0, 0), z(5, -1));
        assert_eq!(*rep.t.get(1, 1), z(5, -4));
        let want = CycNum::from_int_terms(5, [(2, 1), (3, -1), (1, -2), (4, 2)]);
        assert_eq!(*rep.s.get(0, 0), want);
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(rep.s.get(i, j), rep.s.get(j, i));
                assert_eq!(*rep.s.get(i, j), -rep.s.get(i, j).conj());
            }
        }
    }

    #[test]
    fn restricted_r11_is_real() {
        let rep = build_restricted(11).unwrap();
        assert_eq!(*rep.t.get(2, 2), z(11, 9));
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(*rep.s.get(i, j), rep.s.get(i, j).conj());
            }
        }
    }

    #[test]
    fn crosscheck_r5_r11() {
        for r in [5, 11] {
            let data = build_symmetry_data(r).unwrap();
            let c = restriction_crosscheck(&data).unwrap();
            assert_eq!(c.leaking_columns, 0);
            assert!(c.t_eigen);
            assert!(c.factor.unwrap().is_one());
        }
    }

    #[test]
    fn charge_conjugation_parity_on_restricted_basis() {
        for r in [5u64, 11, 17, 23] {
            let data = build_symmetry_data(r).unwrap();
            let c = symmetry_operator(&data, Symmetry::ChargeConj);
            let kind = if r % 4 == 1 { OrbitKind::Plus } else { OrbitKind::Minus };
            let eps = data.epsilon() as i64;
            for v in orbit_basis(&data, kind).unwrap().vectors {
                assert_eq!(c.apply(&v), v.scaled(eps));
            }
        }
    }
}
