//! Quantum PSU(2) matrices at `ξ = ζ⁴`, in the literature form and in the
//! reindexed form `S'_{ab} = χ(ab)(ζ^{2ab} - ζ^{-2ab})`, `T' = diag(ζ^{-a²})`.

use serde::{Deserialize, Serialize};

use crate::arith::{self, is_prime};
use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::matrix::{CycMatrix, SignedPerm};
use crate::rep::{RepLabel, RepPair};

/// Quadratic character mod `r` with `χ(0) = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadChar {
    pub r: u64,
    pub values: Vec<i8>,
}

impl QuadChar {
    pub fn new(r: u64) -> Result<Self> {
        check_odd_prime(r)?;
        let mut values = vec![-1i8; r as usize];
        values[0] = 0;
        for x in 1..r {
            values[(x * x % r) as usize] = 1;
        }
        Ok(QuadChar { r, values })
    }

    pub fn chi(&self, k: i64) -> i64 {
        self.values[arith::modulo(k, self.r) as usize] as i64
    }
}

pub fn check_odd_prime(r: u64) -> Result<()> {
    if r < 3 || !is_prime(r) {
        return Err(Error::NotOddPrime(r));
    }
    Ok(())
}

fn labels(h: usize) -> Vec<String> {
    (1..=h).map(|a| format!("e'_{a}")).collect()
}

/// `S'_{ab} = ξ^{2ab-a-b} - ξ^{-2ab+a+b-1}`, `T'_{aa} = ξ^{-a(a-1)}`, `ξ = ζ⁴`.
pub fn build_psu2_le_form(r: u64) -> Result<RepPair> {
    check_odd_prime(r)?;
    let m = r as u32;
    let h = ((r - 1) / 2) as usize;
    let xi = |k: i64| CycNum::root_power(m, 4 * k);
    let s = CycMatrix::from_fn(h, m, |i, j| {
        let (a, b) = (i as i64 + 1, j as i64 + 1);
        &xi(2 * a * b - a - b) - &xi(-2 * a * b + a + b - 1)
    });
    let diag: Vec<CycNum> = (1..=h as i64).map(|a| xi(-a * (a - 1))).collect();
    RepPair::new(r, RepLabel::Psu2Le, s, CycMatrix::diagonal(m, &diag), labels(h))
}

/// `S'_{ab} = χ(ab)(ζ^{2ab} - ζ^{-2ab})`, `T'_{aa} = ζ^{-a²}`.
pub fn build_psu2(r: u64) -> Result<RepPair> {
    let chi = QuadChar::new(r)?;
    let m = r as u32;
    let h = ((r - 1) / 2) as usize;
    let s = CycMatrix::from_fn(h, m, |i, j| {
        let ab = (i as i64 + 1) * (j as i64 + 1);
        CycNum::from_int_terms(m, [(2 * ab, 1), (-2 * ab, -1)]).scale_int(chi.chi(ab))
    });
    let diag: Vec<CycNum> = (1..=h as i64).map(|a| CycNum::root_power(m, -a * a)).collect();
    RepPair::new(r, RepLabel::Psu2, s, CycMatrix::diagonal(m, &diag), labels(h))
}

/// Entrywise complex conjugate, labelled `psu2_conjugated`.
pub fn conjugated(rep: &RepPair) -> RepPair {
    RepPair {
        label: RepLabel::Psu2Conjugated,
        ..rep.conj()
    }
}

#[derive(Clone, Debug)]
pub struct Witness {
    pub perm: SignedPerm,
    /// `P S_from P⁻¹ = s_scalar · S_to`.
    pub s_scalar: CycNum,
    /// `P T_from P⁻¹ = t_scalar · T_to`.
    pub t_scalar: CycNum,
    pub method: WitnessMethod,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessMethod {
    ClosedForm,
    Search,
}

fn check_witness(perm: &SignedPerm, from: &RepPair, to: &RepPair) -> Option<(CycNum, CycNum)> {
    let s = perm.conjugate(&from.s).ratio_to(&to.s)?;
    let t = perm.conjugate(&from.t).ratio_to(&to.t)?;
    Some((s, t))
}

/// Signed permutation taking the literature form to the reindexed form.
///
/// With `A = 2a - 1` the literature matrices are `ζ^{-2}(ζ^{2AB} - ζ^{-2AB})`
/// and `ζ·ζ^{-A²}`, so `e_a ↦ σ_a χ(a') e_{a'}` with `a' = min(A, r - A)` and
/// `σ_a = -1` when `A > (r-1)/2` relates them up to the global scalars
/// `ζ^{-2}` on `S` and `ζ` on `T`. If that check fails a search over
/// diagonal-respecting signed permutations is run instead.
pub fn reindex_witness(r: u64) -> Result<Witness> {
    let from = build_psu2_le_form(r)?;
    let to = build_psu2(r)?;
    let chi = QuadChar::new(r)?;
    let h = (r - 1) / 2;
    let images = (1..=h)
        .map(|a| {
            let big_a = 2 * a - 1;
            let (target, sigma) = if big_a <= h { (big_a, 1) } else { (r - big_a, -1) };
            ((target - 1) as usize, (sigma * chi.chi(target as i64)) as i8)
        })
        .collect();
    let perm = SignedPerm::new(images);
    if let Some((s_scalar, t_scalar)) = check_witness(&perm, &from, &to) {
        return Ok(Witness { perm, s_scalar, t_scalar, method: WitnessMethod::ClosedForm });
    }
    find_signed_conjugacy(&from, &to).ok_or_else(|| Error::InvalidParameters(format!(
        "no signed permutation relates the two PSU(2) forms at r = {r}"
    )))
}

/// Searches for a signed permutation `P` and scalars with
/// `P S_a P⁻¹ = c·S_b` and `P T_a P⁻¹ = d·T_b`, `T_a`, `T_b` diagonal.
///
/// The image of the first basis vector fixes `d`, which fixes the permutation
/// when the diagonal of `T_b` has distinct entries; the signs then follow
/// from the first row of `S`. Returns `None` if `S_a` has a zero diagonal.
pub fn find_signed_conjugacy(a: &RepPair, b: &RepPair) -> Option<Witness> {
    let n = a.dim();
    if n != b.dim() || !a.t.is_diagonal() || !b.t.is_diagonal() {
        return None;
    }
    let ta = a.t.diag();
    let tb = b.t.diag();
    for k in 0..n {
        let d = &ta[0] * &tb[k].inverse()?;
        let mut pi = Vec::with_capacity(n);
        for x in &ta {
            let hits: Vec<usize> = (0..n).filter(|j| *x == &d * &tb[*j]).collect();
            if hits.len() != 1 {
                break;
            }
            pi.push(hits[0]);
        }
        if pi.len() != n {
            continue;
        }
        let i0 = (0..n).find(|i| !a.s.get(*i, *i).is_zero())?;
        let Some(c) = b.s.get(pi[i0], pi[i0]).inverse().map(|inv| a.s.get(i0, i0) * &inv) else {
            continue;
        };
        // With s_{i0} = 1: s_j = S_a[i0][j] / (c S_b[π i0][π j]).
        let mut images = Vec::with_capacity(n);
        for j in 0..n {
            let sa = a.s.get(i0, j);
            let sb = &c * b.s.get(pi[i0], pi[j]);
            let sign = if *sa == sb {
                1
            } else if *sa == -&sb {
                -1
            } else {
                break;
            };
            images.push((pi[j], sign));
        }
        if images.len() != n {
            continue;
        }
        let perm = SignedPerm::new(images);
        if let Some((s_scalar, t_scalar)) = check_witness(&perm, a, b) {
            return Some(Witness { perm, s_scalar, t_scalar, method: WitnessMethod::Search });
        }
    }
    None
}
