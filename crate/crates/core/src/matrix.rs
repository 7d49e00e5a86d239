//! Square matrices over `Q(ζ_m)`, sparse integer vectors and signed
//! permutations.

use std::ops::Index;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::arith;
use crate::cyclotomic::CycNum;
use crate::rational::Rational;

/// Sparse integer vector over the standard basis, sorted by index.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IntVec(pub Vec<(usize, i64)>);

impl IntVec {
    pub fn from_unsorted(mut terms: Vec<(usize, i64)>) -> Self {
        terms.sort_by_key(|t| t.0);
        let mut out: Vec<(usize, i64)> = Vec::with_capacity(terms.len());
        for (i, c) in terms {
            match out.last_mut() {
                Some((li, lc)) if *li == i => *lc += c,
                _ => out.push((i, c)),
            }
            if out.last().is_some_and(|t| t.1 == 0) {
                out.pop();
            }
        }
        IntVec(out)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.0
            .binary_search_by_key(&i, |t| t.0)
            .map(|k| self.0[k].1)
            .unwrap_or(0)
    }

    pub fn scaled(&self, c: i64) -> IntVec {
        IntVec::from_unsorted(self.0.iter().map(|(i, v)| (*i, v * c)).collect())
    }

    pub fn add(&self, other: &IntVec) -> IntVec {
        IntVec::from_unsorted(self.0.iter().chain(other.0.iter()).copied().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct CycMatrix {
    n: usize,
    order: u32,
    data: Vec<CycNum>,
}

impl CycMatrix {
    /// Builds the matrix entrywise; every entry is promoted to `Q(ζ_order)`.
    pub fn from_fn<F>(n: usize, order: u32, f: F) -> Self
    where
        F: Fn(usize, usize) -> CycNum + Sync,
    {
        let data = (0..n * n)
            .into_par_iter()
            .map(|k| f(k / n, k % n).promote(order))
            .collect();
        CycMatrix { n, order, data }
    }

    pub fn from_rows(order: u32, rows: Vec<Vec<CycNum>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        let data = rows.into_iter().flatten().map(|x| x.promote(order)).collect();
        CycMatrix { n, order, data }
    }

    pub fn identity(n: usize, order: u32) -> Self {
        Self::from_fn(n, order, |i, j| {
            if i == j {
                CycNum::one(order)
            } else {
                CycNum::zero(order)
            }
        })
    }

    pub fn diagonal(order: u32, diag: &[CycNum]) -> Self {
        Self::from_fn(diag.len(), order, |i, j| {
            if i == j {
                diag[i].clone()
            } else {
                CycNum::zero(order)
            }
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &CycNum {
        &self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[CycNum] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn entries(&self) -> &[CycNum] {
        &self.data
    }

    pub fn diag(&self) -> Vec<CycNum> {
        (0..self.n).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn promote(&self, order: u32) -> CycMatrix {
        if order == self.order {
            return self.clone();
        }
        CycMatrix {
            n: self.n,
            order,
            data: self.data.par_iter().map(|x| x.promote(order)).collect(),
        }
    }

    pub fn map<F>(&self, f: F) -> CycMatrix
    where
        F: Fn(&CycNum) -> CycNum + Sync + Send,
    {
        let data: Vec<CycNum> = self.data.par_iter().map(f).collect();
        let order = data
            .iter()
            .fold(self.order as u64, |o, x| arith::lcm(o, x.order() as u64)) as u32;
        CycMatrix {
            n: self.n,
            order,
            data: data.into_iter().map(|x| x.promote(order)).collect(),
        }
    }

    pub fn conj(&self) -> CycMatrix {
        self.map(CycNum::conj)
    }

    pub fn transpose(&self) -> CycMatrix {
        let n = self.n;
        CycMatrix {
            n,
            order: self.order,
            data: (0..n * n).map(|k| self.get(k % n, k / n).clone()).collect(),
        }
    }

    pub fn scale(&self, c: &CycNum) -> CycMatrix {
        self.map(|x| x * c)
    }

    pub fn add(&self, rhs: &CycMatrix) -> CycMatrix {
        assert_eq!(self.n, rhs.n);
        let m = arith::lcm(self.order as u64, rhs.order as u64) as u32;
        CycMatrix {
            n: self.n,
            order: m,
            data: self
                .data
                .par_iter()
                .zip(rhs.data.par_iter())
                .map(|(a, b)| (a + b).promote(m))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &CycMatrix) -> CycMatrix {
        self.add(&rhs.scale(&CycNum::from_int(1, -1)))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn mul(&self, rhs: &CycMatrix) -> CycMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let m = arith::lcm(self.order as u64, rhs.order as u64) as u32;
        let rows: Vec<Vec<CycNum>> = (0..n)
            .into_par_iter()
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut buf = vec![Rational::ZERO; m as usize];
                        for k in 0..n {
                            let a = self.get(i, k);
                            if a.num_terms() == 0 {
                                continue;
                            }
                            CycNum::mul_acc_into(&mut buf, a, rhs.get(k, j));
                        }
                        CycNum::from_dense(buf)
                    })
                    .collect()
            })
            .collect();
        CycMatrix {
            n,
            order: m,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn pow(&self, e: u32) -> CycMatrix {
        let mut acc = CycMatrix::identity(self.n, self.order);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn mul_vec(&self, v: &[CycNum]) -> Vec<CycNum> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .into_par_iter()
            .map(|i| {
                let mut buf = vec![Rational::ZERO; self.order as usize];
                for (k, x) in v.iter().enumerate() {
                    if x.num_terms() > 0 {
                        CycNum::mul_acc_into(&mut buf, self.get(i, k), &x.promote(self.order));
                    }
                }
                CycNum::from_dense(buf)
            })
            .collect()
    }

    /// `M·v` for a sparse integer vector.
    pub fn mul_intvec(&self, v: &IntVec) -> Vec<CycNum> {
        (0..self.n)
            .into_par_iter()
            .map(|i| {
                let mut buf = vec![Rational::ZERO; self.order as usize];
                for (k, c) in &v.0 {
                    let x = self.get(i, *k);
                    let f = Rational::from_int(*c);
                    for (e, a) in x.terms() {
                        buf[*e as usize].add_mul(a, &f);
                    }
                }
                CycNum::from_dense(buf)
            })
            .collect()
    }

    pub fn equals(&self, rhs: &CycMatrix) -> bool {
        self.n == rhs.n && self.data.par_iter().zip(rhs.data.par_iter()).all(|(a, b)| a == b)
    }

    /// `Some(c)` with `self = c · rhs`, if such a scalar exists.
    pub fn ratio_to(&self, rhs: &CycMatrix) -> Option<CycNum> {
        if self.n != rhs.n {
            return None;
        }
        let pivot = rhs.data.iter().position(|x| !x.is_zero());
        let c = match pivot {
            None => {
                return self.data.iter().all(CycNum::is_zero).then(|| CycNum::zero(1));
            }
            Some(k) => &self.data[k] * &rhs.data[k].inverse()?,
        };
        let ok = self
            .data
            .par_iter()
            .zip(rhs.data.par_iter())
            .all(|(a, b)| *a == &c * b);
        ok.then_some(c)
    }

    /// `Some(c)` if `self = c · I`.
    pub fn as_scalar(&self) -> Option<CycNum> {
        let c = self.get(0, 0).clone();
        let ok = (0..self.n).into_par_iter().all(|i| {
            (0..self.n).all(|j| {
                let x = self.get(i, j);
                if i == j {
                    *x == c
                } else {
                    x.is_zero()
                }
            })
        });
        ok.then_some(c)
    }

    pub fn to_c64(&self) -> Vec<Complex64> {
        self.data.par_iter().map(CycNum::embed_c64).collect()
    }
}

impl Index<(usize, usize)> for CycMatrix {
    type Output = CycNum;
    fn index(&self, (i, j): (usize, usize)) -> &CycNum {
        self.get(i, j)
    }
}

/// A signed permutation `e_j ↦ sign_j · e_{target_j}` of the standard basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedPerm {
    images: Vec<(usize, i8)>,
}

impl SignedPerm {
    pub fn new(images: Vec<(usize, i8)>) -> Self {
        let n = images.len();
        let mut seen = vec![false; n];
        for &(t, s) in &images {
            assert!(t < n && !seen[t], "not a permutation");
            assert!(s == 1 || s == -1, "signs must be ±1");
            seen[t] = true;
        }
        SignedPerm { images }
    }

    pub fn identity(n: usize) -> Self {
        SignedPerm { images: (0..n).map(|i| (i, 1)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, j: usize) -> (usize, i8) {
        self.images[j]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &SignedPerm) -> SignedPerm {
        SignedPerm {
            images: other
                .images
                .iter()
                .map(|&(t, s)| {
                    let (t2, s2) = self.images[t];
                    (t2, s * s2)
                })
                .collect(),
        }
    }

    pub fn inverse(&self) -> SignedPerm {
        let mut images = vec![(0, 1); self.images.len()];
        for (j, &(t, s)) in self.images.iter().enumerate() {
            images[t] = (j, s);
        }
        SignedPerm { images }
    }

    pub fn pow(&self, e: usize) -> SignedPerm {
        (0..e).fold(SignedPerm::identity(self.dim()), |acc, _| self.compose(&acc))
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(j, &(t, s))| t == j && s == 1)
    }

    pub fn apply(&self, v: &IntVec) -> IntVec {
        IntVec::from_unsorted(
            v.0.iter()
                .map(|&(j, c)| {
                    let (t, s) = self.images[j];
                    (t, c * s as i64)
                })
                .collect(),
        )
    }

    pub fn to_matrix(&self, order: u32) -> CycMatrix {
        let n = self.dim();
        CycMatrix::from_fn(n, order, |i, j| {
            let (t, s) = self.images[j];
            if t == i {
                CycNum::from_int(order, s as i64)
            } else {
                CycNum::zero(order)
            }
        })
    }

    /// `P·M = M·P`, checked entrywise without forming either product:
    /// `(PM)[π(i), j] = s_i M[i, j]` and `(MP)[π(i), j] = s_j M[π(i), π(j)]`.
    pub fn commutes_with(&self, m: &CycMatrix) -> bool {
        let n = self.dim();
        assert_eq!(n, m.dim());
        (0..n).into_par_iter().all(|i| {
            let (pi, si) = self.images[i];
            (0..n).all(|j| {
                let (pj, sj) = self.images[j];
                let lhs = m.get(i, j);
                let rhs = m.get(pi, pj);
                if si == sj {
                    lhs == rhs
                } else {
                    (lhs + rhs).is_zero()
                }
            })
        })
    }

    /// Conjugation `P·M·P⁻¹`.
    pub fn conjugate(&self, m: &CycMatrix) -> CycMatrix {
        let n = self.dim();
        let inv = self.inverse();
        CycMatrix::from_fn(n, m.order(), |a, b| {
            // (P M P^-1)[a, b] = s * M[i, j] with a = π(i), b = π(j)
            let (i, si) = inv.images[a];
            let (j, sj) = inv.images[b];
            let x = m.get(i, j);
            if si == sj {
                x.clone()
            } else {
                -x
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: u32, k: i64) -> CycNum {
        CycNum::root_power(m, k)
    }

    fn sample(n: usize) -> CycMatrix {
        CycMatrix::from_fn(n, 5, |i, j| {
            CycNum::from_int_terms(5, [((i * j) as i64, 1), ((i + 2 * j) as i64, (i as i64) - 1)])
        })
    }

    #[test]
    fn identity_is_neutral() {
        let a = sample(3);
        assert!(a.mul(&CycMatrix::identity(3, 5)).equals(&a));
        assert!(CycMatrix::identity(3, 5).mul(&a).equals(&a));
    }

    #[test]
    fn scalar_detection() {
        let c = &z(5, 1) + &z(5, 3);
        let m = CycMatrix::identity(4, 5).scale(&c);
        assert_eq!(m.as_scalar().unwrap(), c);
        assert!(sample(3).as_scalar().is_none());
        let a = sample(3);
        let b = a.scale(&c);
        assert_eq!(b.ratio_to(&a).unwrap(), c);
    }

    #[test]
    fn signed_perm_matches_dense_product() {
        let p = SignedPerm::new(vec![(2, 1), (0, -1), (1, -1)]);
        let pm = p.to_matrix(5);
        let a = sample(3);
        let lhs = pm.mul(&a);
        let rhs = a.mul(&pm);
        assert_eq!(p.commutes_with(&a), lhs.equals(&rhs));
        let conj = pm.mul(&a).mul(&p.inverse().to_matrix(5));
        assert!(p.conjugate(&a).equals(&conj));
        assert!(p.compose(&p.inverse()).is_identity());
        let diag = CycMatrix::identity(3, 5).scale(&z(5, 2));
        assert!(p.commutes_with(&diag));
    }

    #[test]
    fn intvec_merges() {
        let v = IntVec::from_unsorted(vec![(3, 1), (1, 2), (3, -1), (0, 4)]);
        assert_eq!(v.0, vec![(0, 4), (1, 2)]);
        assert_eq!(v.coeff(1), 2);
        assert_eq!(v.coeff(3), 0);
    }

    #[test]
    fn mul_intvec_agrees_with_mul_vec() {
        let a = sample(3);
        let v = IntVec(vec![(0, 1), (2, -3)]);
        let dense = vec![CycNum::one(5), CycNum::zero(5), CycNum::from_int(5, -3)];
        let x = a.mul_intvec(&v);
        let y = a.mul_vec(&dense);
        assert!(x.iter().zip(&y).all(|(p, q)| p == q));
    }
}
