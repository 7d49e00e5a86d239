//! Exact arithmetic in cyclotomic fields `Q(ζ_m)`.
//!
//! A [`CycNum`] is a formal rational combination `Σ c_k ζ_m^k` over all `m`
//! exponents, so multiplication is a cyclic convolution and no power basis has
//! to be chosen up front. Because the powers of `ζ_m` are linearly dependent,
//! two different term lists can describe the same field element; equality and
//! zero tests go through [`CycNum::canonical`], which rewrites the element in a
//! fixed `Q`-basis of size `φ(m)`.
//!
//! Canonical basis: for `m = Π q_i` with `q_i = p_i^{e_i}`, the field is the
//! tensor product of the `Q(ζ_{q_i})`, and an exponent `k` is a basis exponent
//! iff `(k mod q_i) < φ(q_i)` for every `i`. Exponents outside that set are
//! rewritten with the relation `Σ_{t<p} ζ_q^{j + t q/p} = 0`, one prime power at
//! a time. The result is the unique coordinate vector in that basis, so an
//! element is zero iff its term list is divisible by `Φ_m(x)`.

mod embed;
mod serial;

pub use embed::HpComplex;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::arith::{self, factorize, legendre, mod_inv};
use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Debug)]
pub struct CycNum {
    order: u32,
    /// Sorted by exponent, exponents unique and in `[0, order)`, no zero coefficients.
    terms: Vec<(u32, Rational)>,
}

impl CycNum {
    pub fn zero(order: u32) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        CycNum { order, terms: Vec::new() }
    }

    pub fn one(order: u32) -> Self {
        Self::from_rational(order, Rational::ONE)
    }

    pub fn from_int(order: u32, n: i64) -> Self {
        Self::from_rational(order, Rational::from_int(n))
    }

    pub fn from_rational(order: u32, q: Rational) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        if q.is_zero() {
            return Self::zero(order);
        }
        CycNum { order, terms: vec![(0, q)] }
    }

    /// `ζ_m^k`, with `k` reduced modulo `m`.
    pub fn root_power(m: u32, k: i64) -> Self {
        assert!(m >= 1, "cyclotomic order must be positive");
        CycNum {
            order: m,
            terms: vec![(arith::modulo(k, m as u64) as u32, Rational::ONE)],
        }
    }

    /// Builds `Σ c ζ_m^e`, reducing exponents and merging repeated ones.
    pub fn from_terms<I>(order: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        assert!(order >= 1, "cyclotomic order must be positive");
        let mut v: Vec<(u32, Rational)> = terms
            .into_iter()
            .map(|(e, c)| (arith::modulo(e, order as u64) as u32, c))
            .collect();
        v.sort_by_key(|t| t.0);
        CycNum { order, terms: merge_sorted(v) }
    }

    /// `Σ c ζ_m^e` for integer coefficients.
    pub fn from_int_terms<I>(order: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, i64)>,
    {
        Self::from_terms(order, terms.into_iter().map(|(e, c)| (e, Rational::from_int(c))))
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn terms(&self) -> &[(u32, Rational)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Rewrites the element over `Q(ζ_m)` for a multiple `m` of the current order.
    pub fn promote(&self, m: u32) -> CycNum {
        assert!(
            m % self.order == 0,
            "cannot promote order {} to {}",
            self.order,
            m
        );
        if m == self.order {
            return self.clone();
        }
        let f = m / self.order;
        CycNum {
            order: m,
            terms: self.terms.iter().map(|(e, c)| (e * f, c.clone())).collect(),
        }
    }

    /// Same element written over the smallest `Q(ζ_d)` obtainable by dividing
    /// all exponents (and the order) by their common gcd.
    pub fn compact(&self) -> CycNum {
        let g = self
            .terms
            .iter()
            .fold(self.order as u64, |g, (e, _)| arith::gcd(g, *e as u64)) as u32;
        if g <= 1 {
            return self.clone();
        }
        CycNum {
            order: self.order / g,
            terms: self.terms.iter().map(|(e, c)| (e / g, c.clone())).collect(),
        }
    }

    /// The automorphism `ζ_m ↦ ζ_m^t`.
    pub fn galois(&self, t: i64) -> Result<CycNum> {
        let m = self.order as u64;
        if arith::gcd(arith::modulo(t, m), m) != 1 && m > 1 {
            return Err(Error::NotAUnit { t, order: self.order });
        }
        Ok(self.galois_unchecked(t))
    }

    fn galois_unchecked(&self, t: i64) -> CycNum {
        let m = self.order as u64;
        let t = arith::modulo(t, m);
        let mut v: Vec<(u32, Rational)> = self
            .terms
            .iter()
            .map(|(e, c)| (((*e as u64 * t) % m) as u32, c.clone()))
            .collect();
        v.sort_by_key(|t| t.0);
        CycNum { order: self.order, terms: v }
    }

    /// Complex conjugation, `galois(·, -1)`.
    pub fn conj(&self) -> CycNum {
        self.galois_unchecked(-1)
    }

    pub fn scale(&self, q: &Rational) -> CycNum {
        if q.is_zero() {
            return CycNum::zero(self.order);
        }
        CycNum {
            order: self.order,
            terms: self.terms.iter().map(|(e, c)| (*e, c * q)).collect(),
        }
    }

    pub fn scale_int(&self, n: i64) -> CycNum {
        self.scale(&Rational::from_int(n))
    }

    /// Multiplies by the monomial `ζ_m^k` (same order).
    pub fn mul_root(&self, k: i64) -> CycNum {
        let m = self.order as u64;
        let k = arith::modulo(k, m);
        let mut v: Vec<(u32, Rational)> = self
            .terms
            .iter()
            .map(|(e, c)| (((*e as u64 + k) % m) as u32, c.clone()))
            .collect();
        v.sort_by_key(|t| t.0);
        CycNum { order: self.order, terms: v }
    }

    /// Coordinates in the canonical basis described in the module docs.
    pub fn canonical(&self) -> Vec<(u32, Rational)> {
        let m = self.order as usize;
        if self.terms.is_empty() {
            return Vec::new();
        }
        if m == 1 {
            return merge_sorted(self.terms.clone());
        }
        let mut dense = vec![Rational::ZERO; m];
        for (e, c) in &self.terms {
            dense[*e as usize].add_assign_ref(c);
        }
        reduce_dense(&mut dense, self.order);
        dense
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (e as u32, c))
            .collect()
    }

    /// The same element with its terms replaced by canonical coordinates.
    /// Keeps coefficients small across long chains of operations.
    pub fn reduced(&self) -> CycNum {
        CycNum {
            order: self.order,
            terms: self.canonical(),
        }
    }

    pub fn is_zero(&self) -> bool {
        if self.terms.is_empty() {
            return true;
        }
        // A single nonzero monomial is never zero.
        if self.terms.len() == 1 {
            return false;
        }
        self.compact().canonical().is_empty()
    }

    /// `Some(q)` if the element is the rational number `q`.
    pub fn to_rational(&self) -> Option<Rational> {
        let c = self.compact().canonical();
        match c.as_slice() {
            [] => Some(Rational::ZERO),
            [(0, q)] => Some(q.clone()),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.to_rational().is_some_and(|q| q.is_one())
    }

    /// Multiplicative inverse via the product of the nontrivial Galois
    /// conjugates: `x⁻¹ = (Π_{σ≠1} σ(x)) / N(x)`.
    pub fn inverse(&self) -> Option<CycNum> {
        if self.is_zero() {
            return None;
        }
        let x = self.compact();
        let d = x.order as u64;
        if let Some(q) = x.to_rational() {
            return Some(CycNum::from_rational(self.order, q.recip()?));
        }
        let mut conj_prod = CycNum::one(x.order);
        for t in 2..d {
            if arith::gcd(t, d) == 1 {
                conj_prod = &conj_prod * &x.galois_unchecked(t as i64);
            }
        }
        let norm = (&x * &conj_prod).to_rational()?;
        let inv = conj_prod.scale(&norm.recip()?);
        Some(inv.promote_to_multiple(self.order))
    }

    fn promote_to_multiple(&self, m: u32) -> CycNum {
        if m % self.order == 0 {
            self.promote(m)
        } else {
            let l = arith::lcm(m as u64, self.order as u64) as u32;
            self.promote(l)
        }
    }

    pub fn pow(&self, e: i64) -> CycNum {
        if e < 0 {
            return self
                .inverse()
                .expect("negative power of zero")
                .pow(-e);
        }
        let mut result = CycNum::one(self.order);
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Double-precision value at `ζ_m = exp(2πi/m)`.
    ///
    /// Absolute error is at most about `Σ|c_k| · 4ε` with `ε = 2^-53`.
    pub fn embed_c64(&self) -> Complex64 {
        let m = self.order as f64;
        self.terms.iter().fold(Complex64::new(0.0, 0.0), |acc, (e, c)| {
            let theta = 2.0 * std::f64::consts::PI * (*e as f64) / m;
            acc + Complex64::from_polar(c.to_f64(), theta)
        })
    }

    /// Value at `ζ_m = exp(2πi/m)` with `bits` fractional bits; see [`HpComplex`].
    pub fn embed(&self, bits: u32) -> HpComplex {
        embed::embed(self, bits.max(53))
    }

    /// Accumulates `a * b` into `buf`, a dense coefficient vector over
    /// `Q(ζ_m)` with `m = buf.len()`; both orders must divide `m`.
    pub fn mul_acc_into(buf: &mut [Rational], a: &CycNum, b: &CycNum) {
        let m = buf.len() as u64;
        let fa = m / a.order as u64;
        let fb = m / b.order as u64;
        for (ea, ca) in &a.terms {
            let sa = *ea as u64 * fa;
            for (eb, cb) in &b.terms {
                let idx = (sa + *eb as u64 * fb) % m;
                buf[idx as usize].add_mul(ca, cb);
            }
        }
    }

    pub fn add_into(buf: &mut [Rational], a: &CycNum) {
        let f = buf.len() as u64 / a.order as u64;
        for (e, c) in &a.terms {
            buf[(*e as u64 * f) as usize].add_assign_ref(c);
        }
    }

    /// Collects a dense coefficient vector back into a sparse element.
    pub fn from_dense(buf: Vec<Rational>) -> CycNum {
        let order = buf.len() as u32;
        CycNum {
            order,
            terms: buf
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(e, c)| (e as u32, c))
                .collect(),
        }
    }
}

fn merge_sorted(v: Vec<(u32, Rational)>) -> Vec<(u32, Rational)> {
    let mut out: Vec<(u32, Rational)> = Vec::with_capacity(v.len());
    for (e, c) in v {
        match out.last_mut() {
            Some((le, lc)) if *le == e => lc.add_assign_ref(&c),
            _ => out.push((e, c)),
        }
        if out.last().is_some_and(|(_, c)| c.is_zero()) {
            out.pop();
        }
    }
    out
}

/// In-place reduction of a dense coefficient vector of length `m` onto the
/// canonical basis.
fn reduce_dense(dense: &mut [Rational], m: u32) {
    let m = m as u64;
    for (p, e) in factorize(m) {
        let q = p.pow(e);
        let step = q / p;
        let cofactor = m / q;
        let inv = if q == m {
            1
        } else {
            mod_inv((cofactor % q) as i64, q).expect("CRT cofactor is a unit")
        };
        // shift[t]: exponent offset that moves the q-component by
        // (t - (p-1)) * q/p and fixes all other components.
        let shifts: Vec<u64> = (0..p - 1)
            .map(|t| {
                let s = arith::modulo((t as i64 - (p as i64 - 1)) * step as i64, q);
                (s * inv % q) * cofactor % m
            })
            .collect();
        for k in 0..m as usize {
            if (k as u64 % q) / step != p - 1 || dense[k].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut dense[k]);
            for s in &shifts {
                let k2 = ((k as u64 + s) % m) as usize;
                dense[k2].sub_assign_ref(&c);
            }
        }
    }
}

fn common_order(a: &CycNum, b: &CycNum) -> u32 {
    if a.order == b.order {
        a.order
    } else {
        arith::lcm(a.order as u64, b.order as u64) as u32
    }
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        (self - other).is_zero()
    }
}

impl<'a> Add<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        let m = common_order(self, rhs);
        let (a, b) = (self.promote(m), rhs.promote(m));
        let mut v = a.terms;
        v.extend(b.terms);
        v.sort_by_key(|t| t.0);
        CycNum { order: m, terms: merge_sorted(v) }
    }
}

impl<'a> Sub<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        self + &(-rhs)
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            order: self.order,
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl<'a> Mul<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        let m = common_order(self, rhs);
        if self.terms.is_empty() || rhs.terms.is_empty() {
            return CycNum::zero(m);
        }
        let (mono, other) = if self.terms.len() == 1 {
            (self, rhs)
        } else if rhs.terms.len() == 1 {
            (rhs, self)
        } else {
            let mut buf = vec![Rational::ZERO; m as usize];
            CycNum::mul_acc_into(&mut buf, self, rhs);
            return CycNum::from_dense(buf);
        };
        let (e, c) = &mono.terms[0];
        let shift = (*e as u64 * (m / mono.order) as u64) as i64;
        other.promote(m).scale(c).mul_root(shift)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for CycNum {
            type Output = CycNum;
            fn $f(self, rhs: CycNum) -> CycNum {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        if self.terms.len() > 1 {
            if let Some(q) = self.to_rational() {
                return write!(f, "{q}");
            }
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.signum() < 0;
            let abs = if neg { -c } else { c.clone() };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            match (*e, abs.is_one()) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => write!(f, "z{}", self.order)?,
                (1, false) => write!(f, "{abs}*z{}", self.order)?,
                (_, true) => write!(f, "z{}^{}", self.order, e)?,
                (_, false) => write!(f, "{abs}*z{}^{}", self.order, e)?,
            }
        }
        Ok(())
    }
}

/// The quadratic Gauss sum `g = Σ_{k=1}^{r-1} χ(k) ζ_r^k` in `Q(ζ_r)`.
///
/// `g² = χ(-1)·r`, so `g = √r` for `r ≡ 1 (mod 4)` and `g = i√r` for
/// `r ≡ 3 (mod 4)` (classical sign, positive imaginary part).
pub fn gauss_sqrt(r: u64) -> Result<CycNum> {
    if r == 2 || !arith::is_prime(r) {
        return Err(Error::NotOddPrime(r));
    }
    Ok(CycNum::from_int_terms(
        r as u32,
        (1..r as i64).map(|k| (k, legendre(k, r) as i64)),
    ))
}

/// The imaginary unit `ζ_m^{m/4}`; requires `4 | m`.
pub fn imaginary_unit(m: u32) -> CycNum {
    assert!(m % 4 == 0, "i is not in Q(zeta_{m})");
    CycNum::root_power(m, (m / 4) as i64)
}

/// The positive real square root of the odd prime `r`, over `Q(ζ_{4r})`.
pub fn sqrt_prime(r: u64) -> Result<CycNum> {
    let g = gauss_sqrt(r)?;
    let m = 4 * r as u32;
    let g = g.promote(m);
    Ok(if r % 4 == 1 {
        g
    } else {
        // g = i√r, so √r = -i·g.
        -&(&imaginary_unit(m) * &g)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: u32, k: i64) -> CycNum {
        CycNum::root_power(m, k)
    }

    #[test]
    fn root_power_reduces_exponent() {
        assert!(z(5, 0).is_one());
        assert_eq!(z(5, 7), z(5, 2));
        assert_eq!(z(5, 7).terms(), &[(2, Rational::ONE)]);
        assert_eq!(z(5, -1), z(5, 4));
    }

    #[test]
    fn sum_of_all_roots_vanishes() {
        let s = (0..5).fold(CycNum::zero(5), |acc, k| &acc + &z(5, k));
        assert!(s.is_zero());
        assert_eq!(s.num_terms(), 5);
        let s = (0..12).fold(CycNum::zero(12), |acc, k| &acc + &z(12, k));
        assert!(s.is_zero());
    }

    #[test]
    fn primitive_root_sums_are_mobius() {
        // Ramanujan sum c_m(1) = μ(m).
        for (m, mu) in [(6u32, 1i64), (8, 0), (30, -1), (24, 0), (105, -1)] {
            let s = (0..m as i64)
                .filter(|&k| arith::gcd(k as u64, m as u64) == 1)
                .fold(CycNum::zero(m), |acc, k| &acc + &z(m, k));
            assert_eq!(s.to_rational(), Some(Rational::from_int(mu)), "m = {m}");
        }
    }

    #[test]
    fn canonical_form_has_totient_dimension() {
        for m in [5u32, 8, 9, 12, 24, 120, 264] {
            let basis: Vec<u32> = (0..m)
                .filter(|&k| z(m, k as i64).canonical() == vec![(k, Rational::ONE)])
                .collect();
            assert_eq!(basis.len() as u64, arith::totient(m as u64), "m = {m}");
        }
    }

    #[test]
    fn galois_examples() {
        let x = &z(5, 1) + &z(5, 4);
        assert_eq!(x.galois(-1).unwrap(), x);
        assert_eq!(z(5, 1).galois(2).unwrap(), z(5, 2));
        assert!(matches!(z(6, 1).galois(3), Err(Error::NotAUnit { .. })));
        let y = CycNum::from_int_terms(5, [(0, 3), (1, -2), (3, 7)]);
        assert_eq!(
            y.galois(2).unwrap().galois(3).unwrap(),
            y.galois(6).unwrap()
        );
    }

    #[test]
    fn embeddings() {
        assert!((CycNum::one(7).embed_c64() - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        let x = &z(5, 1) + &z(5, -1);
        let want = 2.0 * (2.0 * std::f64::consts::PI / 5.0).cos();
        assert!((x.embed_c64().re - want).abs() < 1e-12);
        assert!((x.embed_c64().re - 0.6180339887).abs() < 1e-9);
    }

    #[test]
    fn gauss_sum_squares() {
        let g5 = gauss_sqrt(5).unwrap();
        assert_eq!(&g5 * &g5, CycNum::from_int(5, 5));
        let g7 = gauss_sqrt(7).unwrap();
        assert_eq!(&g7 * &g7, CycNum::from_int(7, -7));
        let v = g5.embed_c64();
        assert!((v.re - 5f64.sqrt()).abs() < 1e-12 && v.im.abs() < 1e-12);
        let v = g7.embed_c64();
        assert!((v.im - 7f64.sqrt()).abs() < 1e-12 && v.re.abs() < 1e-12);
        assert!(gauss_sqrt(9).is_err());
        assert!(gauss_sqrt(2).is_err());
    }

    #[test]
    fn sqrt_prime_is_positive_real() {
        for r in [5u64, 7, 11, 13] {
            let s = sqrt_prime(r).unwrap();
            assert_eq!(&s * &s, CycNum::from_int(4, r as i64));
            let v = s.embed_c64();
            assert!((v.re - (r as f64).sqrt()).abs() < 1e-12 && v.im.abs() < 1e-12);
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let x = CycNum::from_int_terms(7, [(0, 2), (1, -1), (3, 5)]);
        let inv = x.inverse().unwrap();
        assert!((&x * &inv).is_one());
        let y = CycNum::from_int_terms(24, [(0, 1), (8, 3), (6, -2)]);
        assert!((&y * &y.inverse().unwrap()).is_one());
        assert!(CycNum::zero(5).inverse().is_none());
        let q = CycNum::from_rational(12, Rational::new(3, 4));
        assert_eq!(q.inverse().unwrap(), CycNum::from_rational(12, Rational::new(4, 3)));
    }

    #[test]
    fn mixed_orders() {
        // i * i = -1 with i in Q(ζ_4) and -1 in Q(ζ_3).
        let i = imaginary_unit(4);
        let m1 = CycNum::from_int(3, -1);
        assert_eq!(&i * &i, m1);
        let w = z(3, 1);
        let sum = &w + &i;
        assert_eq!(sum.order(), 12);
        assert!(((&sum - &i) - w).is_zero());
    }

    #[test]
    fn pow_and_negative_pow() {
        let x = CycNum::from_int_terms(5, [(0, 1), (1, 1)]);
        let p = x.pow(3);
        assert_eq!(p, &(&x * &x) * &x);
        assert!((&x.pow(-2) * &x.pow(2)).is_one());
    }

    #[test]
    fn display() {
        let x = CycNum::from_terms(5, [(0, Rational::new(1, 2)), (2, Rational::from_int(-3)), (1, Rational::ONE)]);
        assert_eq!(x.to_string(), "1/2 + z5 - 3*z5^2");
    }
}
