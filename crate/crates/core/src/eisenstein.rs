//! The finite field `R_r = Z[ω]/r` for primes `r ≡ 2 (mod 3)`.
//!
//! Elements are stored as `a + bω` with `ω² = -1 - ω`. (Some texts write
//! elements of `R_r` as `a - bω`; only the `+` convention is used here.)
//! The standard enumeration of `R_r` is lexicographic in `(a, b)`, i.e. the
//! element `a + bω` has index `a·r + b`.

use serde::{Deserialize, Serialize};

use crate::arith::{self, factorize, legendre};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EisElem {
    pub r: u64,
    pub a: u64,
    pub b: u64,
}

/// Checks that `r` is a prime `≥ 5` with `r ≡ 2 (mod 3)`.
pub fn check_inert_prime(r: u64) -> Result<()> {
    if r < 3 || r % 2 == 0 || !arith::is_prime(r) {
        return Err(Error::NotOddPrime(r));
    }
    if r % 3 == 1 {
        return Err(Error::UnsupportedPrime {
            r,
            reason: "r ≡ 1 mod 3: split case not supported",
        });
    }
    if r < 5 {
        return Err(Error::UnsupportedPrime { r, reason: "r must be at least 5" });
    }
    Ok(())
}

impl EisElem {
    pub fn new(r: u64, a: i64, b: i64) -> Self {
        EisElem {
            r,
            a: arith::modulo(a, r),
            b: arith::modulo(b, r),
        }
    }

    pub fn zero(r: u64) -> Self {
        EisElem { r, a: 0, b: 0 }
    }

    pub fn one(r: u64) -> Self {
        EisElem { r, a: 1, b: 0 }
    }

    pub fn omega(r: u64) -> Self {
        EisElem { r, a: 0, b: 1 }
    }

    pub fn from_int(r: u64, a: i64) -> Self {
        Self::new(r, a, 0)
    }

    /// Element with the given position in the lexicographic enumeration.
    pub fn from_index(r: u64, idx: usize) -> Self {
        EisElem {
            r,
            a: idx as u64 / r,
            b: idx as u64 % r,
        }
    }

    pub fn index(&self) -> usize {
        (self.a * self.r + self.b) as usize
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn add(&self, o: &EisElem) -> EisElem {
        EisElem {
            r: self.r,
            a: (self.a + o.a) % self.r,
            b: (self.b + o.b) % self.r,
        }
    }

    pub fn neg(&self) -> EisElem {
        EisElem {
            r: self.r,
            a: (self.r - self.a) % self.r,
            b: (self.r - self.b) % self.r,
        }
    }

    pub fn mul(&self, o: &EisElem) -> EisElem {
        let r = self.r;
        let (a, b, c, d) = (self.a, self.b, o.a, o.b);
        // (a + bω)(c + dω) = (ac - bd) + (ad + bc - bd)ω
        let bd = b * d % r;
        EisElem {
            r,
            a: (a * c % r + r - bd) % r,
            b: (a * d % r + b * c % r + r - bd) % r,
        }
    }

    pub fn scale(&self, k: i64) -> EisElem {
        self.mul(&EisElem::from_int(self.r, k))
    }

    pub fn pow(&self, mut e: u64) -> EisElem {
        let mut acc = EisElem::one(self.r);
        let mut base = *self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// `conj(a + bω) = (a - b) - bω`.
    pub fn conj(&self) -> EisElem {
        EisElem::new(self.r, self.a as i64 - self.b as i64, -(self.b as i64))
    }

    /// `N(a + bω) = a² - ab + b²`, as a residue in `[0, r)`.
    pub fn norm(&self) -> u64 {
        let r = self.r;
        (self.a * self.a % r + self.b * self.b % r + r - self.a * self.b % r) % r
    }

    /// `Tr(a + bω) = 2a - b`, as a residue in `[0, r)`.
    pub fn trace(&self) -> u64 {
        (2 * self.a + self.r - self.b) % self.r
    }

    pub fn inverse(&self) -> Option<EisElem> {
        if self.is_zero() {
            return None;
        }
        // z⁻¹ = conj(z) / N(z); N(z) ≠ 0 because R_r is a field.
        let n_inv = arith::mod_inv(self.norm() as i64, self.r)?;
        Some(self.conj().scale(n_inv as i64))
    }

    /// Multiplicative order in `R_r^*`.
    pub fn order(&self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let group = self.r * self.r - 1;
        let mut ord = group;
        for (p, _) in factorize(group) {
            while ord % p == 0 && self.pow(ord / p) == EisElem::one(self.r) {
                ord /= p;
            }
        }
        Some(ord)
    }

    /// The Weyl orbit with signs: `z, ωz, ω²z` carry `+1` and
    /// `-z̄, -ωz̄, -ω²z̄` carry `-1`, in that order.
    pub fn weyl_orbit(&self) -> [(EisElem, i8); 6] {
        let w = EisElem::omega(self.r);
        let w2 = w.mul(&w);
        let zb = self.conj().neg();
        [
            (*self, 1),
            (w.mul(self), 1),
            (w2.mul(self), 1),
            (zb, -1),
            (w.mul(&zb), -1),
            (w2.mul(&zb), -1),
        ]
    }

    pub fn all(r: u64) -> impl Iterator<Item = EisElem> {
        (0..(r * r) as usize).map(move |i| EisElem::from_index(r, i))
    }
}

/// The six Weyl group elements, in the order used by [`EisElem::weyl_orbit`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeylElement {
    Identity,
    Rot1,
    Rot2,
    Refl0,
    Refl1,
    Refl2,
}

impl WeylElement {
    pub const ALL: [WeylElement; 6] = [
        WeylElement::Identity,
        WeylElement::Rot1,
        WeylElement::Rot2,
        WeylElement::Refl0,
        WeylElement::Refl1,
        WeylElement::Refl2,
    ];

    pub fn sign(self) -> i8 {
        match self {
            WeylElement::Identity | WeylElement::Rot1 | WeylElement::Rot2 => 1,
            _ => -1,
        }
    }

    pub fn apply(self, z: &EisElem) -> EisElem {
        let k = self as usize;
        z.weyl_orbit()[k].0
    }

    pub fn name(self) -> &'static str {
        match self {
            WeylElement::Identity => "id",
            WeylElement::Rot1 => "omega",
            WeylElement::Rot2 => "omega^2",
            WeylElement::Refl0 => "-conj",
            WeylElement::Refl1 => "-omega*conj",
            WeylElement::Refl2 => "-omega^2*conj",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryData {
    pub r: u64,
    /// `r = 6n - 1`.
    pub n: u64,
    /// Generator of `R_r^*` found by lexicographic search.
    pub primitive_root: EisElem,
    /// Generator of the norm-one group with `u^{2n} = ω`, `u^{3n} = -1`.
    pub u: EisElem,
    pub rho: EisElem,
    /// `N(rho)` as computed (not as any convention would name it).
    pub rho_norm: u64,
}

impl SymmetryData {
    pub fn half(&self) -> usize {
        ((self.r - 1) / 2) as usize
    }

    /// `ε = (-1)^n = (-1)^{(r+1)/6}`.
    pub fn epsilon(&self) -> i8 {
        if self.n % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// `Tr(u^j)` for `j = 0..=r`.
    pub fn unit_traces(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.r as usize + 1);
        let mut p = EisElem::one(self.r);
        for _ in 0..=self.r {
            out.push(p.trace());
            p = p.mul(&self.u);
        }
        out
    }
}

/// Finds a primitive root `x`, sets `u = x^{r-1}` (inverted if needed so that
/// `u^{2n} = ω`), and picks `rho`.
///
/// `r ≡ 1 (mod 4)`: `rho = ω - ω̄ = 1 + 2ω`, whose norm is 3 (a non-square).
/// `r ≡ 3 (mod 4)`: the lexicographically smallest `rho` with `N(rho) = -1`
/// and `conj(rho) = u·rho`.
pub fn build_symmetry_data(r: u64) -> Result<SymmetryData> {
    check_inert_prime(r)?;
    let n = (r + 1) / 6;
    let group = r * r - 1;
    let primitive_root = EisElem::all(r)
        .skip(1)
        .find(|x| x.order() == Some(group))
        .ok_or_else(|| Error::BrokenInvariant {
            r,
            what: "no primitive root found".into(),
        })?;
    let omega = EisElem::omega(r);
    let mut u = primitive_root.pow(r - 1);
    if u.pow(2 * n) != omega {
        u = u.inverse().expect("u is a unit");
    }
    let broken = |what: &str| Error::BrokenInvariant { r, what: what.to_string() };
    if u.norm() != 1 {
        return Err(broken("N(u) != 1"));
    }
    if u.order() != Some(6 * n) {
        return Err(broken("u does not have order r+1"));
    }
    if u.pow(2 * n) != omega {
        return Err(broken("u^{2n} != omega"));
    }
    if u.pow(3 * n) != EisElem::from_int(r, -1) {
        return Err(broken("u^{3n} != -1"));
    }

    let rho = if r % 4 == 1 {
        if legendre(3, r) != -1 || legendre(-3, r) != -1 {
            return Err(broken("3 and -3 should be non-squares"));
        }
        let w = EisElem::omega(r);
        w.add(&w.conj().neg())
    } else {
        if legendre(-1, r) != -1 {
            return Err(broken("-1 should be a non-square"));
        }
        EisElem::all(r)
            .find(|z| z.norm() == r - 1 && z.conj() == u.mul(z))
            .ok_or(Error::NoRho(r))?
    };
    let rho_norm = rho.norm();
    if legendre(rho_norm as i64, r) != -1 {
        return Err(broken("N(rho) is a square"));
    }
    Ok(SymmetryData {
        r,
        n,
        primitive_root,
        u,
        rho,
        rho_norm,
    })
}
