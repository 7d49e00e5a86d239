//! Fixed-point complex embedding at arbitrary precision.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::CycNum;

const GUARD_BITS: u32 = 64;

/// A complex number `(re + i·im) / 2^bits`.
///
/// Produced by [`CycNum::embed`]. With `S = Σ|c_k|` the sum of absolute
/// coefficient values of the embedded element, each component is within
/// `(1 + S·2^-40) · 2^-bits` of the true value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HpComplex {
    pub re: BigInt,
    pub im: BigInt,
    pub bits: u32,
}

impl HpComplex {
    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(scaled_to_f64(&self.re, self.bits), scaled_to_f64(&self.im, self.bits))
    }

    /// Whether `|z| < 2^-e`.
    pub fn abs_below_pow2(&self, e: u32) -> bool {
        let sq = &self.re * &self.re + &self.im * &self.im;
        // |z|^2 = sq / 2^(2 bits) < 2^(-2e)
        if 2 * self.bits < 2 * e {
            return sq.is_zero();
        }
        sq < (BigInt::one() << (2 * self.bits - 2 * e))
    }
}

fn scaled_to_f64(x: &BigInt, bits: u32) -> f64 {
    let len = x.bits() as i64;
    let shift = (len - 60).max(0);
    let top = (x >> shift as usize).to_f64().unwrap_or(0.0);
    top * 2f64.powi((shift - bits as i64) as i32)
}

/// `atan(1/k)` scaled by `2^w`.
fn atan_inv(k: u64, w: u32) -> BigInt {
    let one = BigInt::one() << w;
    let k2 = BigInt::from(k * k);
    let mut power = &one / BigInt::from(k);
    let mut sum = BigInt::zero();
    let mut n: u64 = 0;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * n + 1);
        if n % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power = &power / &k2;
        n += 1;
    }
    sum
}

fn pi_fixed(w: u32) -> BigInt {
    // Machin: π = 16 atan(1/5) - 4 atan(1/239)
    atan_inv(5, w) * 16 - atan_inv(239, w) * 4
}

/// `(cos θ, sin θ)` scaled by `2^w` for `θ = 2π·k/m`.
fn cos_sin(k: i64, m: u64, pi: &BigInt, w: u32) -> (BigInt, BigInt) {
    // Reduce k into (-m/2, m/2] so |θ| ≤ π.
    let mut k = k.rem_euclid(m as i64);
    if 2 * k as u64 > m {
        k -= m as i64;
    }
    let theta: BigInt = (pi * BigInt::from(2 * k)).div_floor(&BigInt::from(m));
    let theta2 = (&theta * &theta) >> w;
    let mut cos = BigInt::one() << w;
    let mut sin = theta.clone();
    let mut term_c = cos.clone();
    let mut term_s = theta;
    let mut n: u64 = 1;
    loop {
        term_c = -((&term_c * &theta2) >> w) / BigInt::from((2 * n - 1) * (2 * n));
        term_s = -((&term_s * &theta2) >> w) / BigInt::from((2 * n) * (2 * n + 1));
        if term_c.is_zero() && term_s.is_zero() {
            break;
        }
        cos += &term_c;
        sin += &term_s;
        n += 1;
    }
    (cos, sin)
}

pub(super) fn embed(x: &CycNum, bits: u32) -> HpComplex {
    let w = bits + GUARD_BITS;
    let pi = pi_fixed(w);
    let m = x.order() as u64;
    let mut re = BigInt::zero();
    let mut im = BigInt::zero();
    for (e, c) in x.terms() {
        let (cs, sn) = cos_sin(*e as i64, m, &pi, w);
        let (num, den) = (c.numer(), c.denom());
        re += (&cs * &num).div_floor(&den);
        im += (&sn * &num).div_floor(&den);
    }
    let round = |v: BigInt| -> BigInt {
        let half = BigInt::one() << (GUARD_BITS - 1);
        if v.is_negative() {
            -((-v + &half) >> GUARD_BITS)
        } else {
            (v + half) >> GUARD_BITS
        }
    };
    HpComplex { re: round(re), im: round(im), bits }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;

    #[test]
    fn pi_digits() {
        let pi = pi_fixed(200);
        let v = HpComplex { re: pi, im: BigInt::zero(), bits: 200 };
        assert!((v.to_c64().re - std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn high_precision_matches_f64() {
        let x = CycNum::from_terms(
            7,
            [(1, Rational::new(3, 2)), (3, Rational::from_int(-2)), (6, Rational::new(1, 3))],
        );
        let hp = x.embed(200).to_c64();
        assert!((hp - x.embed_c64()).norm() < 1e-14);
    }

    #[test]
    fn zero_element_embeds_below_threshold() {
        let s = (0..7).fold(CycNum::zero(7), |acc, k| &acc + &CycNum::root_power(7, k));
        assert!(s.embed(200).abs_below_pow2(100));
        assert!(!CycNum::one(7).embed(200).abs_below_pow2(100));
        // 2^-120 is still nonzero at 200 bits.
        let tiny = CycNum::from_terms(3, [(0, Rational::from_bigints(BigInt::one(), BigInt::one() << 120))]);
        assert!(tiny.embed(200).abs_below_pow2(100));
        assert!(!tiny.embed(200).abs_below_pow2(130));
    }
}
