//! Character-sum identities over `Z/r`: Gauss sums, the degree-2 sum, the
//! square substitution, Jacobsthal's identity, the alternating trace sum `s`
//! and the `α`/`β` identity. Each check returns both sides.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{self, mod_inv};
use crate::cyclotomic::{gauss_sqrt, CycNum};
use crate::eisenstein::build_symmetry_data;
use crate::error::{Error, Result};
use crate::psu2::QuadChar;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Identity<V> {
    pub lhs: V,
    pub rhs: V,
    pub equal: bool,
}

impl<V: PartialEq> Identity<V> {
    fn new(lhs: V, rhs: V) -> Self {
        let equal = lhs == rhs;
        Identity { lhs, rhs, equal }
    }
}

/// `Σ_{k=1}^{r-1} χ(k) ζ^{lk}` against `χ(l)·g`, `g` the Gauss sum of order `r`.
pub fn gauss_identity(r: u64, l: i64) -> Result<Identity<CycNum>> {
    let chi = QuadChar::new(r)?;
    let m = r as u32;
    let lhs = CycNum::from_int_terms(m, (1..r as i64).map(|k| (l * k, chi.chi(k))));
    let rhs = gauss_sqrt(r)?.scale_int(chi.chi(l));
    Ok(Identity::new(lhs, rhs))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Degree2 {
    /// `Σ_{i=0}^{r-1} χ(ai² + bi + c)`.
    pub value: i64,
    /// `-χ(a)` or `(r-1)χ(a)` by the discriminant; `None` when `a ≡ 0`.
    pub closed: Option<i64>,
    pub equal: bool,
}

pub fn degree2_sum(r: u64, a: i64, b: i64, c: i64) -> Result<Degree2> {
    let chi = QuadChar::new(r)?;
    Ok(degree2_with(&chi, a, b, c))
}

fn degree2_with(chi: &QuadChar, a: i64, b: i64, c: i64) -> Degree2 {
    let r = chi.r as i64;
    let (a, b, c) = (a.rem_euclid(r), b.rem_euclid(r), c.rem_euclid(r));
    let value = (0..r).map(|i| chi.chi((a * i % r * i + b * i + c) % r)).sum();
    let closed = (a != 0).then(|| {
        if (b * b - 4 * a * c).rem_euclid(r) != 0 {
            -chi.chi(a)
        } else {
            (r - 1) * chi.chi(a)
        }
    });
    Degree2 {
        value,
        closed,
        equal: closed.is_none_or(|v| v == value),
    }
}

fn poly_eval(f: &[i64], x: i64, r: i64) -> i64 {
    f.iter().rev().fold(0, |acc, c| (acc * x + c).rem_euclid(r))
}

/// `Σχ(f(x²)) - Σχ(f(x))` against `Σχ(x f(x))`, `x = 1..r-1`, with `f`
/// given by coefficients in increasing degree.
pub fn square_identity(r: u64, f: &[i64]) -> Result<Identity<i64>> {
    let chi = QuadChar::new(r)?;
    Ok(square_with(&chi, f))
}

fn square_with(chi: &QuadChar, f: &[i64]) -> Identity<i64> {
    let r = chi.r as i64;
    let mut lhs = 0;
    let mut rhs = 0;
    for x in 1..r {
        lhs += chi.chi(poly_eval(f, x * x % r, r)) - chi.chi(poly_eval(f, x, r));
        rhs += chi.chi(x * poly_eval(f, x, r) % r);
    }
    Identity::new(lhs, rhs)
}

/// `Σ χ(x)χ(x² + ax + b)` against `Σ χ(x + a)χ(x² - 4b)`, `x = 0..r-1`.
pub fn jacobsthal_identity(r: u64, a: i64, b: i64) -> Result<Identity<i64>> {
    let chi = QuadChar::new(r)?;
    Ok(jacobsthal_with(&chi, a, b))
}

fn jacobsthal_with(chi: &QuadChar, a: i64, b: i64) -> Identity<i64> {
    let r = chi.r as i64;
    let (a, b) = (a.rem_euclid(r), b.rem_euclid(r));
    let lhs = (0..r).map(|x| chi.chi(x) * chi.chi((x * x + a * x + b) % r)).sum();
    let rhs = (0..r).map(|x| chi.chi(x + a) * chi.chi(x * x - 4 * b)).sum();
    Identity::new(lhs, rhs)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SValue {
    /// `Σ_{j=0}^{r} (-1)^j ζ^{Tr(u^j)}`.
    pub direct: CycNum,
    /// `±ζ^{-2}(Σ_a ζ^{3/(a²+a+1)} - Σ_a ζ^{3((2a+1)/(a²+a+1))²})`, the sign
    /// being `+` for `r ≡ 1 (mod 4)` and `-` for `r ≡ 3 (mod 4)`.
    pub closed: CycNum,
    pub equal: bool,
}

pub fn s_value(r: u64) -> Result<SValue> {
    let data = build_symmetry_data(r)?;
    let m = r as u32;
    let direct = CycNum::from_int_terms(
        m,
        data.unit_traces()
            .into_iter()
            .enumerate()
            .map(|(j, t)| (t as i64, if j % 2 == 0 { 1 } else { -1 })),
    );
    let ri = r as i64;
    let sign = if r % 4 == 1 { 1 } else { -1 };
    let mut terms = Vec::with_capacity(2 * (r as usize - 1));
    for a in 1..ri {
        let q = a * a + a + 1;
        let inv = mod_inv(q, r).expect("a² + a + 1 is nonzero for r ≡ 2 mod 3") as i64;
        let x = (2 * a + 1) % ri * inv % ri;
        terms.push((3 * inv - 2, sign));
        terms.push((3 * (x * x % ri) - 2, -sign));
    }
    let closed = CycNum::from_int_terms(m, terms);
    let equal = direct == closed;
    Ok(SValue { direct, closed, equal })
}

/// `α_{ija} = 2(j-i) + 3i/(a²+a+1)` and `β_{ija} = 2(j-i) + 3i((2a+1)/(a²+a+1))²`.
pub fn alpha_beta(r: u64, i: i64, j: i64, a: i64) -> (i64, i64) {
    let ri = r as i64;
    let inv = mod_inv(a * a + a + 1, r).expect("a² + a + 1 is nonzero for r ≡ 2 mod 3") as i64;
    let base = (2 * (j - i)).rem_euclid(ri);
    let x = (2 * a + 1).rem_euclid(ri) * inv % ri;
    let alpha = (base + 3 * i % ri * inv) % ri;
    let beta = (base + 3 * i % ri * (x * x % ri)) % ri;
    (alpha, beta)
}

/// `Σ_a χ(α_{ija})` against `Σ_a χ(β_{ija})`, `a = 0..r-1`, for `i ≠ j`.
pub fn alpha_beta_identity(r: u64, i: i64, j: i64) -> Result<Identity<i64>> {
    crate::eisenstein::check_inert_prime(r)?;
    let h = ((r - 1) / 2) as i64;
    if i == j || !(1..=h).contains(&i) || !(1..=h).contains(&j) {
        return Err(Error::InvalidParameters(format!(
            "need 1 <= i, j <= {h} and i != j, got i = {i}, j = {j}"
        )));
    }
    let chi = QuadChar::new(r)?;
    let (mut lhs, mut rhs) = (0, 0);
    for a in 0..r as i64 {
        let (al, be) = alpha_beta(r, i, j, a);
        lhs += chi.chi(al);
        rhs += chi.chi(be);
    }
    Ok(Identity::new(lhs, rhs))
}

/// Outcome of one identity family over a parameter sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepResult {
    pub name: String,
    pub r: u64,
    pub cases: usize,
    pub failures: usize,
    /// First failing parameter tuple, if any.
    pub first_failure: Option<Vec<i64>>,
}

impl SweepResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

fn sweep<F>(name: &str, r: u64, params: Vec<Vec<i64>>, check: F) -> SweepResult
where
    F: Fn(&[i64]) -> bool + Sync + Send,
{
    let cases = params.len();
    let mut bad: Vec<Vec<i64>> = params.into_par_iter().filter(|p| !check(p)).collect();
    bad.sort();
    SweepResult {
        name: name.to_string(),
        r,
        cases,
        failures: bad.len(),
        first_failure: bad.into_iter().next(),
    }
}

/// Number of random polynomials tried by [`square_sweep`] on top of the
/// exhaustive linear and constant cases.
pub const SQUARE_RANDOM_CASES: usize = 100;

pub fn gauss_sweep(r: u64) -> Result<SweepResult> {
    let g = gauss_sqrt(r)?;
    let chi = QuadChar::new(r)?;
    let m = r as u32;
    let params: Vec<Vec<i64>> = (0..r as i64).map(|l| vec![l]).collect();
    Ok(sweep("gauss", r, params, |p| {
        let lhs = CycNum::from_int_terms(m, (1..r as i64).map(|k| (p[0] * k, chi.chi(k))));
        lhs == g.scale_int(chi.chi(p[0]))
    }))
}

/// All `(a, b, c) ∈ (Z/r)³` with `a ≠ 0`.
pub fn degree2_sweep(r: u64) -> Result<SweepResult> {
    let chi = QuadChar::new(r)?;
    let ri = r as i64;
    let params: Vec<Vec<i64>> = (1..ri)
        .flat_map(|a| (0..ri).flat_map(move |b| (0..ri).map(move |c| vec![a, b, c])))
        .collect();
    Ok(sweep("degree2", r, params, |p| degree2_with(&chi, p[0], p[1], p[2]).equal))
}

/// All `f` of degree at most 1, plus seeded random `f` of degree 2..=5.
pub fn square_sweep(r: u64, seed: u64) -> Result<SweepResult> {
    let chi = QuadChar::new(r)?;
    let ri = r as i64;
    let mut params: Vec<Vec<i64>> = (0..ri).flat_map(|c0| (0..ri).map(move |c1| vec![c0, c1])).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ r);
    for _ in 0..SQUARE_RANDOM_CASES {
        let deg = rng.gen_range(2..=5);
        params.push((0..=deg).map(|_| rng.gen_range(0..ri)).collect());
    }
    Ok(sweep("square", r, params, |f| square_with(&chi, f).equal))
}

/// All `(a, b) ∈ (Z/r)²`.
pub fn jacobsthal_sweep(r: u64) -> Result<SweepResult> {
    let chi = QuadChar::new(r)?;
    let ri = r as i64;
    let params: Vec<Vec<i64>> = (0..ri).flat_map(|a| (0..ri).map(move |b| vec![a, b])).collect();
    Ok(sweep("jacobsthal", r, params, |p| jacobsthal_with(&chi, p[0], p[1]).equal))
}

/// All `1 <= i ≠ j <= (r-1)/2`.
pub fn alpha_beta_sweep(r: u64) -> Result<SweepResult> {
    crate::eisenstein::check_inert_prime(r)?;
    let h = ((r - 1) / 2) as i64;
    let params: Vec<Vec<i64>> = (1..=h)
        .flat_map(|i| (1..=h).filter(move |j| *j != i).map(move |j| vec![i, j]))
        .collect();
    Ok(sweep("alpha_beta", r, params, |p| {
        alpha_beta_identity(r, p[0], p[1]).is_ok_and(|id| id.equal)
    }))
}

/// Odd primes in `[lo, hi]`.
pub fn odd_primes(lo: u64, hi: u64) -> Vec<u64> {
    arith::primes_in(lo, hi).into_iter().filter(|p| *p > 2).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_examples() {
        let id = gauss_identity(5, 0).unwrap();
        assert!(id.lhs.is_zero() && id.rhs.is_zero() && id.equal);
        let g = gauss_sqrt(5).unwrap();
        assert_eq!(gauss_identity(5, 1).unwrap().lhs, g);
        assert_eq!(gauss_identity(5, 2).unwrap().lhs, -&g);
        assert!(gauss_identity(7, 3).unwrap().equal);
    }

    #[test]
    fn degree2_examples() {
        assert_eq!(degree2_sum(5, 1, 1, 1).unwrap().value, -1);
        assert_eq!(degree2_sum(5, 1, 2, 1).unwrap().value, 4);
        let d = degree2_sum(5, 2, 0, 0).unwrap();
        assert_eq!(d.value, -4);
        assert!(d.equal);
        let lin = degree2_sum(5, 0, 1, 0).unwrap();
        assert_eq!(lin.closed, None);
        assert_eq!(lin.value, 0);
    }

    #[test]
    fn square_examples() {
        let c = square_identity(5, &[1]).unwrap();
        assert_eq!((c.lhs, c.rhs), (0, 0));
        let x = square_identity(5, &[0, 1]).unwrap();
        assert_eq!((x.lhs, x.rhs), (4, 4));
        assert!(square_identity(5, &[3, 1]).unwrap().equal);
    }

    #[test]
    fn jacobsthal_examples() {
        let j = jacobsthal_identity(5, 0, 0).unwrap();
        assert_eq!((j.lhs, j.rhs), (0, 0));
        assert!(jacobsthal_identity(5, 1, 1).unwrap().equal);
        assert!(jacobsthal_sweep(5).unwrap().passed());
    }

    #[test]
    fn s_value_examples() {
        let s = s_value(5).unwrap();
        let want = CycNum::from_int_terms(5, [(2, 1), (1, -1), (4, 1), (3, -1), (4, 1), (1, -1)]);
        assert_eq!(s.direct, want);
        assert!(s.equal);
        assert_eq!(s.direct.conj(), -&s.direct);
        let s11 = s_value(11).unwrap();
        assert!(s11.equal);
        assert_eq!(s11.direct.conj(), s11.direct);
    }

    #[test]
    fn alpha_beta_examples() {
        assert!(alpha_beta_identity(5, 1, 2).unwrap().equal);
        assert!(alpha_beta_identity(11, 1, 3).unwrap().equal);
        assert!(alpha_beta_identity(5, 1, 1).is_err());
        for r in [5u64, 11, 17] {
            for i in 1..=((r - 1) / 2) as i64 {
                for j in 1..=((r - 1) / 2) as i64 {
                    let (a, b) = alpha_beta(r, i, j, 0);
                    assert_eq!(a, b);
                }
            }
        }
    }

    #[test]
    fn degree2_branches_partition() {
        let r = 7u64;
        let chi = QuadChar::new(r).unwrap();
        for a in 1..7 {
            for b in 0..7 {
                for c in 0..7 {
                    let d = degree2_with(&chi, a, b, c);
                    assert!(d.equal);
                    let degenerate = (b * b - 4 * a * c).rem_euclid(7) == 0;
                    assert_eq!(d.value.abs() == 6, degenerate);
                }
            }
        }
    }

    #[test]
    fn sweeps_small() {
        for r in [3u64, 5, 7] {
            assert!(gauss_sweep(r).unwrap().passed());
            assert!(degree2_sweep(r).unwrap().passed());
            assert!(square_sweep(r, 1).unwrap().passed());
        }
        assert!(alpha_beta_sweep(11).unwrap().passed());
        assert_eq!(gauss_sweep(5).unwrap().cases, 5);
    }
}
