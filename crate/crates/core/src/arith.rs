//! Small-integer number theory used across the crate.

use num_integer::Integer;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization as `(p, e)` pairs in increasing order of `p`.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn totient(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Least non-negative residue of `a` modulo `m`.
pub fn modulo(a: i64, m: u64) -> u64 {
    a.rem_euclid(m as i64) as u64
}

pub fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut b = (base % m) as u128;
    let mut acc: u128 = 1;
    let m = m as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Inverse of `a` modulo `m` by the extended Euclidean algorithm.
pub fn mod_inv(a: i64, m: u64) -> Option<u64> {
    let m_i = m as i64;
    let a = a.rem_euclid(m_i);
    let ext = a.extended_gcd(&m_i);
    if ext.gcd != 1 {
        return None;
    }
    Some(ext.x.rem_euclid(m_i) as u64)
}

/// Quadratic character of `k` modulo the odd prime `r`, with `χ(0) = 0`.
pub fn legendre(k: i64, r: u64) -> i32 {
    let k = modulo(k, r);
    if k == 0 {
        return 0;
    }
    if mod_pow(k, (r - 1) / 2, r) == 1 {
        1
    } else {
        -1
    }
}

pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| is_prime(n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorization_and_totient() {
        assert_eq!(factorize(120), vec![(2, 3), (3, 1), (5, 1)]);
        assert_eq!(totient(120), 32);
        assert_eq!(totient(24 * 47), 8 * 46);
        assert_eq!(totient(1), 1);
    }

    #[test]
    fn inverse_and_legendre() {
        assert_eq!(mod_inv(3, 11), Some(4));
        assert_eq!(mod_inv(-3, 11), Some(7));
        assert_eq!(mod_inv(6, 9), None);
        let squares: Vec<i32> = (0..5).map(|k| legendre(k, 5)).collect();
        assert_eq!(squares, vec![0, 1, -1, -1, 1]);
    }

    #[test]
    fn primality() {
        assert_eq!(primes_in(1, 30), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }
}
