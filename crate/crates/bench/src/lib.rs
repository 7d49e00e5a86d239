//! Inputs shared by the benchmarks.

use modrep_core::{CycNum, Rational};

/// A dense element of `Q(ζ_m)` with small rational coefficients.
pub fn dense(m: u32, seed: i64) -> CycNum {
    CycNum::from_terms(
        m,
        (0..m as i64).map(|k| (k, Rational::new((k * 7 + seed) % 11 - 5, 1 + (k + seed).rem_euclid(4)))),
    )
}
