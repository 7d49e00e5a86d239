//! Strategies and law checks shared by the property tests and the
//! acceptance runner.
#![allow(dead_code)]

use modrep_core::eisenstein::{build_symmetry_data, EisElem, WeylElement};
use modrep_core::weil::{symmetry_operator, Symmetry};
use modrep_core::{CycNum, Rational};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub const ORDERS: [u32; 11] = [1, 2, 3, 4, 5, 7, 8, 12, 15, 20, 24];
pub const INERT: [u64; 5] = [5, 11, 17, 23, 29];

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

pub fn cyc_in(order: u32) -> impl Strategy<Value = CycNum> {
    prop::collection::vec((0..order, -30i64..30, 1i64..8), 0..6).prop_map(move |terms| {
        CycNum::from_terms(
            order,
            terms.into_iter().map(|(e, n, d)| (e as i64, Rational::new(n, d))),
        )
    })
}

pub fn triple() -> impl Strategy<Value = (CycNum, CycNum, CycNum)> {
    prop::sample::select(ORDERS.to_vec()).prop_flat_map(|m| (cyc_in(m), cyc_in(m), cyc_in(m)))
}

/// Two elements of one field with two Galois exponents coprime to its order.
pub fn galois_case() -> impl Strategy<Value = (CycNum, CycNum, i64, i64)> {
    prop::sample::select(ORDERS.to_vec()).prop_flat_map(|m| {
        let units: Vec<i64> = (1..=m as i64).filter(|t| gcd(*t as u64, m as u64) == 1).collect();
        (
            cyc_in(m),
            cyc_in(m),
            prop::sample::select(units.clone()),
            prop::sample::select(units),
        )
    })
}

pub fn eis_case() -> impl Strategy<Value = EisElem> {
    prop::sample::select(INERT.to_vec())
        .prop_flat_map(|r| (Just(r), 0..r as i64, 0..r as i64))
        .prop_map(|(r, a, b)| EisElem::new(r, a, b))
}

#[allow(clippy::eq_op)]
pub fn arith_laws((a, b, c): (CycNum, CycNum, CycNum)) -> Result<(), TestCaseError> {
    prop_assert_eq!(&a + &b, &b + &a);
    prop_assert_eq!(&a * &b, &b * &a);
    prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
    prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    prop_assert!((&a - &a).is_zero());
    prop_assert_eq!(&a * &CycNum::one(1), a.clone());
    if let Some(inv) = a.inverse() {
        prop_assert!((&a * &inv).is_one());
    } else {
        prop_assert!(a.is_zero());
    }
    // Agreement with the complex embedding.
    let lhs = (&a * &b).embed_c64();
    let rhs = a.embed_c64() * b.embed_c64();
    prop_assert!((lhs - rhs).norm() <= 1e-9 * (1.0 + rhs.norm()));
    Ok(())
}

pub fn galois_laws((a, b, t, s): (CycNum, CycNum, i64, i64)) -> Result<(), TestCaseError> {
    let g = |x: &CycNum, k: i64| x.galois(k).unwrap();
    prop_assert_eq!(g(&(&a * &b), t), &g(&a, t) * &g(&b, t));
    prop_assert_eq!(g(&(&a + &b), t), &g(&a, t) + &g(&b, t));
    prop_assert_eq!(g(&g(&a, s), t), g(&a, s * t));
    prop_assert_eq!(g(&a, 1), a.clone());
    prop_assert_eq!(g(&a, -1), a.conj());
    if let Some(q) = a.to_rational() {
        prop_assert_eq!(g(&a, t).to_rational(), Some(q));
    }
    Ok(())
}

pub fn involution_laws((a, z): (CycNum, EisElem)) -> Result<(), TestCaseError> {
    prop_assert_eq!(a.conj().conj(), a.clone());
    prop_assert_eq!(z.conj().conj(), z);
    prop_assert_eq!(z.neg().neg(), z);
    prop_assert_eq!(z.conj().norm(), z.norm());
    for w in [WeylElement::Refl0, WeylElement::Refl1, WeylElement::Refl2] {
        prop_assert_eq!(w.apply(&w.apply(&z)), z);
    }
    let data = build_symmetry_data(z.r).unwrap();
    let c = symmetry_operator(&data, Symmetry::ChargeConj);
    prop_assert!(c.compose(&c).is_identity());
    Ok(())
}

pub fn json_laws((a, z): (CycNum, EisElem)) -> Result<(), TestCaseError> {
    // Cubing pushes some coefficients past i64.
    let big = a.scale_int(1 << 40).pow(3);
    for x in [&a, &big] {
        let text = serde_json::to_string(x).unwrap();
        let back: CycNum = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, x);
        prop_assert_eq!(back.terms(), x.terms());
    }
    let text = serde_json::to_string(&z).unwrap();
    prop_assert_eq!(serde_json::from_str::<EisElem>(&text).unwrap(), z);
    Ok(())
}

pub fn pair_case() -> impl Strategy<Value = (CycNum, EisElem)> {
    (prop::sample::select(ORDERS.to_vec()).prop_flat_map(cyc_in), eis_case())
}
