//! JSON form: `{"order": m, "terms": [[exponent, numerator, denominator], ...]}`.
//!
//! Numerators and denominators are JSON integers when they fit in `i64` and
//! decimal strings otherwise. Terms are written sorted by exponent with
//! repeated exponents merged; they are the stored combination, not the
//! canonical-basis coordinates.

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::CycNum;
use crate::rational::Rational;

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonInt {
    Small(i64),
    Big(String),
}

impl JsonInt {
    fn from_big(b: BigInt) -> Self {
        match i64::try_from(&b) {
            Ok(v) => JsonInt::Small(v),
            Err(_) => JsonInt::Big(b.to_string()),
        }
    }

    fn to_big(&self) -> Result<BigInt, String> {
        match self {
            JsonInt::Small(v) => Ok(BigInt::from(*v)),
            JsonInt::Big(s) => s.parse().map_err(|_| format!("bad integer {s:?}")),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CycNumJson {
    order: u32,
    terms: Vec<(i64, JsonInt, JsonInt)>,
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CycNumJson {
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e as i64, JsonInt::from_big(c.numer()), JsonInt::from_big(c.denom())))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = CycNumJson::deserialize(d)?;
        if raw.order == 0 {
            return Err(D::Error::custom("order must be positive"));
        }
        let mut terms = Vec::with_capacity(raw.terms.len());
        for (e, n, den) in raw.terms {
            let n = n.to_big().map_err(D::Error::custom)?;
            let den = den.to_big().map_err(D::Error::custom)?;
            if den == BigInt::from(0) {
                return Err(D::Error::custom("zero denominator"));
            }
            terms.push((e, Rational::from_bigints(n, den)));
        }
        Ok(CycNum::from_terms(raw.order, terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let x = CycNum::from_terms(5, [(2, Rational::new(-3, 4)), (0, Rational::ONE)]);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"order":5,"terms":[[0,1,1],[2,-3,4]]}"#);
        let back: CycNum = serde_json::from_str(&s).unwrap();
        assert_eq!(back.terms(), x.terms());
    }

    #[test]
    fn big_coefficients_use_strings() {
        let big: BigInt = BigInt::from(i64::MAX) * 10;
        let x = CycNum::from_rational(3, Rational::from(big.clone()));
        let s = serde_json::to_string(&x).unwrap();
        assert!(s.contains(&format!("\"{big}\"")));
        let back: CycNum = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(serde_json::from_str::<CycNum>(r#"{"order":0,"terms":[]}"#).is_err());
        assert!(serde_json::from_str::<CycNum>(r#"{"order":5,"terms":[[0,1,0]]}"#).is_err());
    }
}
