//! `{"order": N, "coeffs": [["num", "den"], ...]}` with decimal-string integers.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{euler_phi, CyclotomicNumber, Rational};

#[derive(Serialize, Deserialize)]
struct Wire {
    order: u32,
    coeffs: Vec<[String; 2]>,
}

impl Serialize for CyclotomicNumber {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|q| [q.numer().to_string(), q.denom().to_string()])
            .collect();
        Wire { order: self.order, coeffs }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CyclotomicNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = Wire::deserialize(d)?;
        if w.order == 0 {
            return Err(D::Error::custom("order must be positive"));
        }
        if w.coeffs.len() != euler_phi(w.order) as usize {
            return Err(D::Error::custom(format!(
                "expected {} coefficients for order {}, got {}",
                euler_phi(w.order),
                w.order,
                w.coeffs.len()
            )));
        }
        let mut coeffs = Vec::with_capacity(w.coeffs.len());
        for [n, d] in &w.coeffs {
            let n: BigInt = n.parse().map_err(|_| D::Error::custom(format!("bad integer {n:?}")))?;
            let d: BigInt = d.parse().map_err(|_| D::Error::custom(format!("bad integer {d:?}")))?;
            if !d.is_positive() {
                return Err(D::Error::custom("denominator must be positive"));
            }
            coeffs.push(Rational::new(n, d));
        }
        Ok(CyclotomicNumber { order: w.order, coeffs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wire_format() {
        let z = CyclotomicNumber::from_powers(3, &[(0, Rational::new(1.into(), 2.into())), (1, Rational::from_integer((-3).into()))]);
        let s = serde_json::to_string(&z).unwrap();
        assert_eq!(s, r#"{"order":3,"coeffs":[["1","2"],["-3","1"]]}"#);
        let back: CyclotomicNumber = serde_json::from_str(&s).unwrap();
        assert_eq!(back, z);
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(serde_json::from_str::<CyclotomicNumber>(r#"{"order":3,"coeffs":[["1","1"]]}"#).is_err());
        assert!(serde_json::from_str::<CyclotomicNumber>(r#"{"order":1,"coeffs":[["1","0"]]}"#).is_err());
        assert!(serde_json::from_str::<CyclotomicNumber>(r#"{"order":1,"coeffs":[["x","1"]]}"#).is_err());
    }
}
