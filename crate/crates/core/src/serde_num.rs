//! Serde adapters that write big integers and rationals as exact JSON numbers.
//!
//! They rely on `serde_json`'s arbitrary-precision numbers, so a value of any
//! size round-trips without passing through a float.

use std::fmt::Display;
use std::str::FromStr;

use serde::de::Error as _;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

fn to_number<E: serde::ser::Error>(text: String) -> Result<serde_json::Number, E> {
    serde_json::Number::from_str(&text).map_err(|e| E::custom(format!("{text}: {e}")))
}

fn from_number<T: FromStr, E: serde::de::Error>(n: serde_json::Number) -> Result<T, E> {
    let text = n.to_string();
    text.parse().map_err(|_| E::custom(format!("{text} is not an exact integer")))
}

/// A single integer value.
pub mod int {
    use super::*;

    pub fn serialize<T: Display, S: Serializer>(value: &T, s: S) -> Result<S::Ok, S::Error> {
        to_number::<S::Error>(value.to_string())?.serialize(s)
    }

    pub fn deserialize<'de, T: FromStr, D: Deserializer<'de>>(d: D) -> Result<T, D::Error> {
        from_number(serde_json::Number::deserialize(d)?)
    }
}

/// A list of integers.
pub mod int_vec {
    use super::*;

    pub fn serialize<T: Display, S: Serializer>(values: &[T], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(values.len()))?;
        for v in values {
            seq.serialize_element(&to_number::<S::Error>(v.to_string())?)?;
        }
        seq.end()
    }

    pub fn deserialize<'de, T: FromStr, D: Deserializer<'de>>(d: D) -> Result<Vec<T>, D::Error> {
        Vec::<serde_json::Number>::deserialize(d)?
            .into_iter()
            .map(from_number)
            .collect()
    }
}

/// A list of integer rows.
pub mod int_rows {
    use super::*;

    pub fn serialize<T: Display, S: Serializer>(rows: &[Vec<T>], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(rows.len()))?;
        for row in rows {
            let nums = row
                .iter()
                .map(|v| to_number::<S::Error>(v.to_string()))
                .collect::<Result<Vec<_>, _>>()?;
            seq.serialize_element(&nums)?;
        }
        seq.end()
    }

    pub fn deserialize<'de, T: FromStr, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<T>>, D::Error> {
        Vec::<Vec<serde_json::Number>>::deserialize(d)?
            .into_iter()
            .map(|row| row.into_iter().map(from_number).collect())
            .collect()
    }
}

/// A rational: a JSON number when integral, otherwise a `"p/q"` string.
pub mod rational {
    use super::*;
    use crate::rational::Rational;
    use num_bigint::BigInt;

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        if value.is_integer() {
            to_number::<S::Error>(value.numer().to_string())?.serialize(s)
        } else {
            s.serialize_str(&format!("{}/{}", value.numer(), value.denom()))
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(serde_json::Number),
        Text(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(n) => Ok(Rational::from_bigint(from_number::<BigInt, _>(n)?)),
            Repr::Text(t) => {
                let (p, q) = t.split_once('/').unwrap_or((t.as_str(), "1"));
                let p: BigInt = p.trim().parse().map_err(|_| D::Error::custom(format!("bad rational {t}")))?;
                let q: BigInt = q.trim().parse().map_err(|_| D::Error::custom(format!("bad rational {t}")))?;
                if q == BigInt::from(0) {
                    return Err(D::Error::custom("zero denominator"));
                }
                Ok(Rational::from_bigint(p) / Rational::from_bigint(q))
            }
        }
    }
}
