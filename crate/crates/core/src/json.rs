//! Exact integer <-> JSON number conversion.
//!
//! Relies on serde_json's arbitrary-precision numbers so integers of any size
//! are written as plain JSON integers rather than strings or floats.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub(crate) fn big_number(v: &BigInt) -> serde_json::Number {
    serde_json::Number::from_str(&v.to_string()).expect("integer literal is a valid JSON number")
}

pub(crate) fn parse_big(n: &serde_json::Number) -> Result<BigInt, String> {
    BigInt::from_str(&n.to_string()).map_err(|e| format!("expected an integer, got {n}: {e}"))
}

/// `serialize_with` / `deserialize_with` helpers for `Vec<BigInt>`.
pub mod big_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(big_number).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        use serde::de::Error as _;
        Vec::<serde_json::Number>::deserialize(d)?.iter().map(|n| parse_big(n).map_err(D::Error::custom)).collect()
    }
}

/// `serialize_with` helper for a single `BigInt`.
pub mod big {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        big_number(v).serialize(s)
    }
}
