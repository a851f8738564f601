//! Serde adapters that encode big integers as decimal strings.
//!
//! JSON consumers limited to 53-bit numbers would silently corrupt large
//! dimension counts, so every exact integer crosses the wire as a string.

use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use serde::{de, Deserialize, Deserializer, Serializer};

pub mod biguint {
    use super::*;

    pub fn serialize<S: Serializer>(value: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&value.to_str_radix(10))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let raw = String::deserialize(d)?;
        parse_biguint(&raw).map_err(de::Error::custom)
    }
}

pub mod bigint {
    use super::*;

    pub fn serialize<S: Serializer>(value: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&value.to_str_radix(10))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let raw = String::deserialize(d)?;
        parse_bigint(&raw).map_err(de::Error::custom)
    }
}

/// Strict decimal parse: optional leading `-` for signed values, digits only.
pub fn parse_bigint(raw: &str) -> Result<BigInt, String> {
    let digits = raw.strip_prefix('-').unwrap_or(raw);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("not a decimal integer: {raw:?}"));
    }
    BigInt::from_str(raw).map_err(|e| format!("{raw:?}: {e}"))
}

pub fn parse_biguint(raw: &str) -> Result<BigUint, String> {
    if raw.is_empty() || !raw.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("not a nonnegative decimal integer: {raw:?}"));
    }
    BigUint::from_str(raw).map_err(|e| format!("{raw:?}: {e}"))
}
