//! Matrix JSON encoding: an array of rows, each entry an integer or a
//! string `"p/q"` (or `"p"`).
//!
//! Integers outside the `i64` range are written as decimal strings so the
//! encoding stays exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use super::matrix::{IntMatrix, Matrix, RatMatrix};
use crate::error::{Error, Result};

fn int_value(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(x.to_string()),
    }
}

fn rat_value(x: &BigRational) -> Value {
    if x.is_integer() {
        int_value(x.numer())
    } else {
        Value::from(format!("{}/{}", x.numer(), x.denom()))
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let parse_int = |t: &str| t.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("bad integer {t:?}")));
    match s.split_once('/') {
        Some((p, q)) => {
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(parse_int(p)?, q))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}

fn entry_from_value(v: &Value) -> Result<BigRational> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigRational::from_integer(i.into()))
            } else if let Some(u) = n.as_u64() {
                Ok(BigRational::from_integer(u.into()))
            } else {
                Err(Error::Parse(format!("non-integer number {n}; use \"p/q\" strings")))
            }
        }
        Value::String(s) => parse_rational(s),
        other => Err(Error::Parse(format!("unexpected matrix entry {other}"))),
    }
}

/// Serde adapter for a `BigInt` field using the integer encoding above.
pub mod json_int {
    use super::*;

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
        int_value(x).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigInt, D::Error> {
        let v = Value::deserialize(d)?;
        int_from_value(&v).map_err(D::Error::custom)
    }
}

pub fn int_to_value(x: &BigInt) -> Value {
    int_value(x)
}

pub fn int_from_value(v: &Value) -> Result<BigInt> {
    let q = entry_from_value(v)?;
    if q.is_integer() {
        Ok(q.to_integer())
    } else {
        Err(Error::Parse(format!("expected an integer, found {v}")))
    }
}

pub fn rat_matrix_from_value(v: &Value) -> Result<RatMatrix> {
    let rows = v.as_array().ok_or_else(|| Error::Parse("matrix must be an array of rows".into()))?;
    let rows = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| Error::Parse("matrix row must be an array".into()))?
                .iter()
                .map(entry_from_value)
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::square(rows)
}

pub fn int_matrix_from_value(v: &Value) -> Result<IntMatrix> {
    rat_matrix_from_value(v)?
        .to_int()
        .ok_or_else(|| Error::Parse("expected an integer matrix".into()))
}

pub fn int_matrix_to_value(m: &IntMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(int_value).collect())).collect())
}

pub fn rat_matrix_to_value(m: &RatMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(rat_value).collect())).collect())
}

pub fn rational_to_value(x: &BigRational) -> Value {
    rat_value(x)
}

pub fn parse_int_matrix(s: &str) -> Result<IntMatrix> {
    let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    int_matrix_from_value(&v)
}

pub fn parse_rat_matrix(s: &str) -> Result<RatMatrix> {
    let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    rat_matrix_from_value(&v)
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        int_matrix_to_value(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        int_matrix_from_value(&v).map_err(D::Error::custom)
    }
}

impl Serialize for RatMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        rat_matrix_to_value(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        rat_matrix_from_value(&v).map_err(D::Error::custom)
    }
}
