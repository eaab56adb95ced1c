//! Exact rationals in JSON: integers as numbers, everything else as strings
//! such as `"5/2"` or `"0.25"`.

use postman_core::rational;
use postman_core::Rational;
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};
use serde_json::Value;

pub fn to_value(r: Rational) -> Value {
    if r.is_integer() {
        Value::from(*r.numer())
    } else {
        Value::String(rational::format(r))
    }
}

pub fn from_value(v: &Value) -> Option<Rational> {
    match v {
        Value::Number(n) => rational::parse(&n.to_string()),
        Value::String(s) => rational::parse(s),
        _ => None,
    }
}

/// Serde adapter for `Rational` fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Exact(pub Rational);

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        to_value(self.0).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        from_value(&v)
            .map(Exact)
            .ok_or_else(|| de::Error::custom(format!("not an exact number: {v}")))
    }
}

/// Non-finite floats become `null`, with `+∞` spelled `"inf"` so the sentinel survives.
pub fn float(x: f64) -> Value {
    if x.is_finite() {
        Value::from(x)
    } else if x == f64::INFINITY {
        Value::String("inf".into())
    } else {
        Value::Null
    }
}
