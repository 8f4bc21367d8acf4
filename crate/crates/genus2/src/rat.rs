//! Exact rational scalars shared across the crate.
//!
//! Every quantity in this library is an integer or a small rational; nothing
//! is ever rounded. `Rat` is a reduced fraction over `i64`, which is far more
//! headroom than any bound or invariant computed here requires.

use std::fmt;

use num_rational::Rational64;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub type Rat = Rational64;

/// Reduced fraction `n/d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

/// The integer `n` as a rational.
pub fn rint(n: i64) -> Rat {
    Rat::from_integer(n)
}

/// `#[serde(serialize_with = ...)]` helper applying the [`RatValue`] policy
/// to a bare `Rat` field.
pub fn serialize_rat<S: Serializer>(r: &Rat, serializer: S) -> Result<S::Ok, S::Error> {
    RatValue(*r).serialize(serializer)
}

/// Exact rational wrapper with the JSON policy used by all reports:
/// integer-valued rationals serialize as JSON numbers, everything else as a
/// `"p/q"` string. This keeps golden files free of floating-point drift.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RatValue(pub Rat);

impl fmt::Display for RatValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<Rat> for RatValue {
    fn from(r: Rat) -> Self {
        RatValue(r)
    }
}

impl Serialize for RatValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if self.0.is_integer() {
            serializer.serialize_i64(self.0.to_integer())
        } else {
            serializer.serialize_str(&self.0.to_string())
        }
    }
}

struct RatValueVisitor;

impl<'de> Visitor<'de> for RatValueVisitor {
    type Value = RatValue;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("an integer or a \"p/q\" fraction string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<RatValue, E> {
        Ok(RatValue(rint(v)))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<RatValue, E> {
        i64::try_from(v)
            .map(|n| RatValue(rint(n)))
            .map_err(|_| E::custom("integer out of range"))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<RatValue, E> {
        let (n, d) = match v.split_once('/') {
            Some((n, d)) => (n, d),
            None => (v, "1"),
        };
        let n: i64 = n.trim().parse().map_err(E::custom)?;
        let d: i64 = d.trim().parse().map_err(E::custom)?;
        if d == 0 {
            return Err(E::custom("zero denominator"));
        }
        Ok(RatValue(rat(n, d)))
    }
}

impl<'de> Deserialize<'de> for RatValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        deserializer.deserialize_any(RatValueVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_hides_unit_denominator() {
        assert_eq!(rat(50, 2).to_string(), "25");
        assert_eq!(rat(25, 2).to_string(), "25/2");
        assert_eq!(rat(-8, 21).to_string(), "-8/21");
    }

    #[test]
    fn json_policy_round_trips() {
        let i = RatValue(rint(300));
        let f = RatValue(rat(205, 2));
        assert_eq!(serde_json::to_string(&i).unwrap(), "300");
        assert_eq!(serde_json::to_string(&f).unwrap(), "\"205/2\"");
        let i2: RatValue = serde_json::from_str("300").unwrap();
        let f2: RatValue = serde_json::from_str("\"205/2\"").unwrap();
        assert_eq!(i, i2);
        assert_eq!(f, f2);
    }
}
