use num_bigint::{BigInt, Sign as BigSign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(v: i64) -> Int {
    BigInt::from(v)
}

pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"p"`. Decimal notation is rejected.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let ok = |t: &str| {
        let t = t.strip_prefix(['-', '+']).unwrap_or(t);
        !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit())
    };
    if !ok(num) || !ok(den) {
        return Err(bad());
    }
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(n, d))
}

pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_floor(r: &Rat) -> Int {
    r.numer().div_floor(r.denom())
}

pub fn rat_ceil(r: &Rat) -> Int {
    -((-r.numer()).div_floor(r.denom()))
}

/// The rational with smallest denominator in `[lo, hi]` (continued fractions).
pub fn simplest_between(lo: &Rat, hi: &Rat) -> Rat {
    assert!(lo <= hi, "empty interval");
    if lo.is_integer() {
        return lo.clone();
    }
    let fl = rat_floor(lo);
    if Rat::from_integer(fl.clone() + 1) <= *hi {
        return Rat::from_integer(fl + 1);
    }
    // both endpoints share the integer part; recurse on reciprocals of the fractional parts
    let f = Rat::from_integer(fl);
    let (a, b) = (hi - &f, lo - &f);
    f + simplest_between(&a.recip(), &b.recip()).recip()
}

/// Floor of the square root of a non-negative integer.
pub fn isqrt(n: &Int) -> Int {
    assert!(n.sign() != BigSign::Minus, "isqrt of negative integer");
    n.sqrt()
}

fn int_square_root(n: &Int) -> Option<Int> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    (&s * &s == *n).then_some(s)
}

/// Returns the non-negative rational square root of `r` when it exists.
pub fn is_square(r: &Rat) -> Option<Rat> {
    let n = int_square_root(r.numer())?;
    let d = int_square_root(r.denom())?;
    Some(BigRational::new(n, d))
}


/// Serde adapter encoding rationals as `"p/q"` strings.
pub mod serde_rat {
    use super::{parse_rat, rat_to_string, Rat};
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rat_to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            S(String),
            I(i64),
        }
        match Raw::deserialize(d)? {
            Raw::S(s) => parse_rat(&s).map_err(D::Error::custom),
            Raw::I(i) => Ok(Rat::from_integer(i.into())),
        }
    }

    pub mod opt {
        use super::super::{parse_rat, rat_to_string, Rat};
        use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(r: &Option<Rat>, s: S) -> Result<S::Ok, S::Error> {
            match r {
                Some(r) => s.serialize_some(&rat_to_string(r)),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rat>, D::Error> {
            match Option::<serde_json::Value>::deserialize(d)? {
                None | Some(serde_json::Value::Null) => Ok(None),
                Some(serde_json::Value::String(s)) => parse_rat(&s).map(Some).map_err(D::Error::custom),
                Some(serde_json::Value::Number(n)) if n.is_i64() => {
                    Ok(Some(Rat::from_integer(n.as_i64().unwrap().into())))
                }
                Some(other) => Err(D::Error::custom(format!("expected rational, got {other}"))),
            }
        }
    }

    pub mod vec {
        use super::super::{parse_rat, rat_to_string, Rat};
        use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

        pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
            v.iter().map(rat_to_string).collect::<Vec<_>>().serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
            Vec::<serde_json::Value>::deserialize(d)?
                .into_iter()
                .map(|v| match v {
                    serde_json::Value::String(s) => parse_rat(&s).map_err(D::Error::custom),
                    serde_json::Value::Number(n) if n.is_i64() => {
                        Ok(Rat::from_integer(n.as_i64().unwrap().into()))
                    }
                    other => Err(D::Error::custom(format!("expected rational, got {other}"))),
                })
                .collect()
        }
    }
}
