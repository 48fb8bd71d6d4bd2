//! Small helpers around `BigRational`: construction, JSON round trips and
//! integer utilities shared by several modules.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn q_int(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

/// `num / den` as a rational; `den` must be nonzero.
pub fn q_ratio(num: usize, den: usize) -> Q {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn bigint_to_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

pub fn bigint_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| Error::Input(format!("not an integer: {n}"))),
        Value::String(s) => s.trim().parse::<BigInt>().map_err(|_| Error::Input(format!("not an integer: {s:?}"))),
        other => Err(Error::Input(format!("expected an integer, found {other}"))),
    }
}

pub fn q_to_json(x: &Q) -> Value {
    json!({ "num": bigint_to_json(x.numer()), "den": bigint_to_json(x.denom()) })
}

/// Accepts `{"num":..,"den":..}`, a bare integer, or a string `"a/b"`.
pub fn q_from_json(v: &Value) -> Result<Q> {
    match v {
        Value::Object(map) => {
            let num = bigint_from_json(map.get("num").ok_or_else(|| Error::Input("missing num".into()))?)?;
            let den = match map.get("den") {
                Some(d) => bigint_from_json(d)?,
                None => BigInt::one(),
            };
            if den.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(num, den))
        }
        Value::String(s) if s.contains('/') => parse_q(s),
        _ => Ok(BigRational::from_integer(bigint_from_json(v)?)),
    }
}

/// Parses `"a"` or `"a/b"`.
pub fn parse_q(s: &str) -> Result<Q> {
    let bad = || Error::Input(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().map_err(|_| bad())?;
            let b: BigInt = b.trim().parse().map_err(|_| bad())?;
            if b.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(a, b))
        }
        None => Ok(BigRational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Least common multiple of the denominators of `xs` (1 for an empty slice).
pub fn denominator_lcm<'a>(xs: impl IntoIterator<Item = &'a Q>) -> BigInt {
    use num_integer::Integer;
    let mut l = BigInt::one();
    for x in xs {
        l = l.lcm(x.denom());
    }
    l
}

/// Exact integer `k`-th root of a non-negative integer, if it exists.
pub fn exact_root(n: &BigInt, k: u32) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.nth_root(k);
    if num_traits::pow(r.clone(), k as usize) == *n {
        Some(r)
    } else {
        None
    }
}
