//! Exact rationals. `BigRational` keeps lowest terms with a positive denominator.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    assert!(d != 0, "zero denominator");
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Parses `a`, `-a` or `a/b` with integer `a`, `b`.
pub fn parse(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Parse {
        input: s.to_string(),
        message: "not a rational".into(),
    };
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

pub fn to_i64(q: &Rational) -> Option<i64> {
    if !q.is_integer() {
        return None;
    }
    i64::try_from(q.to_integer()).ok()
}

/// `3`, `-1/2`: same as `Display`, kept as a named helper for report code.
pub fn show(q: &Rational) -> String {
    q.to_string()
}

/// Coefficient prefix for a term: `""`, `"-"`, `"3/2*"`, `"-5*"`.
pub(crate) fn coeff_prefix(q: &Rational) -> String {
    if q.is_one() {
        String::new()
    } else if (-q).is_one() {
        "-".into()
    } else {
        format!("{q}*")
    }
}

/// Joins signed terms as `a + b - c`; empty input renders as `0`.
pub(crate) fn join_terms(terms: impl IntoIterator<Item = (Rational, String)>) -> String {
    let mut out = String::new();
    for (c, body) in terms {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        let piece = if body.is_empty() {
            mag.to_string()
        } else {
            format!("{}{body}", coeff_prefix(&mag))
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&piece);
    }
    if out.is_empty() { "0".into() } else { out }
}
