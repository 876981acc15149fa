//! Exact arithmetic helpers over arbitrary-precision integers.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// All traces, contributions and Estrada brackets are reduced big rationals.
pub type ExactRational = BigRational;

pub fn int(v: u64) -> BigInt {
    BigInt::from(v)
}

pub fn ratio(num: i64, den: i64) -> ExactRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn from_int(v: BigInt) -> ExactRational {
    BigRational::from_integer(v)
}

pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigUint::one();
    for k in 2..=n {
        acc *= k;
    }
    BigInt::from_biguint(Sign::Plus, acc)
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `C(n, k)` in machine arithmetic, `None` on overflow.
pub fn binomial_u128(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        // acc * (n - i) is divisible by (i + 1) after the multiplication
        let num = acc.checked_mul(n as u128 - i)?;
        acc = num / (i + 1);
    }
    Some(acc)
}

pub fn pow(base: u64, exp: u64) -> BigInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

/// Renders `num/den` with a positive denominator.
pub fn to_fraction_string(r: &ExactRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_fraction_string(s: &str) -> Result<ExactRational> {
    let (n, d) = s
        .split_once('/')
        .ok_or_else(|| Error::ParseNumber(s.to_string()))?;
    let n: BigInt = n.trim().parse().map_err(|_| Error::ParseNumber(s.to_string()))?;
    let d: BigInt = d.trim().parse().map_err(|_| Error::ParseNumber(s.to_string()))?;
    if d.is_zero() {
        return Err(Error::ParseNumber(s.to_string()));
    }
    Ok(BigRational::new(n, d))
}

/// Parses a decimal literal (`0.001`, `1e-6`, `-2.5E3`) or a fraction
/// (`1/1000`) into an exact rational.
pub fn parse_decimal(s: &str) -> Result<ExactRational> {
    let bad = || Error::ParseNumber(s.to_string());
    let t = s.trim();
    if t.contains('/') {
        return parse_fraction_string(t);
    }
    let (neg, body) = match t.as_bytes().first() {
        Some(b'-') => (true, &t[1..]),
        Some(b'+') => (false, &t[1..]),
        _ => (false, t),
    };
    let (mantissa, exponent) = match body.find(['e', 'E']) {
        Some(i) => {
            let e: i64 = body[i + 1..].parse().map_err(|_| bad())?;
            (&body[..i], e)
        }
        None => (body, 0),
    };
    let (whole, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{whole}{frac}").parse().map_err(|_| bad())?;
    let scale = exponent - frac.len() as i64;
    if scale.unsigned_abs() > 10_000 {
        return Err(bad());
    }
    let ten = BigInt::from(10u32);
    let mut value = if scale >= 0 {
        BigRational::from_integer(digits * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(digits, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        value = -value;
    }
    Ok(value)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rounding {
    Down,
    Up,
    Nearest,
}

/// Decimal rendering with exactly `digits` fractional digits.
pub fn to_decimal(r: &ExactRational, digits: usize, rounding: Rounding) -> String {
    let scale = num_traits::pow(BigInt::from(10u32), digits);
    let scaled = r * BigRational::from_integer(scale.clone());
    let q = match rounding {
        Rounding::Down => scaled.floor().to_integer(),
        Rounding::Up => scaled.ceil().to_integer(),
        Rounding::Nearest => scaled.round().to_integer(),
    };
    let neg = q.is_negative();
    let (int_part, frac_part) = q.abs().div_rem(&scale);
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{int_part}");
    }
    let frac = frac_part.to_string();
    format!("{sign}{int_part}.{}{frac}", "0".repeat(digits - frac.len()))
}

pub fn to_f64(r: &ExactRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Serde adapter storing a rational as its `num/den` string.
pub mod serde_fraction {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &ExactRational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&to_fraction_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<ExactRational, D::Error> {
        let s = String::deserialize(d)?;
        parse_fraction_string(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter storing a big integer as a decimal string.
pub mod serde_bigint {
    use num_bigint::BigInt;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }
}
