//! Exact rational helpers shared by every module.

use alloc::string::{String, ToString};
use core::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Pow, ToPrimitive, Zero};

/// Arithmetic needed to write a term formula once and instantiate it both
/// exactly and in floating point.
pub trait Scalar: Clone + Num + Neg<Output = Self> + PartialOrd {
    fn from_i64(v: i64) -> Self;
}

impl Scalar for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

impl Scalar for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }
}

pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Nearest `f64`, saturating to ±inf for out-of-range magnitudes.
pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        if x.is_zero() {
            0.0
        } else if x.numer().sign() == x.denom().sign() {
            f64::INFINITY
        } else {
            f64::NEG_INFINITY
        }
    })
}

/// Exact rational value of a finite float.
pub fn from_f64(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse {input:?} as a rational number")]
pub struct ParseRationalError {
    pub input: String,
}

/// Parses `p/q`, integers and decimals with an optional exponent
/// (`-3`, `2/5`, `1.25`, `6.5e-3`) into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational, ParseRationalError> {
    let err = || ParseRationalError { input: s.to_string() };
    let t = s.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n = parse_decimal(n.trim()).ok_or_else(err)?;
        let d = parse_decimal(d.trim()).ok_or_else(err)?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(n / d);
    }
    parse_decimal(t).ok_or_else(err)
}

fn parse_decimal(t: &str) -> Option<BigRational> {
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().ok()?),
        None => (t, 0),
    };
    let (neg, digits) = match mantissa.as_bytes().first()? {
        b'-' => (true, &mantissa[1..]),
        b'+' => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let mut all = String::with_capacity(whole.len() + frac.len());
    all.push_str(whole);
    all.push_str(frac);
    let n = BigInt::parse_bytes(all.as_bytes(), 10)?;
    let shift = exp - frac.len() as i32;
    let ten = BigInt::from(10u32);
    let mut v = BigRational::from_integer(n);
    if shift >= 0 {
        v *= BigRational::from_integer(Pow::pow(&ten, shift as u32));
    } else {
        v /= BigRational::from_integer(Pow::pow(&ten, shift.unsigned_abs()));
    }
    Some(if neg { -v } else { v })
}

/// `p/q` in lowest terms, or `p` when the denominator is one.
pub fn format_rational(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        alloc::format!("{}/{}", x.numer(), x.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_forms() {
        assert_eq!(parse_rational("3/4").unwrap(), ratio(3, 4));
        assert_eq!(parse_rational("-6/8").unwrap(), ratio(-3, 4));
        assert_eq!(parse_rational("1.25").unwrap(), ratio(5, 4));
        assert_eq!(parse_rational("5.5").unwrap(), ratio(11, 2));
        assert_eq!(parse_rational("6.5e-3").unwrap(), ratio(13, 2000));
        assert_eq!(parse_rational("2E2").unwrap(), int(200));
        assert_eq!(parse_rational(".5").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("1.5/0.5").unwrap(), int(3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("-").is_err());
    }

    #[test]
    fn formats_lowest_terms() {
        assert_eq!(format_rational(&ratio(6, -8)), "-3/4");
        assert_eq!(format_rational(&int(7)), "7");
    }

    #[test]
    fn float_conversion_saturates() {
        let huge = BigRational::from_integer(Pow::pow(&BigInt::from(10), 400u32));
        assert_eq!(to_f64(&huge), f64::INFINITY);
        assert_eq!(to_f64(&-huge), f64::NEG_INFINITY);
        assert_eq!(to_f64(&ratio(1, 3)), 1.0 / 3.0);
        assert_eq!(from_f64(0.5).unwrap(), ratio(1, 2));
    }
}
