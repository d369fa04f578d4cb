//! Arbitrary-precision rationals and the conversions the rest of the crate needs.
//!
//! Values are [`num_rational::BigRational`], which is always kept in canonical
//! form (positive denominator, coprime parts).

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("malformed rational {0:?}: expected [+|-]digits[/digits]")]
    Malformed(String),
    #[error("zero denominator in rational {0:?}")]
    ZeroDenominator(String),
}

/// Parses `"a"`, `"-a/b"`, `"+a/b"`. No whitespace, no exponent, denominator
/// digits only.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let malformed = || ParseRationalError::Malformed(text.to_string());
    let (negative, body) = match text.as_bytes().first() {
        Some(b'-') => (true, &text[1..]),
        Some(b'+') => (false, &text[1..]),
        _ => (false, text),
    };
    let (num_digits, den_digits) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    let all_digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if !all_digits(num_digits) || den_digits.is_some_and(|d| !all_digits(d)) {
        return Err(malformed());
    }
    let mut num: BigInt = num_digits.parse().map_err(|_| malformed())?;
    if negative {
        num = -num;
    }
    let den: BigInt = match den_digits {
        Some(d) => d.parse().map_err(|_| malformed())?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(ParseRationalError::ZeroDenominator(text.to_string()));
    }
    Ok(Rational::new(num, den))
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Nearest binary64 value, ties to even.
///
/// Falls back to the library conversion outside the normal exponent range.
pub fn to_f64_nearest(value: &Rational) -> f64 {
    if value.is_zero() {
        return 0.0;
    }
    let negative = value.is_negative();
    let num = value.numer().abs();
    let den = value.denom().clone();
    // Scale so the integer quotient carries 55 or 56 significant bits.
    let shift = 55 - (num.bits() as i64 - den.bits() as i64);
    let (quotient, remainder) = if shift >= 0 {
        (num << shift as usize).div_rem(&den)
    } else {
        num.div_rem(&(den << (-shift) as usize))
    };
    let extra = quotient.bits() as i64 - 53;
    debug_assert!((2..=3).contains(&extra));
    let mask = (BigInt::one() << extra as usize) - 1u8;
    let dropped = &quotient & &mask;
    let half = BigInt::one() << (extra - 1) as usize;
    let mut mantissa = (&quotient >> extra as usize).to_u64().expect("53-bit mantissa");
    let round_up = match dropped.cmp(&half) {
        std::cmp::Ordering::Greater => true,
        std::cmp::Ordering::Less => false,
        std::cmp::Ordering::Equal => !remainder.is_zero() || mantissa & 1 == 1,
    };
    let mut exponent = extra - shift;
    if round_up {
        mantissa += 1;
        if mantissa == 1 << 53 {
            mantissa >>= 1;
            exponent += 1;
        }
    }
    if !(-1000..=960).contains(&exponent) {
        return value.to_f64().unwrap_or(if negative { f64::NEG_INFINITY } else { f64::INFINITY });
    }
    let magnitude = mantissa as f64 * 2f64.powi(exponent as i32);
    if negative {
        -magnitude
    } else {
        magnitude
    }
}

/// Exact square root when `value` is the square of a rational.
pub fn exact_sqrt(value: &Rational) -> Option<Rational> {
    if value.is_negative() {
        return None;
    }
    let root = |x: &BigInt| {
        let r = x.sqrt();
        (&r * &r == *x).then_some(r)
    };
    Some(Rational::new(root(value.numer())?, root(value.denom())?))
}

/// Renders a nonnegative rational's square root: exact when possible,
/// otherwise `sqrt(a/b)`.
pub fn format_sqrt(value: &Rational) -> String {
    match exact_sqrt(value) {
        Some(r) => r.to_string(),
        None => format!("sqrt({value})"),
    }
}

pub fn sign_of(value: &Rational) -> std::cmp::Ordering {
    match value.numer().sign() {
        Sign::Minus => std::cmp::Ordering::Less,
        Sign::NoSign => std::cmp::Ordering::Equal,
        Sign::Plus => std::cmp::Ordering::Greater,
    }
}
