//! Exact rational parsing and rendering.
//!
//! Numeric inputs cross the boundary as decimal strings ("0.95") or
//! fractions ("19/20") and are held as exact rationals from then on;
//! "0.95" becomes 19/20 with no rounding anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    Malformed(String),
    OutOfRange { text: String, expected: &'static str },
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Malformed(s) => write!(f, "malformed number: {s:?}"),
            ParseError::OutOfRange { text, expected } => {
                write!(f, "value {text:?} out of range: expected {expected}")
            }
        }
    }
}

impl std::error::Error for ParseError {}

fn digits(s: &str) -> Result<BigInt, ParseError> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseError::Malformed(s.to_string()));
    }
    s.parse::<BigInt>()
        .map_err(|_| ParseError::Malformed(s.to_string()))
}

/// Parses a nonnegative decimal with an optional fraction part, or a
/// fraction `p/q` with p >= 0 and q > 0, into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational, ParseError> {
    let s = text.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p = digits(p)?;
        let q = digits(q)?;
        if q.is_zero() {
            return Err(ParseError::Malformed(text.to_string()));
        }
        Ok(Rational::new(p, q))
    } else if let Some((int, frac)) = s.split_once('.') {
        let int = digits(int)?;
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac = digits(frac)?;
        Ok(Rational::new(int * &scale + frac, scale))
    } else {
        Ok(Rational::from_integer(digits(s)?))
    }
}

/// Renders an exact rational as a terminating decimal when the reduced
/// denominator is of the form 2^a * 5^b, and as "p/q" otherwise. The
/// output parses back to the same rational.
pub fn render_rational(r: &Rational) -> String {
    if r.is_negative() {
        return format!("-{}", render_rational(&-r));
    }
    let numer = r.numer();
    let denom = r.denom();
    if denom.is_one() {
        return numer.to_string();
    }
    let two = BigInt::from(2u32);
    let five = BigInt::from(5u32);
    let mut rest = denom.clone();
    let mut twos = 0u32;
    let mut fives = 0u32;
    while (&rest % &two).is_zero() {
        rest /= &two;
        twos += 1;
    }
    while (&rest % &five).is_zero() {
        rest /= &five;
        fives += 1;
    }
    if !rest.is_one() {
        return format!("{numer}/{denom}");
    }
    let places = twos.max(fives);
    // 10^places / denom is integral by construction.
    let scaled = numer * BigInt::from(10u32).pow(places) / denom;
    let mut s = scaled.to_string();
    let places = places as usize;
    if s.len() <= places {
        s = format!("{}{}", "0".repeat(places - s.len() + 1), s);
    }
    s.insert(s.len() - places, '.');
    s
}
