//! Exact rational arithmetic used everywhere in the crate.
//!
//! All demands, solution coordinates, and budgets are `Q` values. Nothing in
//! this crate ever rounds: boundary cases like `x_j = d_j` must compare equal
//! exactly, so floating point is banned from the numeric core.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, always stored normalized (gcd 1, positive
/// denominator) by `num_rational`.
pub type Q = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse {input:?} as a rational: {reason}")]
pub struct ParseRationalError {
    pub input: String,
    pub reason: String,
}

/// Shorthand for small rationals in code and tests.
pub fn q(numer: i64, denom: i64) -> Q {
    Q::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn q_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn err(input: &str, reason: impl Into<String>) -> ParseRationalError {
    ParseRationalError {
        input: input.to_string(),
        reason: reason.into(),
    }
}

/// Parses `"p/q"`, a decimal string like `"0.425"`, or a plain integer,
/// exactly. `0.425` becomes `17/40`, never a float.
pub fn parse_rational(s: &str) -> Result<Q, ParseRationalError> {
    let trimmed = s.trim();
    if trimmed.is_empty() {
        return Err(err(s, "empty string"));
    }
    if let Some((numer, denom)) = trimmed.split_once('/') {
        let n: BigInt = numer
            .trim()
            .parse()
            .map_err(|_| err(s, "numerator is not an integer"))?;
        let d: BigInt = denom
            .trim()
            .parse()
            .map_err(|_| err(s, "denominator is not an integer"))?;
        if d.is_zero() {
            return Err(err(s, "denominator is zero"));
        }
        return Ok(Q::new(n, d));
    }

    let (sign, digits) = match trimmed.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, trimmed.strip_prefix('+').unwrap_or(trimmed)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err(s, "no digits"));
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return Err(err(s, "not a decimal number"));
    }
    let mut numer: BigInt = if int_part.is_empty() {
        BigInt::zero()
    } else {
        int_part.parse().expect("digits checked")
    };
    let mut denom = BigInt::one();
    for c in frac_part.chars() {
        numer = numer * 10 + (c as u8 - b'0');
        denom *= 10;
    }
    Ok(Q::new(numer * sign, denom))
}

/// Decimal rendering for reports. Exact when the expansion terminates within
/// twelve fractional digits, otherwise rounded toward zero and marked with a
/// trailing `~`. The exact `p/q` form next to it is always authoritative.
pub fn decimal_string(value: &Q) -> String {
    const MAX_DIGITS: usize = 12;
    let negative = value.is_negative();
    let abs = value.abs();
    let mut int_part = abs.numer() / abs.denom();
    let mut rem = abs.numer() - &int_part * abs.denom();
    let mut frac = String::new();
    let mut truncated = false;
    while !rem.is_zero() {
        if frac.len() == MAX_DIGITS {
            truncated = true;
            break;
        }
        rem *= 10;
        let digit = &rem / abs.denom();
        frac.push(char::from(
            b'0' + u8::try_from(&digit % 10u8).expect("single digit"),
        ));
        rem -= digit * abs.denom();
    }
    if negative && (!int_part.is_zero() || !frac.is_empty()) {
        int_part = -int_part;
    }
    let mut out = int_part.to_string();
    if negative && out != "-0" && int_part.is_zero() {
        out.insert(0, '-');
    }
    if !frac.is_empty() {
        out.push('.');
        out.push_str(&frac);
    }
    if truncated {
        out.push('~');
    }
    out
}

/// Sums a slice of rationals exactly.
pub fn total(values: &[Q]) -> Q {
    values.iter().fold(Q::zero(), |acc, v| acc + v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fraction_decimal_and_integer_forms() {
        assert_eq!(parse_rational("3/5").unwrap(), q(3, 5));
        assert_eq!(parse_rational("0.425").unwrap(), q(17, 40));
        assert_eq!(parse_rational(".5").unwrap(), q(1, 2));
        assert_eq!(parse_rational("2").unwrap(), q_int(2));
        assert_eq!(parse_rational("-0.3").unwrap(), q(-3, 10));
        assert_eq!(parse_rational(" 1/2 ").unwrap(), q(1, 2));
    }

    #[test]
    fn rejects_malformed_input() {
        for bad in ["", "a", "1/0", "1.2.3", "1/ x", "0x3"] {
            assert!(parse_rational(bad).is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn normalizes_on_construction() {
        let v = parse_rational("6/10").unwrap();
        assert_eq!(v.numer(), &BigInt::from(3));
        assert_eq!(v.denom(), &BigInt::from(5));
        let neg = parse_rational("3/-6").unwrap();
        assert_eq!(neg, q(-1, 2));
        assert!(neg.denom() > &BigInt::zero());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(decimal_string(&q(17, 40)), "0.425");
        assert_eq!(decimal_string(&q_int(2)), "2");
        assert_eq!(decimal_string(&q(-3, 10)), "-0.3");
        assert_eq!(decimal_string(&q(1, 3)), "0.333333333333~");
        assert_eq!(decimal_string(&q(0, 1)), "0");
    }

    #[test]
    fn exact_totals() {
        let xs = [q(1, 10), q(2, 10), q(7, 10)];
        assert_eq!(total(&xs), q_int(1));
    }
}
