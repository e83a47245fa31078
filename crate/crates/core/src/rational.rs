// SPDX-License-Identifier: Apache-2.0

//! Exact rationals and their text form (`p/q` or an integer).

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::ParseError;

pub type Rational = num_rational::BigRational;

/// `num / den` as an exact rational. Panics if `den == 0`.
pub fn q(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p/q`, `-p/q` or an integer. `offset` is added to reported positions.
pub fn parse_rational(s: &str, offset: usize) -> Result<Rational, ParseError> {
    let lead = s.len() - s.trim_start().len();
    let t = s.trim();
    if t.is_empty() {
        return Err(ParseError::new(offset, "expected a rational"));
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t, None),
    };
    let parse_int = |part: &str| -> Result<BigInt, ParseError> {
        let digits = part.strip_prefix('-').unwrap_or(part);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ParseError::new(
                offset + lead,
                format!("invalid rational `{t}`"),
            ));
        }
        part.parse::<BigInt>()
            .map_err(|_| ParseError::new(offset + lead, format!("invalid rational `{t}`")))
    };
    let n = parse_int(num)?;
    let d = match den {
        Some(d) => parse_int(d)?,
        None => BigInt::from(1),
    };
    if d.is_zero() {
        return Err(ParseError::new(offset + lead, "zero denominator"));
    }
    Ok(Rational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_rational("1/3", 0).unwrap(), q(1, 3));
        assert_eq!(parse_rational(" -2/4 ", 0).unwrap(), q(-1, 2));
        assert_eq!(parse_rational("7", 0).unwrap(), int(7));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_rational("1/0", 0).is_err());
        assert!(parse_rational("a", 0).is_err());
        assert!(parse_rational("", 3).unwrap_err().position == 3);
        assert!(parse_rational("1/-", 0).is_err());
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(q(2, -4).to_string(), "-1/2");
        assert_eq!(int(3).to_string(), "3");
    }
}
