//! Exact rationals and their canonical string form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Canonical serialization: always `num/den`, denominator positive.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parse_int = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|e| Error::Parse(format!("{t:?}: {e}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("{s:?}: zero denominator")));
            }
            Ok(Rational::new(parse_int(n)?, d))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

/// Human-readable coefficient prefix for a term: "" for 1, "−" for −1,
/// "3", "−1/4" etc. The caller decides on separators.
pub(crate) fn coefficient_prefix(q: &Rational, has_monomial: bool) -> String {
    let neg = q.is_negative();
    let a = q.abs();
    let body = if a.is_one() && has_monomial {
        String::new()
    } else if a.is_integer() {
        a.numer().to_string()
    } else if has_monomial {
        format!("({}/{})", a.numer(), a.denom())
    } else {
        format!("{}/{}", a.numer(), a.denom())
    };
    if neg {
        format!("−{body}")
    } else {
        body
    }
}

pub fn lcm_of_denominators<'a>(it: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    use num_integer::Integer;
    it.into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_always_has_denominator() {
        assert_eq!(format_rational(&int(3)), "3/1");
        assert_eq!(format_rational(&rat(-2, 4)), "-1/2");
        assert_eq!(format_rational(&rat(3, -6)), "-1/2");
    }

    #[test]
    fn parse_accepts_both_forms() {
        assert_eq!(parse_rational("5").unwrap(), int(5));
        assert_eq!(parse_rational(" -10/4 ").unwrap(), rat(-5, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
