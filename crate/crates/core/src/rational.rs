//! Exact rational scalars: parsing, formatting, p-adic valuation, and the
//! perfect-square test.
//!
//! The text form of a rational is `a` or `a/b` with `a`, `b` decimal
//! integers, `b > 0` after reduction.

use alloc::format;
use alloc::string::{String, ToString};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// The exact rational scalar used throughout the crate.
pub type Rat = BigRational;

/// Convenience constructor for an integer rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Convenience constructor for `n/d`. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RatParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid integer literal `{0}`")]
    BadInt(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parses `a` or `a/b`. Whitespace around the literal is ignored; the result
/// is reduced to lowest terms with a positive denominator.
pub fn parse_rat(s: &str) -> Result<Rat, RatParseError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(RatParseError::Empty);
    }
    let parse_int = |t: &str| -> Result<BigInt, RatParseError> {
        t.parse::<BigInt>()
            .map_err(|_| RatParseError::BadInt(t.to_string()))
    };
    match s.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(s)?)),
        Some((num, den)) => {
            let n = parse_int(num.trim())?;
            let d = parse_int(den.trim())?;
            if d.is_zero() {
                return Err(RatParseError::ZeroDenominator(s.to_string()));
            }
            Ok(Rat::new(n, d))
        }
    }
}

/// Formats as `a` for integers and `a/b` otherwise.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// p-adic valuation of a nonzero integer; `None` for zero.
pub fn vp_int(n: &BigInt, p: u64) -> Option<u64> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut v = 0u64;
    let mut m = n.abs();
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        v += 1;
        m = q;
    }
}

/// p-adic valuation of a nonzero rational; `None` for zero.
pub fn vp(r: &Rat, p: u64) -> Option<i64> {
    if r.is_zero() {
        return None;
    }
    let vn = vp_int(r.numer(), p).expect("nonzero numerator") as i64;
    let vd = vp_int(r.denom(), p).expect("nonzero denominator") as i64;
    Some(vn - vd)
}

/// True iff `r` is the square of a rational. Zero counts as a square.
pub fn is_square(r: &Rat) -> bool {
    if r.is_zero() {
        return true;
    }
    if r.is_negative() {
        return false;
    }
    is_square_int(r.numer()) && is_square_int(r.denom())
}

fn is_square_int(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let s = n.sqrt();
    &(&s * &s) == n
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_roundtrip() {
        for text in ["0", "7", "-3", "3/4", "-5/8", "22/7"] {
            let r = parse_rat(text).unwrap();
            assert_eq!(format_rat(&r), text);
        }
        // non-canonical inputs normalize
        assert_eq!(format_rat(&parse_rat("4/8").unwrap()), "1/2");
        assert_eq!(format_rat(&parse_rat("3/-6").unwrap()), "-1/2");
        assert_eq!(format_rat(&parse_rat(" 9/3 ").unwrap()), "3");
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_rat(""), Err(RatParseError::Empty));
        assert!(matches!(parse_rat("x"), Err(RatParseError::BadInt(_))));
        assert!(matches!(
            parse_rat("1/0"),
            Err(RatParseError::ZeroDenominator(_))
        ));
    }

    #[test]
    fn valuations() {
        assert_eq!(vp(&rat_int(8), 2), Some(3));
        assert_eq!(vp(&rat(3, 4), 2), Some(-2));
        assert_eq!(vp(&rat(5, 7), 2), Some(0));
        assert_eq!(vp(&rat_int(0), 2), None);
        assert_eq!(vp(&rat(-18, 5), 3), Some(2));
    }

    #[test]
    fn squares() {
        assert!(is_square(&rat_int(16)));
        assert!(!is_square(&rat_int(2)));
        assert!(is_square(&rat_int(0)));
        assert!(is_square(&rat(4, 9)));
        assert!(!is_square(&rat(4, 3)));
        assert!(!is_square(&rat_int(-4)));
    }
}
