//! The exact rational scalar used everywhere in the crate.
//!
//! [`Rat`] is `num_rational::BigRational`: numerator and denominator are
//! arbitrary-precision, the denominator is kept positive and the pair is
//! reduced on every construction, so `==` and `Hash` are structural.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

/// `num / den` as a canonical rational. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn from_big(n: BigInt) -> Rat {
    Rat::from_integer(n)
}

/// `(-1)^e` as a rational.
pub fn sign_pow(e: usize) -> Rat {
    if e.is_multiple_of(2) {
        Rat::one()
    } else {
        -Rat::one()
    }
}

/// Integer power with a nonnegative exponent; `x^0 = 1` including `0^0`.
pub fn pow(x: &Rat, e: usize) -> Rat {
    let mut acc = Rat::one();
    let mut base = x.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    acc
}

/// Formats a rational as `num/den` in lowest terms, with `p/1` for integers.
pub fn to_fraction(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Wrapper whose `Display` is [`to_fraction`].
pub struct Fraction<'a>(pub &'a Rat);

impl fmt::Display for Fraction<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseRatError {
    #[error("malformed rational `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parses `a`, `a/b` or `-a/b` into a reduced rational.
pub fn parse_rat(s: &str) -> Result<Rat, ParseRatError> {
    let s = s.trim();
    let bad = || ParseRatError::Malformed(s.to_owned());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (
            BigInt::from_str(n.trim()).map_err(|_| bad())?,
            BigInt::from_str(d.trim()).map_err(|_| bad())?,
        ),
        None => (BigInt::from_str(s).map_err(|_| bad())?, BigInt::one()),
    };
    if den.is_zero() {
        return Err(ParseRatError::ZeroDenominator(s.to_owned()));
    }
    Ok(Rat::new(num, den))
}

/// Serde helper: a rational as its `num/den` string.
pub fn serialize<S: serde::Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(&Fraction(r))
}

/// Serde helper for optional rationals; `None` becomes `null`.
pub fn serialize_opt<S: serde::Serializer>(r: &Option<Rat>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.collect_str(&Fraction(r)),
        None => s.serialize_none(),
    }
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

pub fn abs(r: &Rat) -> Rat {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let r = Rat::new(BigInt::from(6), BigInt::from(-4));
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(to_fraction(&Rat::zero()), "0/1");
        assert_eq!(to_fraction(&int(5)), "5/1");
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rat("-1/2").unwrap(), rat(-1, 2));
        assert_eq!(parse_rat("4/6").unwrap(), rat(2, 3));
        assert_eq!(parse_rat("7").unwrap(), int(7));
        assert!(matches!(parse_rat("1/0"), Err(ParseRatError::ZeroDenominator(_))));
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn pow_small() {
        assert_eq!(pow(&rat(-1, 2), 3), rat(-1, 8));
        assert_eq!(pow(&Rat::zero(), 0), Rat::one());
        assert_eq!(sign_pow(3), int(-1));
    }
}
