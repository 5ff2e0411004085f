//! Exact rational scalars.
//!
//! `Rat` is an arbitrary-precision rational kept in lowest terms with a
//! positive denominator. The canonical text form is always `num/den`, even for
//! integers, so serialized values never depend on formatting heuristics.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::AlgebraError;

pub type Rat = BigRational;

/// `num/den` as an exact rational. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rat {
    assert!(den != 0, "zero denominator");
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rat {
    BigRational::from_integer(BigInt::from(value))
}

pub fn zero() -> Rat {
    Rat::zero()
}

pub fn one() -> Rat {
    Rat::one()
}

/// Canonical `num/den` rendering.
pub fn to_canonical(value: &Rat) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Human-oriented rendering: integers print without a denominator.
pub fn to_pretty(value: &Rat) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        to_canonical(value)
    }
}

/// Parses `a`, `-a`, `a/b` or `-a/b` with decimal integers. Decimal points
/// and exponents are rejected so no input is ever rounded.
pub fn parse_rat(text: &str) -> Result<Rat, AlgebraError> {
    let text = text.trim();
    let bad = || AlgebraError::Parse(format!("invalid rational literal `{text}`"));
    if text.is_empty() || text.contains(['.', 'e', 'E']) {
        return Err(bad());
    }
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(AlgebraError::DivisionByZero);
    }
    Ok(BigRational::new(num, den))
}

/// Binomial coefficient C(n, k) as an exact integer; zero when k > n.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn pow(base: &Rat, exp: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

pub fn is_negative(value: &Rat) -> bool {
    value.is_negative()
}
