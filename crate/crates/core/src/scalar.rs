//! Scalar abstraction shared by the polyhedral routines.
//!
//! Every geometric operation is generic over [`Scalar`]. Floating types carry a
//! relative predicate tolerance; exact rationals carry a zero tolerance, so the
//! same code path becomes exact arithmetic.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, ToPrimitive, Zero};

/// Relative predicate tolerance used for `f64` computations.
pub const PREDICATE_TOLERANCE: f64 = 1e-9;

/// Relative predicate tolerance used for `f32` computations.
pub const PREDICATE_TOLERANCE_F32: f32 = 1e-5;

/// Field element usable by the polyhedral calculus.
pub trait Scalar:
    Clone + Debug + Display + PartialOrd + Signed + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// Relative tolerance for predicates. Zero for exact types.
    fn tolerance() -> Self;

    /// Whether arithmetic in this type is exact.
    fn is_exact() -> bool;

    /// Converts an exact rational, rounding if the type is inexact.
    fn from_ratio(r: &BigRational) -> Option<Self>;

    /// JSON encoding: plain numbers for floats, `"p/q"` strings for rationals.
    fn to_json(&self) -> serde_json::Value;

    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("literal must be representable")
    }

    fn as_f64(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn tolerance() -> Self {
        PREDICATE_TOLERANCE
    }
    fn is_exact() -> bool {
        false
    }
    fn from_ratio(r: &BigRational) -> Option<Self> {
        r.to_f64()
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::from(*self)
    }
}

impl Scalar for f32 {
    fn tolerance() -> Self {
        PREDICATE_TOLERANCE_F32
    }
    fn is_exact() -> bool {
        false
    }
    fn from_ratio(r: &BigRational) -> Option<Self> {
        r.to_f32()
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::from(*self as f64)
    }
}

impl Scalar for BigRational {
    fn tolerance() -> Self {
        BigRational::zero()
    }
    fn is_exact() -> bool {
        true
    }
    fn from_ratio(r: &BigRational) -> Option<Self> {
        Some(r.clone())
    }
    fn to_json(&self) -> serde_json::Value {
        if self.is_integer() {
            serde_json::Value::String(self.numer().to_string())
        } else {
            serde_json::Value::String(format!("{}/{}", self.numer(), self.denom()))
        }
    }
    fn lit(v: f64) -> Self {
        BigRational::from_float(v).expect("literal must be finite")
    }
}

/// Builds an exact rational `num/den`.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses a decimal (`"0.25"`, `"3"`) or fraction (`"1/3"`) string as an exact rational.
pub fn parse_ratio(text: &str) -> Option<BigRational> {
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let num: BigInt = num.trim().parse().ok()?;
        let den: BigInt = den.trim().parse().ok()?;
        if den.is_zero() {
            return None;
        }
        return Some(BigRational::new(num, den));
    }
    if let Ok(int) = text.parse::<BigInt>() {
        return Some(BigRational::from_integer(int));
    }
    // Decimal literal: read digits exactly instead of going through binary floating point.
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(pos) => (&text[..pos], text[pos + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let negative = int_part.starts_with('-');
    let digits = format!("{}{}", int_part.trim_start_matches(['-', '+']), frac_part);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let mut value = BigRational::from_integer(digits.parse::<BigInt>().ok()?);
    let shift = exponent - frac_part.len() as i32;
    let ten = BigRational::from_integer(BigInt::from(10));
    let scale = num_traits::pow(ten, shift.unsigned_abs() as usize);
    if shift >= 0 {
        value *= scale;
    } else {
        value /= scale;
    }
    Some(if negative { -value } else { value })
}

/// Tolerance band around `a` and `b`: `eps * (1 + max(|a|, |b|))`.
pub fn band<T: Scalar>(a: &T, b: &T) -> T {
    let m = if a.abs() > b.abs() { a.abs() } else { b.abs() };
    T::tolerance() * (T::one() + m)
}

pub fn approx_eq<T: Scalar>(a: &T, b: &T) -> bool {
    (a.clone() - b.clone()).abs() <= band(a, b)
}

/// `a <= b` up to the relative tolerance.
pub fn approx_le<T: Scalar>(a: &T, b: &T) -> bool {
    *a <= b.clone() + band(a, b)
}

/// Coordinate-wise tolerant equality of two points.
pub fn points_approx_eq<T: Scalar>(a: &[T], b: &[T]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| approx_eq(x, y))
}

pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// Lexicographic comparison; incomparable entries (NaN) compare equal.
pub fn lex_cmp<T: Scalar>(a: &[T], b: &[T]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.partial_cmp(y) {
            Some(std::cmp::Ordering::Equal) | None => continue,
            Some(ord) => return ord,
        }
    }
    a.len().cmp(&b.len())
}

pub fn factorial<T: Scalar>(n: usize) -> T {
    (1..=n).fold(T::one(), |acc, k| acc * T::from_usize(k).expect("small integer"))
}

/// Value of a support function: finite or `+inf`.
#[derive(Debug, Clone, PartialEq)]
pub enum Extended<T> {
    Finite(T),
    PosInf,
}

impl<T: Scalar> Extended<T> {
    pub fn finite(&self) -> Option<&T> {
        match self {
            Extended::Finite(v) => Some(v),
            Extended::PosInf => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Extended::PosInf)
    }

    /// `+inf` maps to `f64::INFINITY`.
    pub fn to_f64(&self) -> f64 {
        match self {
            Extended::Finite(v) => v.as_f64(),
            Extended::PosInf => f64::INFINITY,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals_exactly() {
        assert_eq!(parse_ratio("1/3"), Some(ratio(1, 3)));
        assert_eq!(parse_ratio(" -2/4 "), Some(ratio(-1, 2)));
        assert_eq!(parse_ratio("0.25"), Some(ratio(1, 4)));
        assert_eq!(parse_ratio("-1.5e1"), Some(ratio(-15, 1)));
        assert_eq!(parse_ratio("7"), Some(ratio(7, 1)));
        assert_eq!(parse_ratio("1/0"), None);
        assert_eq!(parse_ratio("abc"), None);
    }

    #[test]
    fn tolerant_comparisons() {
        assert!(approx_eq(&1.0, &(1.0 + 1e-12)));
        assert!(!approx_eq(&1.0, &1.001));
        assert!(approx_le(&(1.0 + 1e-12), &1.0));
        assert!(!approx_eq(&ratio(1, 3), &ratio(333_333_333, 1_000_000_000)));
    }

    #[test]
    fn rational_json_is_a_fraction_string() {
        assert_eq!(ratio(9, 8).to_json(), serde_json::json!("9/8"));
        assert_eq!(ratio(6, 1).to_json(), serde_json::json!("6"));
        assert_eq!(factorial::<f64>(4), 24.0);
    }
}
