//! Exact-or-floating scalar values.
//!
//! Parameters arrive either as rational literals (`p/q`, plain integers) or
//! as decimal literals. Rational inputs stay exact so that boundary predicates
//! (`a+b=0`, `2ab-c=0`, `a²+b²+c=0`) are decidable; decimal inputs are carried
//! as `f64` and compared strictly, which only hits measure-zero sets when the
//! user supplies values that are exact in binary floating point.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Sign of a scalar, decided exactly for rational values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

/// A real scalar that is either an exact rational or a 64-bit float.
///
/// Arithmetic between two exact values stays exact; once a float is involved
/// the result is a float. All comparisons against zero are strict (no epsilon),
/// matching the contract that inputs are user-supplied values, not measurements.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Exact(BigRational),
    Float(f64),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseScalarError {
    #[error("empty literal")]
    Empty,
    #[error("invalid numeric literal `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("literal `{0}` is not finite")]
    NotFinite(String),
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar::Exact(BigRational::zero())
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar::Exact(BigRational::from_integer(BigInt::from(n)))
    }

    /// Exact ratio `n/d`. Panics if `d == 0`.
    pub fn from_ratio(n: i64, d: i64) -> Scalar {
        assert!(d != 0, "zero denominator");
        Scalar::Exact(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_rational(r: BigRational) -> Scalar {
        Scalar::Exact(r)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn is_finite(&self) -> bool {
        match self {
            Scalar::Exact(_) => true,
            Scalar::Float(f) => f.is_finite(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => rational_to_f64(r),
            Scalar::Float(f) => *f,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Float(_) => None,
        }
    }

    pub fn sign(&self) -> Sign {
        match self {
            Scalar::Exact(r) => {
                if r.is_zero() {
                    Sign::Zero
                } else if r.is_positive() {
                    Sign::Positive
                } else {
                    Sign::Negative
                }
            }
            Scalar::Float(f) => {
                if *f == 0.0 {
                    Sign::Zero
                } else if *f > 0.0 {
                    Sign::Positive
                } else {
                    Sign::Negative
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.sign() == Sign::Zero
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(-r.clone()),
            Scalar::Float(f) => Scalar::Float(-f),
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a + b),
            _ => Scalar::Float(self.to_f64() + other.to_f64()),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a * b),
            _ => Scalar::Float(self.to_f64() * other.to_f64()),
        }
    }

    /// Division; the caller must rule out a zero divisor for exact values.
    pub fn div(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => {
                assert!(!b.is_zero(), "exact division by zero");
                Scalar::Exact(a / b)
            }
            _ => Scalar::Float(self.to_f64() / other.to_f64()),
        }
    }

    pub fn mul_ratio(&self, r: &BigRational) -> Scalar {
        match self {
            Scalar::Exact(a) => Scalar::Exact(a * r),
            Scalar::Float(f) => Scalar::Float(f * rational_to_f64(r)),
        }
    }

    pub fn squared(&self) -> Scalar {
        self.mul(self)
    }

    pub fn compare(&self, other: &Scalar) -> Ordering {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a.cmp(b),
            _ => self
                .to_f64()
                .partial_cmp(&other.to_f64())
                .expect("scalar values are finite"),
        }
    }

    /// Sign of `self + branch·√radicand`, with `radicand ≥ 0`, decided without
    /// evaluating the square root. `branch` is `Sign::Positive` for the `+`
    /// branch and `Sign::Negative` for the `-` branch.
    pub fn sign_with_sqrt(&self, radicand: &Scalar, branch: Sign) -> Sign {
        debug_assert!(radicand.sign() != Sign::Negative);
        if radicand.is_zero() {
            return self.sign();
        }
        let sq = self.squared();
        match branch {
            Sign::Positive => match self.sign() {
                // self ≥ 0 and √radicand > 0
                Sign::Positive | Sign::Zero => Sign::Positive,
                Sign::Negative => match radicand.compare(&sq) {
                    Ordering::Greater => Sign::Positive,
                    Ordering::Equal => Sign::Zero,
                    Ordering::Less => Sign::Negative,
                },
            },
            Sign::Negative => match self.sign() {
                Sign::Negative | Sign::Zero => Sign::Negative,
                Sign::Positive => match sq.compare(radicand) {
                    Ordering::Greater => Sign::Positive,
                    Ordering::Equal => Sign::Zero,
                    Ordering::Less => Sign::Negative,
                },
            },
            Sign::Zero => self.sign(),
        }
    }
}

/// Parses a scalar literal.
///
/// `p/q` and plain integers parse exactly; anything containing `.`, `e` or `E`
/// is routed to `f64` (rejecting non-finite results).
impl FromStr for Scalar {
    type Err = ParseScalarError;

    fn from_str(s: &str) -> Result<Scalar, ParseScalarError> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseScalarError::Empty);
        }
        if let Some((num, den)) = s.split_once('/') {
            let n = BigInt::from_str(num.trim())
                .map_err(|_| ParseScalarError::Invalid(s.to_string()))?;
            let d = BigInt::from_str(den.trim())
                .map_err(|_| ParseScalarError::Invalid(s.to_string()))?;
            if d.is_zero() {
                return Err(ParseScalarError::ZeroDenominator(s.to_string()));
            }
            return Ok(Scalar::Exact(BigRational::new(n, d)));
        }
        if !s.contains(['.', 'e', 'E']) {
            if let Ok(n) = BigInt::from_str(s) {
                return Ok(Scalar::Exact(BigRational::from_integer(n)));
            }
            return Err(ParseScalarError::Invalid(s.to_string()));
        }
        let f = f64::from_str(s).map_err(|_| ParseScalarError::Invalid(s.to_string()))?;
        if !f.is_finite() {
            return Err(ParseScalarError::NotFinite(s.to_string()));
        }
        Ok(Scalar::Float(f))
    }
}

/// Parses an exponent literal as an exact rational.
///
/// Accepts integers, `p/q`, and finite decimals such as `0.5` (which are exact
/// rationals by construction: `5/10`).
pub fn parse_exact_rational(s: &str) -> Result<BigRational, ParseScalarError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseScalarError::Empty);
    }
    if let Some((num, den)) = s.split_once('/') {
        let n =
            BigInt::from_str(num.trim()).map_err(|_| ParseScalarError::Invalid(s.to_string()))?;
        let d =
            BigInt::from_str(den.trim()).map_err(|_| ParseScalarError::Invalid(s.to_string()))?;
        if d.is_zero() {
            return Err(ParseScalarError::ZeroDenominator(s.to_string()));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let sign = if int_part.trim_start().starts_with('-') {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        let int_digits = if int_part.is_empty() || int_part == "-" || int_part == "+" {
            BigInt::zero()
        } else {
            BigInt::from_str(int_part).map_err(|_| ParseScalarError::Invalid(s.to_string()))?
        };
        if frac_part.is_empty() {
            return Ok(BigRational::from_integer(int_digits));
        }
        if !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ParseScalarError::Invalid(s.to_string()));
        }
        let frac =
            BigInt::from_str(frac_part).map_err(|_| ParseScalarError::Invalid(s.to_string()))?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let magnitude = int_digits.abs() * &scale + frac;
        return Ok(BigRational::new(sign * magnitude, scale));
    }
    BigInt::from_str(s)
        .map(BigRational::from_integer)
        .map_err(|_| ParseScalarError::Invalid(s.to_string()))
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fallback for numerators/denominators outside f64 range.
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

/// True when the rational is an integer.
pub fn is_integer(r: &BigRational) -> bool {
    r.denom().is_one()
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => {
                if is_integer(r) {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Float(x) => write!(f, "{x}"),
        }
    }
}
