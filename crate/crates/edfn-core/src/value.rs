//! Dual-mode arithmetic: exact rationals and IEEE floats behind one trait.
//!
//! Every numerical routine in this crate is written once, generically over
//! [`Scalar`], and instantiated at `BigRational` (exact mode) or `f64`
//! (float mode). Exact mode turns the identity checks into zero-tolerance
//! equalities; float mode uses the fixed tolerances below.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// Absolute tolerance on `g` values in float mode.
pub const TOL_G: f64 = 1e-10;
/// Infinity-norm tolerance for matching two float minimizers.
pub const TOL_MU: f64 = 1e-8;
/// Pivot threshold for float Gaussian elimination.
pub const TOL_PIVOT: f64 = 1e-12;

/// Nearest-f64 view of a rational, for reporting and grid refinement.
pub fn rat_to_f64(r: &BigRational) -> f64 {
    ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
}

/// Field operations shared by `f64` and `BigRational`.
pub trait Scalar:
    Clone
    + PartialEq
    + PartialOrd
    + fmt::Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
{
    /// Whether comparisons in this mode are exact.
    const EXACT: bool;

    fn from_int(v: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn from_exact(r: &BigRational) -> Self;
    fn abs_val(&self) -> Self;
    /// Usable as a pivot in Gaussian elimination.
    fn pivot_ok(&self) -> bool;
    /// Tolerance when comparing objective values (zero in exact mode).
    fn tol_g() -> Self;
    /// Tolerance when matching minimizer coordinates (zero in exact mode).
    fn tol_mu() -> Self;
    fn approx_f64(&self) -> f64;
    fn into_value(self) -> Value;
    /// `⌊self · n⌋` for nonnegative self, as used by blow-up part sizes.
    fn scaled_floor(&self, n: usize) -> usize;
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_int(v: i64) -> Self {
        v as f64
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn from_exact(r: &BigRational) -> Self {
        rat_to_f64(r)
    }
    fn abs_val(&self) -> Self {
        self.abs()
    }
    fn pivot_ok(&self) -> bool {
        self.abs() > TOL_PIVOT
    }
    fn tol_g() -> Self {
        TOL_G
    }
    fn tol_mu() -> Self {
        TOL_MU
    }
    fn approx_f64(&self) -> f64 {
        *self
    }
    fn into_value(self) -> Value {
        Value::Float(self)
    }
    fn scaled_floor(&self, n: usize) -> usize {
        (self * n as f64).floor().max(0.0) as usize
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
    fn from_exact(r: &BigRational) -> Self {
        r.clone()
    }
    fn abs_val(&self) -> Self {
        self.abs()
    }
    fn pivot_ok(&self) -> bool {
        !self.is_zero()
    }
    fn tol_g() -> Self {
        BigRational::zero()
    }
    fn tol_mu() -> Self {
        BigRational::zero()
    }
    fn approx_f64(&self) -> f64 {
        rat_to_f64(self)
    }
    fn into_value(self) -> Value {
        Value::Exact(self)
    }
    fn scaled_floor(&self, n: usize) -> usize {
        let scaled = self * BigRational::from_integer(BigInt::from(n));
        if scaled < BigRational::zero() {
            return 0;
        }
        scaled.floor().to_integer().to_usize().unwrap_or(usize::MAX)
    }
}

/// Arithmetic mode of a computation or record.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

/// An edge density `p ∈ [0,1]`, held either as an exact rational or a float.
#[derive(Debug, Clone, PartialEq)]
pub enum PValue {
    Exact(BigRational),
    Float(f64),
}

impl PValue {
    pub fn from_ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::domain("p: zero denominator"));
        }
        let r = BigRational::new(BigInt::from(num), BigInt::from(den));
        if r < BigRational::zero() || r > BigRational::one() {
            return Err(Error::domain(format!("p = {num}/{den} outside [0,1]")));
        }
        Ok(PValue::Exact(r))
    }

    pub fn from_f64(x: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::domain(format!("p = {x} outside [0,1]")));
        }
        Ok(PValue::Float(x))
    }

    /// Parses `"num/den"` to an exact value or a decimal literal to a float.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let num: i64 = n.trim().parse().map_err(|_| Error::Parse {
                offset: 0,
                msg: format!("bad rational numerator in {s:?}"),
            })?;
            let den: i64 = d.trim().parse().map_err(|_| Error::Parse {
                offset: n.len() + 1,
                msg: format!("bad rational denominator in {s:?}"),
            })?;
            Self::from_ratio(num, den)
        } else {
            let x: f64 = s.parse().map_err(|_| Error::Parse {
                offset: 0,
                msg: format!("bad probability literal {s:?}"),
            })?;
            Self::from_f64(x)
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, PValue::Exact(_))
    }

    pub fn mode(&self) -> Mode {
        match self {
            PValue::Exact(_) => Mode::Exact,
            PValue::Float(_) => Mode::Float,
        }
    }

    pub fn as_f64(&self) -> f64 {
        match self {
            PValue::Exact(r) => rat_to_f64(r),
            PValue::Float(x) => *x,
        }
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            PValue::Exact(r) => Some(r),
            PValue::Float(_) => None,
        }
    }
}

impl fmt::Display for PValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PValue::Exact(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            PValue::Float(x) => write!(f, "{x}"),
        }
    }
}

/// A computed quantity in either arithmetic mode.
///
/// Serializes rationals as `"num/den"` strings and floats as JSON numbers.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Exact(BigRational),
    Float(f64),
}

impl Value {
    pub fn as_f64(&self) -> f64 {
        match self {
            Value::Exact(r) => rat_to_f64(r),
            Value::Float(x) => *x,
        }
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Value::Exact(r) => Some(r),
            Value::Float(_) => None,
        }
    }

    pub fn mode(&self) -> Mode {
        match self {
            Value::Exact(_) => Mode::Exact,
            Value::Float(_) => Mode::Float,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Value::Float(x) => write!(f, "{x}"),
        }
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Value::Exact(r) => ser.serialize_str(&format!("{}/{}", r.numer(), r.denom())),
            Value::Float(x) => ser.serialize_f64(*x),
        }
    }
}

impl<'de> Deserialize<'de> for Value {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Str(String),
            Num(f64),
        }
        match Raw::deserialize(de)? {
            Raw::Num(x) => Ok(Value::Float(x)),
            Raw::Str(s) => {
                let (n, d) = s
                    .split_once('/')
                    .ok_or_else(|| D::Error::custom(format!("expected num/den, got {s:?}")))?;
                let numer: BigInt = n.parse().map_err(D::Error::custom)?;
                let denom: BigInt = d.parse().map_err(D::Error::custom)?;
                if denom.is_zero() {
                    return Err(D::Error::custom("zero denominator"));
                }
                Ok(Value::Exact(BigRational::new(numer, denom)))
            }
        }
    }
}

/// Parses `p` in the scalar type of the ambient computation.
///
/// Exact computations demand an exact `p`; float computations accept both.
pub fn p_as_scalar<T: Scalar>(p: &PValue) -> Result<T> {
    match p {
        PValue::Exact(r) => Ok(T::from_exact(r)),
        PValue::Float(x) => {
            if T::EXACT {
                Err(Error::domain(
                    "exact mode requires a rational p (use \"num/den\")",
                ))
            } else {
                Ok(T::from_exact(&BigRational::from_float(*x).unwrap()))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_rational_and_float() {
        assert_eq!(PValue::parse("1/4").unwrap(), PValue::from_ratio(1, 4).unwrap());
        assert_eq!(PValue::parse("0.25").unwrap(), PValue::Float(0.25));
        assert!(PValue::parse("5/4").is_err());
        assert!(PValue::parse("x").is_err());
    }

    #[test]
    fn value_serde_roundtrip() {
        let v = Value::Exact(BigRational::new(BigInt::from(3), BigInt::from(10)));
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, "\"3/10\"");
        assert_eq!(serde_json::from_str::<Value>(&s).unwrap(), v);

        let f = Value::Float(0.3);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(serde_json::from_str::<Value>(&s).unwrap(), f);
    }

    #[test]
    fn p_as_scalar_rejects_float_in_exact_mode() {
        let p = PValue::Float(0.3);
        assert!(p_as_scalar::<BigRational>(&p).is_err());
        assert!(p_as_scalar::<f64>(&p).is_ok());
        let q = PValue::from_ratio(2, 7).unwrap();
        let r = p_as_scalar::<BigRational>(&q).unwrap();
        assert_eq!(r, BigRational::new(BigInt::from(2), BigInt::from(7)));
    }
}
