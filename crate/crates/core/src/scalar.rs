//! Coefficient fields: exact rationals and complex double precision.
//!
//! Every algorithm in this crate is generic over [`Scalar`]. The exact
//! instantiation ([`Rational`]) makes every zero test decidable — residuals
//! are identically zero, not merely small — while [`Complex64`] trades that
//! for speed and for genuinely complex coefficients.

use crate::error::Error;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Div, Neg, Sub};
use std::str::FromStr;

/// Exact rational coefficients with arbitrary-precision integer parts.
pub type Rational = BigRational;

/// Serialized form of one real or imaginary coefficient part: exact values
/// travel as `"num/den"` strings (never rounded), floating values as numbers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffRepr {
    Number(f64),
    Ratio(String),
}

/// A field of coefficients the solvers can run over.
///
/// Beyond ring arithmetic the solvers need division by an explicitly nonzero
/// element, conjugation (for the pairing), exact integer injection (factorial
/// ratios arrive as [`BigInt`]), and a magnitude for norms and pruning.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// True when arithmetic is exact and `is_zero` is a decision procedure.
    const EXACT: bool;

    /// Complex conjugate; the identity on real scalar types.
    fn conj(&self) -> Self;

    /// Exact injection of an integer.
    fn from_bigint(n: &BigInt) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_bigint(&BigInt::from(n))
    }

    /// Absolute value as `f64`, used for residual norms and pruning. May lose
    /// precision; never used to decide exact zeroness.
    fn magnitude(&self) -> f64;

    /// Split into serialized real and imaginary parts.
    fn to_repr(&self) -> (CoeffRepr, CoeffRepr);

    /// Rebuild from serialized parts. Exact types reject nonzero imaginary
    /// parts and non-finite numbers.
    fn from_repr(re: &CoeffRepr, im: &CoeffRepr) -> Result<Self, Error>;
}

fn rational_from_repr(part: &CoeffRepr) -> Result<Rational, Error> {
    match part {
        CoeffRepr::Number(v) => Rational::from_float(*v)
            .ok_or_else(|| Error::Parse(format!("non-finite coefficient {v}"))),
        CoeffRepr::Ratio(s) => Rational::from_str(s)
            .map_err(|e| Error::Parse(format!("bad rational literal {s:?}: {e}"))),
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn conj(&self) -> Self {
        self.clone()
    }

    fn from_bigint(n: &BigInt) -> Self {
        Rational::from_integer(n.clone())
    }

    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }

    fn to_repr(&self) -> (CoeffRepr, CoeffRepr) {
        (
            CoeffRepr::Ratio(format!("{}/{}", self.numer(), self.denom())),
            CoeffRepr::Ratio("0/1".to_owned()),
        )
    }

    fn from_repr(re: &CoeffRepr, im: &CoeffRepr) -> Result<Self, Error> {
        let re = rational_from_repr(re)?;
        let im = rational_from_repr(im)?;
        if !im.is_zero() {
            return Err(Error::Parse(
                "nonzero imaginary part requires floating-point arithmetic".to_owned(),
            ));
        }
        Ok(re)
    }
}

fn float_from_repr(part: &CoeffRepr) -> Result<f64, Error> {
    match part {
        CoeffRepr::Number(v) => Ok(*v),
        CoeffRepr::Ratio(s) => {
            let r = Rational::from_str(s)
                .map_err(|e| Error::Parse(format!("bad rational literal {s:?}: {e}")))?;
            Ok(r.to_f64().unwrap_or(f64::INFINITY))
        }
    }
}

impl Scalar for Complex64 {
    const EXACT: bool = false;

    fn conj(&self) -> Self {
        Complex64::conj(self)
    }

    fn from_bigint(n: &BigInt) -> Self {
        Complex64::new(n.to_f64().unwrap_or(f64::INFINITY), 0.0)
    }

    fn magnitude(&self) -> f64 {
        self.norm()
    }

    fn to_repr(&self) -> (CoeffRepr, CoeffRepr) {
        (CoeffRepr::Number(self.re), CoeffRepr::Number(self.im))
    }

    fn from_repr(re: &CoeffRepr, im: &CoeffRepr) -> Result<Self, Error> {
        Ok(Complex64::new(float_from_repr(re)?, float_from_repr(im)?))
    }
}
