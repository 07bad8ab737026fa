//! Coefficient fields.
//!
//! Everything generic in this crate is written against [`Field`]. Exact
//! rationals are the default instantiation; floats are accepted for quick
//! numeric experiments and rational functions are plugged in for the
//! symbolic pipeline.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};

/// A commutative field with exact equality where the type allows it.
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Div<Output = Self>
{
    fn from_i64(n: i64) -> Self;

    /// Multiplicative inverse, `None` on zero (or on a zero divisor for
    /// rings that are not quite fields).
    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::one() / self.clone())
        }
    }

    fn pow_i(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.try_inv()? } else { self.clone() };
        let mut acc = Self::one();
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * b.clone();
            }
            b = b.clone() * b;
            k >>= 1;
        }
        Some(acc)
    }
}

impl Field for f64 {
    fn from_i64(n: i64) -> Self {
        n as f64
    }
}

impl Field for f32 {
    fn from_i64(n: i64) -> Self {
        n as f32
    }
}

impl Field for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

impl Field for Rational64 {
    fn from_i64(n: i64) -> Self {
        Rational64::from_integer(n)
    }
}

impl Field for num_complex::Complex64 {
    fn from_i64(n: i64) -> Self {
        num_complex::Complex64::new(n as f64, 0.0)
    }
}

/// Exact Gaussian rationals, for exact evaluation on the unit circle.
impl Field for num_complex::Complex<BigRational> {
    fn from_i64(n: i64) -> Self {
        num_complex::Complex::new(BigRational::from_i64(n), BigRational::zero())
    }
}

/// Shorthand for a small exact rational.
pub fn q(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for an exact integer.
pub fn qi(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}
