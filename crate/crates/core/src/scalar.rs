//! Scalar abstractions.
//!
//! Two kinds of scalars show up in this crate. Log-radii, valuations and the
//! values of piecewise-affine functions live in an exact ordered field
//! ([`Scalar`]); polynomial coefficients live in some field that may carry
//! runtime context such as a prime ([`Coefficient`]).

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num, One, Signed, Zero};

/// An exact ordered field. Division must be exact, which rules out
/// machine integers and floating point.
pub trait Scalar: Num + Signed + Ord + Clone + FromPrimitive + Debug + Display {
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("integer fits the scalar type")
    }

    /// `a / b` as a scalar.
    fn ratio(a: i64, b: i64) -> Self {
        Self::from_int(a) / Self::from_int(b)
    }

    /// Largest integer not exceeding `self`.
    fn floor_int(&self) -> BigInt;

    /// Whether `self` is an integer (lies in the value group `Z`).
    fn is_integral(&self) -> bool;
}

impl Scalar for Ratio<i64> {
    fn floor_int(&self) -> BigInt {
        BigInt::from(self.floor().to_integer())
    }

    fn is_integral(&self) -> bool {
        self.is_integer()
    }
}

impl Scalar for Ratio<i128> {
    fn floor_int(&self) -> BigInt {
        BigInt::from(self.floor().to_integer())
    }

    fn is_integral(&self) -> bool {
        self.is_integer()
    }
}

impl Scalar for BigRational {
    fn floor_int(&self) -> BigInt {
        self.floor().to_integer()
    }

    fn is_integral(&self) -> bool {
        self.is_integer()
    }
}

/// Elements of a field used as polynomial coefficients.
///
/// Unlike `num_traits::Zero`, the neutral elements are produced from an
/// existing element so that fields with runtime parameters (a prime, a
/// valued-field descriptor) can implement the trait.
pub trait Coefficient:
    Clone
    + PartialEq
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn is_zero(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;

    /// The image of the integer `n` in the field of `self`.
    fn int_like(&self, n: i64) -> Self;

    fn big_int_like(&self, n: &BigInt) -> Self;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }
}

impl Coefficient for BigRational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn zero_like(&self) -> Self {
        BigRational::zero()
    }

    fn one_like(&self) -> Self {
        BigRational::one()
    }

    fn int_like(&self, n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn big_int_like(&self, n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }
}
