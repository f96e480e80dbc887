//! Coefficient rings for q-series.
//!
//! Every series in this crate is generic over its coefficient type. The
//! production instantiation is [`num_bigint::BigInt`]; machine integers are
//! available for small experiments and [`num_rational::BigRational`] for
//! computations that need division of coefficients.

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Zero};

/// An exact commutative ring usable as a series coefficient.
pub trait Coeff:
    Clone
    + Debug
    + Display
    + FromStr
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + FromPrimitive
    + Send
    + Sync
    + 'static
{
    fn add_ref(&mut self, other: &Self);
    fn sub_ref(&mut self, other: &Self);
    /// `self += a * b`
    fn add_product(&mut self, a: &Self, b: &Self);

    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("coefficient ring must contain the integers")
    }

    fn from_count(v: u128) -> Self {
        Self::from_u128(v).expect("count does not fit the coefficient ring")
    }
}

macro_rules! impl_coeff_machine {
    ($($t:ty)*) => ($(
        impl Coeff for $t {
            #[inline]
            fn add_ref(&mut self, other: &Self) {
                *self += *other;
            }
            #[inline]
            fn sub_ref(&mut self, other: &Self) {
                *self -= *other;
            }
            #[inline]
            fn add_product(&mut self, a: &Self, b: &Self) {
                *self += *a * *b;
            }
        }
    )*)
}

impl_coeff_machine!(i64 i128);

impl Coeff for BigInt {
    #[inline]
    fn add_ref(&mut self, other: &Self) {
        *self += other;
    }
    #[inline]
    fn sub_ref(&mut self, other: &Self) {
        *self -= other;
    }
    #[inline]
    fn add_product(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *self += a * b;
    }
}

impl Coeff for BigRational {
    fn add_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_ref(&mut self, other: &Self) {
        *self -= other;
    }
    fn add_product(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
}
