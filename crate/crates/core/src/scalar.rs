//! Scalar traits.
//!
//! [`Coefficient`] is what polynomial and series tables store: an exact ring
//! element (machine integers, big integers, rationals). [`Scalar`] is a field
//! used for interpolation and Gaussian moment sums; it also covers `f64` so the
//! same code paths give quick floating-point answers.

use std::fmt::{Debug, Display};
use std::ops::{AddAssign, Neg};

use num_bigint::{BigInt, BigUint};
use num_rational::{BigRational, Ratio};
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

pub trait Coefficient:
    Clone + PartialEq + Debug + Display + Zero + One + AddAssign + Send + Sync + 'static
{
    /// Lossless conversion from a big integer; `None` when out of range.
    fn from_bigint(v: &BigInt) -> Option<Self>;

    fn to_bigint(&self) -> Option<BigInt>;

    fn from_biguint(v: &BigUint) -> Option<Self> {
        Self::from_bigint(&BigInt::from(v.clone()))
    }
}

macro_rules! impl_coefficient_prim {
    ($($t:ty => $to:ident),*) => {$(
        impl Coefficient for $t {
            fn from_bigint(v: &BigInt) -> Option<Self> {
                v.$to()
            }
            fn to_bigint(&self) -> Option<BigInt> {
                Some(BigInt::from(*self))
            }
        }
    )*};
}

impl_coefficient_prim!(u64 => to_u64, i64 => to_i64, u128 => to_u128, i128 => to_i128);

impl Coefficient for BigInt {
    fn from_bigint(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn to_bigint(&self) -> Option<BigInt> {
        Some(self.clone())
    }
}

impl Coefficient for BigRational {
    fn from_bigint(v: &BigInt) -> Option<Self> {
        Some(BigRational::from_integer(v.clone()))
    }
    fn to_bigint(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.to_integer())
    }
}

pub trait Scalar: Clone + Debug + Num + Neg<Output = Self> + Send + Sync {
    fn from_i64(v: i64) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }
}

impl Scalar for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }
}

impl Scalar for f32 {
    fn from_i64(v: i64) -> Self {
        v as f32
    }
}

impl Scalar for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

impl Scalar for Ratio<i64> {
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(v)
    }
}

impl Scalar for Ratio<i128> {
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(v as i128)
    }
}

/// Converts an exact rational to `f64`, falling back to a scaled division for huge parts.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    let n = r.numer().bits() as i64;
    let d = r.denom().bits() as i64;
    let shift = (n.max(d) - 900).max(0) as u64;
    let num = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
    let den = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
    num / den
}

/// Decimal rendering with `places` digits after the point, rounded half away from zero.
pub fn to_decimal(r: &BigRational, places: u32) -> String {
    let scale = BigInt::from(10).pow(places);
    let scaled = r.abs() * BigRational::from_integer(scale);
    let rounded = (scaled + BigRational::new(BigInt::one(), BigInt::from(2))).floor().to_integer();
    let digits = rounded.to_string();
    let places = places as usize;
    let padded = format!("{digits:0>width$}", width = places + 1);
    let (int, frac) = padded.split_at(padded.len() - places);
    let sign = if r.is_negative() && !rounded.is_zero() { "-" } else { "" };
    if places == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}
