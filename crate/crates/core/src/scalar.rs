//! Numeric backends for preference scores.
//!
//! Scores are products of relative frequencies, so they are rationals unless
//! distance weighting is switched on. The analyzer is generic over [`Scalar`]
//! so callers can pick fast floating point or exact rational arithmetic, the
//! latter giving exact tie detection when ranking.

use std::fmt::Debug;
use std::ops::Mul;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub trait Scalar: Clone + Debug + PartialOrd + Zero + One + Mul<Output = Self> + Send + Sync {
    /// `num / den`; `den` must be non-zero.
    fn from_ratio(num: u128, den: u128) -> Self;

    /// Converts a finite floating-point weight (such as a distance decay factor).
    fn from_weight(weight: f64) -> Self;

    fn to_f64(&self) -> f64;
}

impl Scalar for f64 {
    fn from_ratio(num: u128, den: u128) -> Self {
        num as f64 / den as f64
    }

    fn from_weight(weight: f64) -> Self {
        weight
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for f32 {
    fn from_ratio(num: u128, den: u128) -> Self {
        (num as f64 / den as f64) as f32
    }

    fn from_weight(weight: f64) -> Self {
        weight as f32
    }

    fn to_f64(&self) -> f64 {
        f64::from(*self)
    }
}

impl Scalar for BigRational {
    fn from_ratio(num: u128, den: u128) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    /// The weight is taken at its exact binary value.
    fn from_weight(weight: f64) -> Self {
        BigRational::from_float(weight).expect("decay weights are finite")
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}
