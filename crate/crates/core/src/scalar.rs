//! Scalar abstraction shared by the statistics, scoring and hardness code.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, ToPrimitive};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Floating-point type the bandit math is generic over.
///
/// Implemented for `f32` and `f64`. Sampling goes through the two hooks below so
/// that the distribution code does not need `rand_distr` bounds at every call site.
pub trait Scalar:
    Float
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + Serialize
    + DeserializeOwned
    + 'static
{
    /// One draw from N(0, 1).
    fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self;

    /// One draw from U[0, 1).
    fn unit_uniform<R: Rng + ?Sized>(rng: &mut R) -> Self;

    /// Converts an `f64` literal. Panics only for values the type cannot hold,
    /// which never happens for f32/f64.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

macro_rules! impl_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            #[inline]
            fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
                StandardNormal.sample(rng)
            }

            #[inline]
            fn unit_uniform<R: Rng + ?Sized>(rng: &mut R) -> Self {
                rng.random::<$t>()
            }
        }
    };
}

impl_scalar!(f32);
impl_scalar!(f64);

/// `x^-2` with the conventions used throughout the hardness calculus:
/// an infinite gap contributes 0 and a zero gap contributes +inf.
#[inline]
pub fn inverse_square<F: Scalar>(x: F) -> F {
    if x.is_infinite() {
        F::zero()
    } else {
        (x * x).recip()
    }
}

/// Floor of `fraction * count`, nudged by a relative 1e-12 so that products which
/// are integral in exact arithmetic (0.7 * 10) are not floored one unit low.
#[inline]
pub fn floor_fraction(fraction: f64, count: u64) -> u64 {
    let product = fraction * count as f64;
    if product <= 0.0 {
        return 0;
    }
    (product * (1.0 + 1e-12)).floor() as u64
}
