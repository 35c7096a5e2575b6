//! Scalar abstraction shared by the measure engine and the walk oracles.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{Num, ToPrimitive};

use crate::Rational;

/// A probability-valued field element: exact rationals or IEEE floats.
pub trait Scalar: Num + Clone + Debug + PartialOrd + Send + Sync {
    /// Builds `num / den`.
    fn ratio(num: i64, den: i64) -> Self;

    fn from_rational(r: &Rational) -> Self;

    fn to_f64(&self) -> f64;

    /// Equality for exact types, a tight relative tolerance for floats.
    fn close_to(&self, other: &Self) -> bool;

    fn half() -> Self {
        Self::ratio(1, 2)
    }

    fn abs_diff(&self, other: &Self) -> Self {
        if self >= other {
            self.clone() - other.clone()
        } else {
            other.clone() - self.clone()
        }
    }
}

impl Scalar for Rational {
    fn ratio(num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn close_to(&self, other: &Self) -> bool {
        self == other
    }
}

macro_rules! float_scalar {
    ($t:ty, $eps:expr) => {
        impl Scalar for $t {
            fn ratio(num: i64, den: i64) -> Self {
                num as $t / den as $t
            }

            fn from_rational(r: &Rational) -> Self {
                ToPrimitive::to_f64(r).unwrap_or(f64::NAN) as $t
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }

            fn close_to(&self, other: &Self) -> bool {
                let scale = self.abs().max(other.abs()).max(1.0);
                (self - other).abs() <= $eps * scale
            }
        }
    };
}

float_scalar!(f64, 1e-9);
float_scalar!(f32, 1e-4);
