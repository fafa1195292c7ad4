//! Numeric field abstraction shared by the dense linear algebra and the
//! simplex solver.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};

/// An ordered field element, either floating point or exact.
///
/// Floating-point implementations compare against a caller-supplied
/// tolerance; exact implementations ignore it and compare with zero.
pub trait Scalar: Clone + Debug + Display + PartialOrd + Num + Signed + Send + Sync + 'static {
    /// `true` when arithmetic never rounds.
    const EXACT: bool;

    /// Conversion from `f64`. Exact types convert the binary value exactly.
    fn from_f64(x: f64) -> Self;

    fn to_f64(&self) -> f64;

    fn from_i64(x: i64) -> Self;

    /// Whether `self` should be treated as zero at tolerance `eps`.
    fn near_zero(&self, eps: f64) -> bool;

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn from_f64(x: f64) -> Self {
                x as $t
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }

            fn from_i64(x: i64) -> Self {
                x as $t
            }

            fn near_zero(&self, eps: f64) -> bool {
                (*self as f64).abs() <= eps
            }
        }
    };
}

float_scalar!(f32);
float_scalar!(f64);

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_f64(x: f64) -> Self {
        BigRational::from_float(x).expect("finite f64")
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn from_i64(x: i64) -> Self {
        BigRational::from_integer(BigInt::from_i64(x).expect("i64 fits"))
    }

    fn near_zero(&self, _eps: f64) -> bool {
        self.is_zero()
    }
}

/// Convenience constructor for an exact fraction.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_from_f64_is_exact() {
        let q = <BigRational as Scalar>::from_f64(0.375);
        assert_eq!(q, ratio(3, 8));
        assert_eq!(Scalar::to_f64(&q), 0.375);
    }

    #[test]
    fn near_zero_respects_exactness() {
        assert!(1e-12f64.near_zero(1e-10));
        assert!(!ratio(1, 1_000_000_000_000).near_zero(1.0));
        assert!(BigRational::zero().near_zero(0.0));
    }

    #[test]
    fn canonical_form() {
        assert_eq!(ratio(6, -4), ratio(-3, 2));
        assert_eq!(*ratio(6, -4).denom(), BigInt::from(2));
    }
}
