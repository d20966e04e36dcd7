//! Scalar abstraction shared by the combinatorial kernels.
//!
//! The α-determinant, the LU determinant and the block expansion only need
//! ring/field operations, so they are written once over [`Scalar`] and work
//! for `f32`, `f64`, their complex counterparts, and exact rationals.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::{BigRational, Rational64};
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// A field element the α-determinant machinery can compute with.
pub trait Scalar: Num + Clone + Debug + Neg<Output = Self> + FromPrimitive + Send + Sync {
    /// Magnitude used for pivot selection and scale-aware tolerances.
    fn modulus(&self) -> f64;

    /// `false` for NaN or infinite components. Exact types are always finite.
    fn is_finite(&self) -> bool;

    /// Real and `>= -tol`; for complex values the imaginary part must also
    /// be within `tol` of zero. Exact types ignore `tol`.
    fn is_nonnegative(&self, tol: f64) -> bool;
}

macro_rules! impl_float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            fn modulus(&self) -> f64 {
                f64::from(self.abs())
            }

            fn is_finite(&self) -> bool {
                <$t>::is_finite(*self)
            }

            fn is_nonnegative(&self, tol: f64) -> bool {
                f64::from(*self) >= -tol
            }
        }

        impl Scalar for Complex<$t> {
            fn modulus(&self) -> f64 {
                f64::from(self.norm())
            }

            fn is_finite(&self) -> bool {
                self.re.is_finite() && self.im.is_finite()
            }

            fn is_nonnegative(&self, tol: f64) -> bool {
                f64::from(self.re) >= -tol && f64::from(self.im).abs() <= tol
            }
        }
    };
}

impl_float_scalar!(f32);
impl_float_scalar!(f64);

impl Scalar for Rational64 {
    fn modulus(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }

    fn is_finite(&self) -> bool {
        true
    }

    fn is_nonnegative(&self, _tol: f64) -> bool {
        !self.is_negative()
    }
}

impl Scalar for BigRational {
    fn modulus(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }

    fn is_finite(&self) -> bool {
        true
    }

    fn is_nonnegative(&self, _tol: f64) -> bool {
        !self.is_negative()
    }
}

/// `n!` in the scalar type.
pub(crate) fn factorial<T: Scalar>(n: usize) -> T {
    (2..=n).fold(T::one(), |acc, k| acc * T::from_usize(k).expect("small integer"))
}

/// Exact rational from an integer numerator and denominator.
pub fn big_ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}
