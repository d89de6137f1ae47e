//! The scalar abstraction the planar geometry is generic over.
//!
//! [`ConstructibleScalar`] is the exact instantiation used by every
//! construction. `f32` and `f64` implement the same trait with tolerance-based
//! comparison, which is handy for quick numeric cross-checks and plotting.

use std::fmt::Debug;
use std::ops::{Neg, Sub};

use num_traits::{Float, One, ToPrimitive, Zero};

use super::rational::Rational;
use super::{Comparison, ConstructibleScalar, ScalarError};

pub trait Scalar:
    Clone + Debug + Zero + One + Sub<Output = Self> + Neg<Output = Self> + Send + Sync
{
    fn from_rational(q: &Rational) -> Self;

    fn checked_div(&self, rhs: &Self) -> Result<Self, ScalarError>;

    fn checked_sqrt(&self) -> Result<Self, ScalarError>;

    /// Ordering that is either certain or reported as `Undecided`.
    fn compare(&self, other: &Self) -> Comparison;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(&super::rational::rational(num, den))
    }

    fn sign(&self) -> Comparison {
        self.compare(&Self::zero())
    }
}

impl Scalar for ConstructibleScalar {
    fn from_rational(q: &Rational) -> Self {
        ConstructibleScalar::from_rational(q.clone())
    }

    fn checked_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        ConstructibleScalar::checked_div(self, rhs)
    }

    fn checked_sqrt(&self) -> Result<Self, ScalarError> {
        ConstructibleScalar::checked_sqrt(self)
    }

    fn compare(&self, other: &Self) -> Comparison {
        ConstructibleScalar::compare(self, other)
    }
}

/// Relative tolerance below which two floats compare `Equal`.
fn float_tolerance<F: Float>() -> F {
    F::epsilon() * F::from(64.0).unwrap()
}

fn float_compare<F: Float>(a: F, b: F) -> Comparison {
    if a.is_nan() || b.is_nan() {
        return Comparison::Undecided;
    }
    let scale = F::one().max(a.abs()).max(b.abs());
    if (a - b).abs() <= float_tolerance::<F>() * scale {
        Comparison::Equal
    } else if a < b {
        Comparison::Less
    } else {
        Comparison::Greater
    }
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            fn from_rational(q: &Rational) -> Self {
                q.to_f64().unwrap_or(f64::NAN) as $t
            }

            fn checked_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
                if float_compare(*rhs, 0.0) == Comparison::Equal {
                    Err(ScalarError::DivisionByZero)
                } else {
                    Ok(self / rhs)
                }
            }

            fn checked_sqrt(&self) -> Result<Self, ScalarError> {
                match float_compare(*self, 0.0) {
                    Comparison::Less => Err(ScalarError::NegativeRadicand),
                    Comparison::Equal => Ok(0.0),
                    _ => Ok(self.sqrt()),
                }
            }

            fn compare(&self, other: &Self) -> Comparison {
                float_compare(*self, *other)
            }
        }
    };
}

float_scalar!(f32);
float_scalar!(f64);
