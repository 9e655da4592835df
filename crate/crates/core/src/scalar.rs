use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, Num};
use serde::Serialize;

/// Floating-point type the spectral and bound code runs on.
pub trait Scalar:
    Float + FromPrimitive + Debug + Display + Default + Sum + Serialize + Send + Sync + 'static
{
    /// Enclosure width that power iteration can reliably reach.
    fn default_tol() -> Self;

    /// Smallest violation of a strict inequality that is not treated as noise.
    fn violation_eps() -> Self;

    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal")
    }

    fn count(x: usize) -> Self {
        Self::from_usize(x).expect("representable count")
    }
}

impl Scalar for f64 {
    fn default_tol() -> Self {
        crate::DEFAULT_TOL
    }

    fn violation_eps() -> Self {
        crate::EPSILON
    }
}

impl Scalar for f32 {
    fn default_tol() -> Self {
        1e-5
    }

    fn violation_eps() -> Self {
        1e-4
    }
}

/// Exact or floating arithmetic for the closed-form bound expressions.
///
/// Implemented by `f32`, `f64` and `Ratio<i64>` alike, so each formula can be
/// evaluated in rational arithmetic when an identity has to hold exactly.
pub trait Field: Num + Copy + PartialOrd + FromPrimitive {
    fn of(x: usize) -> Self {
        Self::from_usize(x).expect("representable count")
    }
}

impl<T: Num + Copy + PartialOrd + FromPrimitive> Field for T {}

/// `1/√2`, the left end of the range where the maximum-outdegree ordering
/// is known to hold. Computed as `sqrt(1/2)`, which is correctly rounded.
pub fn inv_sqrt2<T: Float>() -> T {
    (T::one() / (T::one() + T::one())).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    #[test]
    fn inv_sqrt2_is_correctly_rounded() {
        assert_eq!(inv_sqrt2::<f64>(), std::f64::consts::FRAC_1_SQRT_2);
        assert_eq!(inv_sqrt2::<f32>(), std::f32::consts::FRAC_1_SQRT_2);
    }

    #[test]
    fn rationals_are_a_field() {
        fn half<F: Field>() -> F {
            F::one() / F::of(2)
        }
        assert_eq!(half::<Ratio<i64>>(), Ratio::new(1, 2));
        assert_eq!(half::<f64>(), 0.5);
    }
}
