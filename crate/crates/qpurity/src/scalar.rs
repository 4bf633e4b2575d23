//! Scalar abstraction: every analytic formula in this crate is generic over a
//! real floating type. `f64` is the default everywhere (see the crate-root
//! aliases); `f32` works too, with tolerance floors widened to its epsilon.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::float::FloatConst;
use num_traits::{Float, ToPrimitive};

/// Real scalar the closed forms are written against.
///
/// Bundles `num_traits::Float` with the constants (`PI`, `LN_2`) and the few
/// conversions the formulas need, plus some convenience constants so generic
/// code stays readable.
pub trait Real:
    Float + FloatConst + ToPrimitive + Sum + Debug + Display + LowerExp + Send + Sync + 'static
{
    /// Lossy conversion from `f64` (identity for `f64`).
    fn of(v: f64) -> Self;

    #[inline]
    fn half() -> Self {
        Self::of(0.5)
    }

    #[inline]
    fn two() -> Self {
        Self::of(2.0)
    }

    /// Base-2 logarithm that treats non-positive input as contributing zero
    /// entropy: returns `0` for `x <= 0`. Callers multiply by `x` themselves.
    #[inline]
    fn xlog2x(self) -> Self {
        if self > Self::zero() {
            -self * self.log2()
        } else {
            Self::zero()
        }
    }

    /// Widen an `f64` tolerance so it stays meaningful for low-precision
    /// scalars: `max(t, 64·epsilon)`. For `f64` this is the identity on every
    /// tolerance used in this crate (they are all ≥ 1e-12 > 64·2⁻⁵²).
    #[inline]
    fn tol(t: f64) -> Self {
        Self::of(t).max(Self::epsilon() * Self::of(64.0))
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    #[inline]
    fn of(v: f64) -> Self {
        v
    }
}

impl Real for f32 {
    #[inline]
    fn of(v: f64) -> Self {
        v as f32
    }
}
