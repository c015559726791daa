//! Floating-point scalar abstraction shared by the spectral, spca and hardness modules.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Real scalar type usable by the solvers: `f32` or `f64`.
pub trait Scalar:
    Float
    + FromPrimitive
    + ToPrimitive
    + Sum
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + Serialize
    + DeserializeOwned
    + 'static
{
    /// Relative eigensolver tolerance used when the caller does not pass one.
    fn default_tolerance() -> Self;

    /// Absolute guard band for decision comparisons.
    fn default_decision_tolerance() -> Self;

    /// Lossy conversion from an `f64` literal.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable")
    }

    /// Width of the band inside which two computed values are treated as tied.
    fn tie_band(scale: Self) -> Self {
        Self::epsilon() * Self::lit(64.0) * scale.abs().max(Self::one())
    }
}

impl Scalar for f64 {
    fn default_tolerance() -> Self {
        1e-10
    }

    fn default_decision_tolerance() -> Self {
        crate::spca::DECISION_TOLERANCE
    }
}

impl Scalar for f32 {
    fn default_tolerance() -> Self {
        1e-5
    }

    fn default_decision_tolerance() -> Self {
        1e-4
    }
}
