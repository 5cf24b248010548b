//! Scalar abstraction: the whole crate is generic over `f32`/`f64`.

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating-point scalar for all numerics in this crate.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + num_traits::NumAssign
    + std::fmt::Debug
    + std::fmt::Display
    + std::fmt::LowerExp
    + Send
    + Sync
    + 'static
{
    fn f64(self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self).unwrap()
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Lossy conversion of an `f64` constant into the working scalar.
#[inline]
pub fn c<F: Real>(x: f64) -> F {
    F::from_f64(x).expect("constant representable in scalar type")
}
