use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Real floating-point scalar underlying every complex matrix in the crate.
pub trait Real:
    Float + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Relative tolerance that suits the precision of this type.
    const DEFAULT_EPS_REL: f64;

    fn lit(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("f64 literal representable")
    }
}

impl Real for f64 {
    const DEFAULT_EPS_REL: f64 = 1e-10;
}

impl Real for f32 {
    const DEFAULT_EPS_REL: f64 = 1e-4;
}

pub type C<T> = Complex<T>;

#[inline]
pub(crate) fn re<T: Real>(x: T) -> C<T> {
    Complex::new(x, T::zero())
}
