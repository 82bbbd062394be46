//! Scalar abstraction for the numeric kernels.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive};

/// Floating-point scalar: `f32` or `f64`.
///
/// The kinematics, feature, and clustering kernels are generic over this
/// trait; everything that touches the on-disk formats is pinned to `f64`.
pub trait Real: Float + FromPrimitive + Sum + Debug + Display + 'static {
    /// Lossy conversion from `f64`, used when feeding stored coordinates
    /// into a lower-precision kernel.
    fn from_f64_lossy(v: f64) -> Self {
        Self::from_f64(v).expect("f64 must convert into a Real scalar")
    }

    /// Exact conversion from a sample count.
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("usize must convert into a Real scalar")
    }
}

impl Real for f32 {}
impl Real for f64 {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conversions_round_small_integers_exactly() {
        assert_eq!(f32::from_count(24), 24.0f32);
        assert_eq!(f64::from_count(3225), 3225.0f64);
        assert_eq!(f32::from_f64_lossy(0.5), 0.5f32);
    }
}
