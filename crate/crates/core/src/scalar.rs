use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive};

/// Real scalar the whole crate is generic over: `f32` or `f64`.
pub trait Scalar: Float + FromPrimitive + Default + Debug + Display + Send + Sync + 'static {
    /// Converts an `f64` literal, panicking only for values no float can hold.
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("f64 literal representable in scalar type")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl<T> Scalar for T where T: Float + FromPrimitive + Default + Debug + Display + Send + Sync + 'static {}

/// Largest value strictly below one, `1 - eps`. Used wherever the open
/// codomain `[0, 1)` forbids the value one.
pub fn below_one<T: Scalar>() -> T {
    T::one() - T::epsilon()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn below_one_matches_machine_epsilon() {
        assert_eq!(below_one::<f64>(), 1.0 - 2f64.powi(-52));
        assert_eq!(below_one::<f32>(), 1.0 - 2f32.powi(-23));
        assert!(below_one::<f64>() < 1.0);
    }
}
