//! Nonnegative extended reals `[0, +inf]`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use serde::ser::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A value in `[0, +inf]`. Never negative, never NaN; `+inf` absorbs addition.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct ExtValue<T>(T);

impl<T: Scalar> ExtValue<T> {
    pub fn new(v: T) -> Result<Self> {
        if v.is_nan() || v < T::zero() {
            return Err(Error::InvalidValue(format!(
                "extended value must be in [0, inf], got {v}"
            )));
        }
        Ok(ExtValue(v))
    }

    /// Clamps negative input (e.g. `-0.0` or rounding noise) to zero.
    ///
    /// Panics on NaN.
    pub fn saturating(v: T) -> Self {
        assert!(!v.is_nan(), "NaN is not an extended value");
        ExtValue(v.max(T::zero()))
    }

    pub fn zero() -> Self {
        ExtValue(T::zero())
    }

    pub fn infinity() -> Self {
        ExtValue(T::infinity())
    }

    pub fn get(self) -> T {
        self.0
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }

    pub fn is_zero(self) -> bool {
        self.0 == T::zero()
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// Multiplies by a nonnegative finite factor with `0 * inf = 0`.
    pub fn scale(self, factor: T) -> Self {
        debug_assert!(factor >= T::zero());
        if factor == T::zero() {
            ExtValue::zero()
        } else {
            ExtValue(self.0 * factor)
        }
    }
}

impl<T: Scalar> Add for ExtValue<T> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        ExtValue(self.0 + rhs.0)
    }
}

impl<T: Scalar> Eq for ExtValue<T> {}

impl<T: Scalar> PartialOrd for ExtValue<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Scalar> Ord for ExtValue<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.partial_cmp(&other.0).expect("extended values are never NaN")
    }
}

impl<T: Scalar> fmt::Display for ExtValue<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_infinite() {
            f.write_str("inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// Finite values serialize as numbers, `+inf` as the string `"inf"`.
impl<T: Scalar> Serialize for ExtValue<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.is_infinite() {
            serializer.serialize_str("inf")
        } else {
            serializer.serialize_f64(self.0.as_f64())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_negative_and_nan() {
        assert!(ExtValue::new(-1.0f64).is_err());
        assert!(ExtValue::new(f64::NAN).is_err());
        assert!(ExtValue::new(f64::INFINITY).is_ok());
    }

    #[test]
    fn infinity_absorbs_addition() {
        let inf = ExtValue::<f64>::infinity();
        let two = ExtValue::new(2.0).unwrap();
        assert!((inf + two).is_infinite());
        assert_eq!(inf.min(two), two);
        assert_eq!(inf.max(two), inf);
    }

    #[test]
    fn zero_times_infinity_is_zero() {
        assert!(ExtValue::<f64>::infinity().scale(0.0).is_zero());
        assert!(ExtValue::<f64>::infinity().scale(3.0).is_infinite());
    }

    #[test]
    fn serializes_infinity_as_string() {
        let v = vec![ExtValue::new(1.5f64).unwrap(), ExtValue::infinity()];
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"[1.5,"inf"]"#);
    }
}
