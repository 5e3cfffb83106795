//! Continuous t-conorms on `[0, 1]`.

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TConorm {
    Max,
    #[serde(rename = "prob_sum")]
    ProbabilisticSum,
    BoundedSum,
}

impl TConorm {
    pub const ALL: [TConorm; 3] = [TConorm::Max, TConorm::ProbabilisticSum, TConorm::BoundedSum];

    /// Evaluates `a (+) b`.
    ///
    /// The probabilistic sum is computed as `hi + lo * (1 - hi)`, which keeps
    /// the result commutative and never below `max(a, b)` under rounding.
    pub fn apply<T: Scalar>(self, a: T, b: T) -> T {
        let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
        match self {
            TConorm::Max => hi,
            TConorm::ProbabilisticSum => hi + lo * (T::one() - hi),
            TConorm::BoundedSum => (a + b).min(T::one()),
        }
    }

    /// Radius `r'` in `(0, r)` with `r' (+) r' < r`: half of the largest
    /// admissible value (`r` for max, `1 - sqrt(1 - r)` for the probabilistic
    /// sum, `r / 2` for the bounded sum).
    pub fn split_radius<T: Scalar>(self, r: T) -> T {
        let two = T::lit(2.0);
        let bound = match self {
            TConorm::Max => r,
            TConorm::ProbabilisticSum => T::one() - (T::one() - r.min(T::one())).sqrt(),
            TConorm::BoundedSum => r / two,
        };
        bound / two
    }

    pub fn name(self) -> &'static str {
        match self {
            TConorm::Max => "max",
            TConorm::ProbabilisticSum => "prob_sum",
            TConorm::BoundedSum => "bounded_sum",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "max" => Some(TConorm::Max),
            "prob_sum" => Some(TConorm::ProbabilisticSum),
            "bounded_sum" => Some(TConorm::BoundedSum),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn worked_values() {
        assert!((TConorm::ProbabilisticSum.apply(0.2f64, 0.7) - 0.76).abs() < 1e-15);
        assert_eq!(TConorm::Max.apply(0.2f64, 0.7), 0.7);
        assert_eq!(TConorm::BoundedSum.apply(0.6f64, 0.7), 1.0);
    }

    #[test]
    fn split_for_max_is_half() {
        let r = TConorm::Max.split_radius(0.5f64);
        assert_eq!(r, 0.25);
        assert!(TConorm::Max.apply(r, r) < 0.5);
    }

    proptest! {
        #[test]
        fn conorm_laws(a in 0.0f64..=1.0, b in 0.0f64..=1.0, c in 0.0f64..=1.0, d in 0.0f64..=1.0) {
            for op in TConorm::ALL {
                prop_assert_eq!(op.apply(0.0, a), a);
                prop_assert_eq!(op.apply(a, b), op.apply(b, a));
                let v = op.apply(a, b);
                prop_assert!((0.0..=1.0).contains(&v));
                prop_assert!(v >= a.max(b));
                if c <= d {
                    prop_assert!(op.apply(a, c) <= op.apply(a, d));
                }
                let l = op.apply(op.apply(a, b), c);
                let r = op.apply(a, op.apply(b, c));
                prop_assert!((l - r).abs() < 1e-12);
            }
        }

        #[test]
        fn split_radius_is_strict(r in 1e-6f64..1.0) {
            for op in TConorm::ALL {
                let s = op.split_radius(r);
                prop_assert!(s > 0.0 && s < r);
                prop_assert!(op.apply(s, s) < r);
            }
        }
    }
}
