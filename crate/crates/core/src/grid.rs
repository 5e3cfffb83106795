//! Scale grids and piecewise-constant scale profiles.

use crate::error::{Error, Result};
use crate::ext::ExtValue;
use crate::scalar::Scalar;

/// Strictly increasing, nonempty list of positive scales.
#[derive(Clone, Debug, PartialEq)]
pub struct ScaleGrid<T> {
    scales: Vec<T>,
}

impl<T: Scalar> ScaleGrid<T> {
    pub fn new(scales: Vec<T>) -> Result<Self> {
        if scales.is_empty() {
            return Err(Error::InvalidGrid("grid must contain at least one scale".into()));
        }
        for &s in &scales {
            if !(s > T::zero()) || !s.is_finite() {
                return Err(Error::InvalidGrid(format!("scale {s} is not positive and finite")));
            }
        }
        for w in scales.windows(2) {
            if !(w[0] < w[1]) {
                return Err(Error::InvalidGrid(format!(
                    "scales not strictly increasing at {} >= {}",
                    w[0], w[1]
                )));
            }
        }
        Ok(ScaleGrid { scales })
    }

    /// `1, 2, ..., m` scaled by `step`.
    pub fn uniform(step: T, m: usize) -> Result<Self> {
        Self::new((1..=m).map(|k| step * T::lit(k as f64)).collect())
    }

    pub fn scales(&self) -> &[T] {
        &self.scales
    }

    pub fn len(&self) -> usize {
        self.scales.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scales.is_empty()
    }

    pub fn first(&self) -> T {
        self.scales[0]
    }

    pub fn last(&self) -> T {
        self.scales[self.scales.len() - 1]
    }

    /// Index of the smallest grid scale `>= t`, if any.
    pub fn ceil_index(&self, t: T) -> Option<usize> {
        let i = self.scales.partition_point(|&s| s < t);
        (i < self.scales.len()).then_some(i)
    }

    /// Index used to read a profile at `t`: the smallest grid scale `>= t`,
    /// or the last scale when `t` lies beyond the grid.
    pub fn profile_index(&self, t: T) -> usize {
        self.ceil_index(t).unwrap_or(self.scales.len() - 1)
    }
}

/// Scale function sampled on a grid. Evaluation at `t` reads the entry at the
/// smallest grid scale `>= t`, and the last entry beyond the grid.
#[derive(Clone, Debug, PartialEq)]
pub struct Profile<T> {
    grid: ScaleGrid<T>,
    values: Vec<ExtValue<T>>,
}

impl<T: Scalar> Profile<T> {
    pub fn new(grid: ScaleGrid<T>, values: Vec<ExtValue<T>>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidParameter(format!(
                "profile has {} values for {} grid scales",
                values.len(),
                grid.len()
            )));
        }
        Ok(Profile { grid, values })
    }

    pub fn from_fn(grid: ScaleGrid<T>, f: impl Fn(T) -> ExtValue<T>) -> Self {
        let values = grid.scales().iter().map(|&t| f(t)).collect();
        Profile { grid, values }
    }

    pub fn grid(&self) -> &ScaleGrid<T> {
        &self.grid
    }

    pub fn values(&self) -> &[ExtValue<T>] {
        &self.values
    }

    pub fn eval(&self, t: T) -> ExtValue<T> {
        self.values[self.grid.profile_index(t)]
    }

    /// First adjacent pair `(i, i + 1)` where the profile increases.
    pub fn first_increase(&self) -> Option<usize> {
        self.values.windows(2).position(|w| w[1] > w[0])
    }

    pub fn is_nonincreasing(&self) -> bool {
        self.first_increase().is_none()
    }
}

/// Nonincreasing envelope of a profile: each value becomes the minimum over
/// all grid scales at or above it (suffix minimum).
pub fn right_regularize<T: Scalar>(p: &Profile<T>) -> Profile<T> {
    let mut values = p.values.clone();
    for i in (0..values.len().saturating_sub(1)).rev() {
        values[i] = values[i].min(values[i + 1]);
    }
    Profile {
        grid: p.grid.clone(),
        values,
    }
}
