use crate::error::{Error, Result};
use crate::ext::ExtValue;
use crate::scalar::Scalar;

/// Square table of extended distances `d(x, y)` over points `0..n`.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceTable<T> {
    n: usize,
    values: Vec<ExtValue<T>>,
}

impl<T: Scalar> DistanceTable<T> {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> ExtValue<T>) -> Self {
        let mut values = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                values.push(f(x, y));
            }
        }
        DistanceTable { n, values }
    }

    /// Builds a table from raw rows; `inf` entries are allowed, negative or NaN are not.
    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let n = rows.len();
        let mut values = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::InvalidParameter(format!(
                    "distance table row has {} entries, expected {n}",
                    row.len()
                )));
            }
            for &v in row {
                values.push(ExtValue::new(v)?);
            }
        }
        Ok(DistanceTable { n, values })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, x: usize, y: usize) -> ExtValue<T> {
        self.values[x * self.n + y]
    }

    pub fn set(&mut self, x: usize, y: usize, v: ExtValue<T>) {
        self.values[x * self.n + y] = v;
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |x, y| self.get(y, x))
    }

    pub fn rows(&self) -> Vec<Vec<ExtValue<T>>> {
        (0..self.n)
            .map(|x| (0..self.n).map(|y| self.get(x, y)).collect())
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|x| (0..x).all(|y| self.get(x, y) == self.get(y, x)))
    }
}
