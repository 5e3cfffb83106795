//! One-sided Lipschitz extensions over a quasi-metric.
//!
//! For `phi` on `A` with constant `L`:
//! `upper(x) = min_a phi(a) + L d(x, a)` and
//! `lower(x) = max_a phi(a) - L d(a, x)`.

use serde::Serialize;

use crate::distance::DistanceTable;
use crate::error::{Error, Result};
use crate::ext::ExtValue;
use crate::gauge::mul_ext;
use crate::scalar::Scalar;

/// Real function on a nonempty subset of a finite universe.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PartialFunction<T: Scalar> {
    domain: Vec<usize>,
    values: Vec<T>,
    lipschitz: T,
}

impl<T: Scalar> PartialFunction<T> {
    pub fn new(domain: Vec<usize>, values: Vec<T>, lipschitz: T) -> Result<Self> {
        if domain.is_empty() {
            return Err(Error::EmptyDomain);
        }
        if domain.len() != values.len() {
            return Err(Error::InvalidValue(format!(
                "{} domain points but {} values",
                domain.len(),
                values.len()
            )));
        }
        if !(lipschitz >= T::zero()) || !lipschitz.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "Lipschitz constant must be finite and >= 0, got {lipschitz}"
            )));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidValue(format!("function value {v} is not finite")));
        }
        let mut seen = domain.clone();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidValue("domain lists a point twice".into()));
        }
        Ok(PartialFunction {
            domain,
            values,
            lipschitz,
        })
    }

    pub fn domain(&self) -> &[usize] {
        &self.domain
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn lipschitz(&self) -> T {
        self.lipschitz
    }

    pub fn get(&self, x: usize) -> Option<T> {
        self.domain.iter().position(|&a| a == x).map(|i| self.values[i])
    }

    fn check_universe(&self, d: &DistanceTable<T>, points: &[usize]) -> Result<()> {
        for &p in self.domain.iter().chain(points) {
            if p >= d.len() {
                return Err(Error::UnknownPoint(p.to_string()));
            }
        }
        Ok(())
    }

    /// `phi(b) - phi(a) <= L d(b, a)` for all `a, b` in the domain: the
    /// condition under which the upper envelope agrees with `phi` on `A`.
    /// Returns the first failing `(b, a)`.
    pub fn upper_compatibility(&self, d: &DistanceTable<T>) -> Option<(usize, usize)> {
        self.first_failure(|b, a| d.get(b, a))
    }

    /// `phi(a) - phi(b) <= L d(a, b)`, which makes the lower envelope agree
    /// with `phi` on `A`. Returns the first failing `(a, b)`.
    pub fn lower_compatibility(&self, d: &DistanceTable<T>) -> Option<(usize, usize)> {
        self.first_failure(|a, b| d.get(a, b))
    }

    fn first_failure(&self, dist: impl Fn(usize, usize) -> ExtValue<T>) -> Option<(usize, usize)> {
        let l = ExtValue::saturating(self.lipschitz);
        for (i, &p) in self.domain.iter().enumerate() {
            for (j, &q) in self.domain.iter().enumerate() {
                let gap = self.values[i] - self.values[j];
                if gap > T::zero() && ExtValue::saturating(gap) > mul_ext(l, dist(p, q)) {
                    return Some((p, q));
                }
            }
        }
        None
    }
}

const ROUNDING_ULPS: f64 = 8.0;

/// Values in `[-inf, inf]`; `None` entries are points outside `points`.
pub type Envelope<T> = Vec<Option<T>>;

/// `min_a phi(a) + L d(x, a)` for each `x` in `points`, indexed by universe
/// position. Unreachable terms contribute `+inf`.
pub fn upper_envelope<T: Scalar>(
    f: &PartialFunction<T>,
    d: &DistanceTable<T>,
    points: &[usize],
) -> Result<Envelope<T>> {
    f.check_universe(d, points)?;
    let l = ExtValue::saturating(f.lipschitz);
    let mut out = vec![None; d.len()];
    for &x in points {
        let v = f
            .domain
            .iter()
            .zip(&f.values)
            .map(|(&a, &phi)| phi + mul_ext(l, d.get(x, a)).get())
            .fold(T::infinity(), T::min);
        out[x] = Some(v);
    }
    Ok(out)
}

/// `max_a phi(a) - L d(a, x)` for each `x` in `points`.
pub fn lower_envelope<T: Scalar>(
    f: &PartialFunction<T>,
    d: &DistanceTable<T>,
    points: &[usize],
) -> Result<Envelope<T>> {
    f.check_universe(d, points)?;
    let l = ExtValue::saturating(f.lipschitz);
    let mut out = vec![None; d.len()];
    for &x in points {
        let v = f
            .domain
            .iter()
            .zip(&f.values)
            .map(|(&a, &phi)| phi - mul_ext(l, d.get(a, x)).get())
            .fold(T::neg_infinity(), T::max);
        out[x] = Some(v);
    }
    Ok(out)
}

/// First `(x, y)` in `points` with `e(x) - e(y) > L d(x, y)`, up to a few
/// ulps of the magnitudes involved.
pub fn lipschitz_violation<T: Scalar>(
    e: &Envelope<T>,
    d: &DistanceTable<T>,
    lipschitz: T,
    points: &[usize],
) -> Option<(usize, usize)> {
    let l = ExtValue::saturating(lipschitz);
    for &x in points {
        for &y in points {
            let (Some(ex), Some(ey)) = (e[x], e[y]) else { continue };
            if ex <= ey {
                continue;
            }
            // Equal infinities and finite gaps below an infinite bound pass.
            let gap = ex - ey;
            if gap.is_nan() {
                continue;
            }
            let bound = mul_ext(l, d.get(x, y));
            if bound.is_infinite() {
                continue;
            }
            let slack = T::epsilon() * T::lit(ROUNDING_ULPS) * (ex.abs() + ey.abs() + bound.get());
            if gap > bound.get() + slack {
                return Some((x, y));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(rows: &[Vec<f64>]) -> DistanceTable<f64> {
        DistanceTable::from_rows(rows).unwrap()
    }

    #[test]
    fn single_point_domain() {
        let d = table(&[vec![0.0, 2.0, 1.0], vec![3.0, 0.0, 1.0], vec![1.5, 1.0, 0.0]]);
        let f = PartialFunction::new(vec![0], vec![1.0], 2.0).unwrap();
        let up = upper_envelope(&f, &d, &[0, 1, 2]).unwrap();
        let lo = lower_envelope(&f, &d, &[0, 1, 2]).unwrap();
        for x in 0..3 {
            assert_eq!(up[x], Some(1.0 + 2.0 * d.get(x, 0).get()));
            assert_eq!(lo[x], Some(1.0 - 2.0 * d.get(0, x).get()));
        }
    }

    #[test]
    fn asymmetric_two_point_values() {
        // d(a, x) = 0, d(x, a) = 5.
        let d = table(&[vec![0.0, 0.0], vec![5.0, 0.0]]);
        let f = PartialFunction::new(vec![0], vec![0.0], 1.0).unwrap();
        assert_eq!(lower_envelope(&f, &d, &[1]).unwrap()[1], Some(0.0));
        assert_eq!(upper_envelope(&f, &d, &[1]).unwrap()[1], Some(5.0));
    }

    #[test]
    fn absolute_value_is_reproduced() {
        let xs: [f64; 5] = [-2.0, -0.5, 0.0, 1.0, 3.0];
        let d = DistanceTable::from_fn(5, |i, j| ExtValue::saturating((xs[i] - xs[j]).abs()));
        let f = PartialFunction::new((0..5).collect(), xs.iter().map(|x: &f64| x.abs()).collect(), 1.0).unwrap();
        let pts: Vec<usize> = (0..5).collect();
        let up = upper_envelope(&f, &d, &pts).unwrap();
        let lo = lower_envelope(&f, &d, &pts).unwrap();
        for i in 0..5 {
            assert_eq!(up[i], Some(xs[i].abs()));
            assert_eq!(lo[i], Some(xs[i].abs()));
        }
        assert!(f.upper_compatibility(&d).is_none());
    }

    #[test]
    fn incompatible_function_is_flagged() {
        let d = table(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
        let f = PartialFunction::new(vec![0, 1], vec![0.0, 5.0], 1.0).unwrap();
        assert_eq!(f.upper_compatibility(&d), Some((1, 0)));
        let up = upper_envelope(&f, &d, &[0, 1]).unwrap();
        assert_eq!(up[1], Some(1.0));
    }

    #[test]
    fn unreachable_terms() {
        let inf = f64::INFINITY;
        let d = table(&[vec![0.0, inf], vec![inf, 0.0]]);
        let f = PartialFunction::new(vec![0], vec![2.0], 1.0).unwrap();
        let up = upper_envelope(&f, &d, &[0, 1]).unwrap();
        assert_eq!(up[1], Some(inf));
        let lo = lower_envelope(&f, &d, &[0, 1]).unwrap();
        assert_eq!(lo[1], Some(-inf));
        assert!(lipschitz_violation(&up, &d, 1.0, &[0, 1]).is_none());
        let zero_l = PartialFunction::new(vec![0], vec![2.0], 0.0).unwrap();
        assert_eq!(upper_envelope(&zero_l, &d, &[1]).unwrap()[1], Some(2.0));
    }

    #[test]
    fn invalid_inputs() {
        assert!(matches!(
            PartialFunction::<f64>::new(vec![], vec![], 1.0),
            Err(Error::EmptyDomain)
        ));
        assert!(PartialFunction::new(vec![0], vec![1.0], -1.0).is_err());
        assert!(PartialFunction::new(vec![0, 0], vec![1.0, 2.0], 1.0).is_err());
    }
}
