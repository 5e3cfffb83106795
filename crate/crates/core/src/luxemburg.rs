//! Luxemburg quasi-distances `inf { t > 0 : w_t(x, y) <= c }`.
//!
//! The infimum is found by exponential bracketing from `tol` followed by
//! bisection on the predicate `w_t <= c`. Every probe is checked against the
//! nonincreasing convention: if a larger scale ever shows a larger value the
//! search stops with [`Error::NonMonotone`] instead of returning a value that
//! depends on probe placement.

use serde::Serialize;

use crate::distance::DistanceTable;
use crate::error::{Error, Result};
use crate::ext::ExtValue;
use crate::gauge::GaugeSpec;
use crate::report::{Axiom, AxiomReport};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LuxemburgOptions<T> {
    /// Threshold `c`.
    pub threshold: T,
    pub tol: T,
    pub lambda_max: T,
}

impl<T: Scalar> Default for LuxemburgOptions<T> {
    fn default() -> Self {
        LuxemburgOptions {
            threshold: T::one(),
            tol: T::lit(1e-9),
            lambda_max: T::lit(1e12),
        }
    }
}

impl<T: Scalar> LuxemburgOptions<T> {
    pub fn with_tol(tol: T) -> Self {
        LuxemburgOptions { tol, ..Self::default() }
    }

    fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("threshold", self.threshold),
            ("tol", self.tol),
            ("lambda_max", self.lambda_max),
        ] {
            if !(v > T::zero()) || !v.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LuxemburgResult<T: Scalar> {
    pub value: ExtValue<T>,
    /// Final bracket `(lower, upper)`: the predicate fails at `lower` (or
    /// `lower = 0`) and holds at `upper`.
    pub bracket: (T, T),
    /// Number of gauge evaluations.
    pub iterations: usize,
}

struct Probe<'a, T, F> {
    f: &'a F,
    iterations: usize,
    _t: std::marker::PhantomData<T>,
}

impl<T: Scalar, F: Fn(T) -> Result<ExtValue<T>>> Probe<'_, T, F> {
    fn at(&mut self, t: T) -> Result<ExtValue<T>> {
        self.iterations += 1;
        (self.f)(t)
    }
}

fn non_monotone<T: Scalar>(smaller: T, at_smaller: ExtValue<T>, larger: T, at_larger: ExtValue<T>) -> Error {
    Error::NonMonotone {
        smaller: smaller.as_f64(),
        larger: larger.as_f64(),
        at_smaller: at_smaller.get().as_f64(),
        at_larger: at_larger.get().as_f64(),
    }
}

/// `inf { t in (0, lambda_max] : f(t) <= c }` for a scale function `f` that
/// must be nonincreasing. Shared by gauges, graph energies and Orlicz norms.
pub fn luxemburg_inf<T: Scalar>(
    f: impl Fn(T) -> Result<ExtValue<T>>,
    opts: &LuxemburgOptions<T>,
) -> Result<LuxemburgResult<T>> {
    opts.validate()?;
    let c = ExtValue::saturating(opts.threshold);
    let two = T::lit(2.0);
    let mut probe = Probe {
        f: &f,
        iterations: 0,
        _t: std::marker::PhantomData,
    };

    let top = opts.lambda_max;
    let at_top = probe.at(top)?;
    let start = opts.tol.min(top);
    let at_start = probe.at(start)?;
    if at_top > at_start {
        return Err(non_monotone(start, at_start, top, at_top));
    }

    // (lo, w(lo)) fails the predicate, (hi, w(hi)) satisfies it.
    let (mut lo, mut w_lo, mut hi, mut w_hi);
    if at_start <= c {
        // Walk down until the predicate fails or the scale underflows.
        hi = start;
        w_hi = at_start;
        loop {
            let next = hi / two;
            if !(next > T::zero()) || next == hi {
                return Ok(LuxemburgResult {
                    value: ExtValue::zero(),
                    bracket: (T::zero(), hi),
                    iterations: probe.iterations,
                });
            }
            let w = probe.at(next)?;
            if w < w_hi {
                return Err(non_monotone(next, w, hi, w_hi));
            }
            if w > c {
                lo = next;
                w_lo = w;
                break;
            }
            hi = next;
            w_hi = w;
        }
    } else {
        lo = start;
        w_lo = at_start;
        loop {
            let next = lo * two;
            if next >= top {
                if at_top > w_lo {
                    return Err(non_monotone(lo, w_lo, top, at_top));
                }
                if at_top > c {
                    return Ok(LuxemburgResult {
                        value: ExtValue::infinity(),
                        bracket: (lo, top),
                        iterations: probe.iterations,
                    });
                }
                hi = top;
                w_hi = at_top;
                break;
            }
            let w = probe.at(next)?;
            if w > w_lo {
                return Err(non_monotone(lo, w_lo, next, w));
            }
            if w <= c {
                hi = next;
                w_hi = w;
                break;
            }
            lo = next;
            w_lo = w;
        }
    }

    while hi - lo > opts.tol {
        let mid = lo + (hi - lo) / two;
        if mid <= lo || mid >= hi {
            break;
        }
        let w = probe.at(mid)?;
        if w > w_lo {
            return Err(non_monotone(lo, w_lo, mid, w));
        }
        if w < w_hi {
            return Err(non_monotone(mid, w, hi, w_hi));
        }
        if w <= c {
            hi = mid;
            w_hi = w;
        } else {
            lo = mid;
            w_lo = w;
        }
    }
    Ok(LuxemburgResult {
        value: ExtValue::saturating(hi),
        bracket: (lo, hi),
        iterations: probe.iterations,
    })
}

/// Directed Luxemburg quasi-distance `d_w(x, y)` of an additive gauge.
pub fn luxemburg_distance<T: Scalar>(
    g: &GaugeSpec<T>,
    x: usize,
    y: usize,
    opts: &LuxemburgOptions<T>,
) -> Result<LuxemburgResult<T>> {
    if !g.regime().is_additive() {
        return Err(Error::WrongRegime { expected: "additive" });
    }
    // Validates the points once; the probes then skip the checks.
    g.evaluate(x, y, T::one())?;
    luxemburg_inf(|t| g.evaluate(x, y, t), opts)
}

/// `max{d_w(x, y), d_w(y, x)}`.
pub fn symmetrized_luxemburg<T: Scalar>(
    g: &GaugeSpec<T>,
    x: usize,
    y: usize,
    opts: &LuxemburgOptions<T>,
) -> Result<ExtValue<T>> {
    let forward = luxemburg_distance(g, x, y, opts)?.value;
    let backward = luxemburg_distance(g, y, x, opts)?.value;
    Ok(forward.max(backward))
}

/// Luxemburg distances between every ordered pair of the universe.
pub fn luxemburg_table<T: Scalar>(g: &GaugeSpec<T>, opts: &LuxemburgOptions<T>) -> Result<DistanceTable<T>> {
    let n = g.len();
    let mut out = DistanceTable::from_fn(n, |_, _| ExtValue::zero());
    for x in 0..n {
        for y in 0..n {
            out.set(x, y, luxemburg_distance(g, x, y, opts)?.value);
        }
    }
    Ok(out)
}

/// Exact reflexivity and triangle sweep of a distance table.
pub fn quasi_pseudometric_check<T: Scalar>(d: &DistanceTable<T>, points: &[usize]) -> AxiomReport<T> {
    quasi_pseudometric_check_with_slack(d, points, T::zero())
}

/// As [`quasi_pseudometric_check`], accepting `d(x, z) <= d(x, y) + d(y, z) + slack`.
///
/// Reflexivity is always exact. Violations carry points `[x]` or `[x, y, z]`
/// and the slack in `params`.
pub fn quasi_pseudometric_check_with_slack<T: Scalar>(
    d: &DistanceTable<T>,
    points: &[usize],
    slack: T,
) -> AxiomReport<T> {
    let mut report = AxiomReport::new(vec![Axiom::Reflexivity, Axiom::Triangle]);
    let slack_ext = ExtValue::saturating(slack);
    for &x in points {
        let v = d.get(x, x);
        if !v.is_zero() {
            report.push(Axiom::Reflexivity, vec![x], vec![], v, ExtValue::zero());
        }
    }
    for &x in points {
        for &y in points {
            for &z in points {
                let lhs = d.get(x, z);
                let rhs = d.get(x, y) + d.get(y, z) + slack_ext;
                if lhs > rhs {
                    report.push(Axiom::Triangle, vec![x, y, z], vec![slack], lhs, rhs);
                }
            }
        }
    }
    report.symmetric = Some(
        points
            .iter()
            .all(|&x| points.iter().all(|&y| d.get(x, y) == d.get(y, x))),
    );
    report.sort();
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauge::{make_min_cap, make_scaled_metric, ScaleFactor};

    fn table(rows: &[Vec<f64>]) -> DistanceTable<f64> {
        DistanceTable::from_rows(rows).unwrap()
    }

    #[test]
    fn reciprocal_gauge_recovers_metric() {
        let g = make_scaled_metric(table(&[vec![0.0, 2.5], vec![2.5, 0.0]]), ScaleFactor::Reciprocal).unwrap();
        let opts = LuxemburgOptions::default();
        let r = luxemburg_distance(&g, 0, 1, &opts).unwrap();
        assert!((r.value.get() - 2.5).abs() <= 1e-9);
        assert!(r.bracket.1 - r.bracket.0 <= 1e-9);
        assert!(r.bracket.0 <= 2.5 && 2.5 <= r.bracket.1);
    }

    #[test]
    fn diagonal_distance_is_exactly_zero() {
        let g = make_scaled_metric(table(&[vec![0.0, 2.5], vec![2.5, 0.0]]), ScaleFactor::Reciprocal).unwrap();
        let r = luxemburg_distance(&g, 1, 1, &LuxemburgOptions::default()).unwrap();
        assert!(r.value.is_zero());
    }

    #[test]
    fn min_cap_is_rejected_as_nonmonotone() {
        let g = make_min_cap(table(&[vec![0.0, 3.0], vec![3.0, 0.0]])).unwrap();
        // The predicate min{3, t} <= 1 holds at 0.5 and 1 but not at 2.
        for (t, holds) in [(0.5, true), (1.0, true), (2.0, false)] {
            assert_eq!(g.evaluate(0, 1, t).unwrap().get() <= 1.0, holds);
        }
        assert!(matches!(
            luxemburg_distance(&g, 0, 1, &LuxemburgOptions::default()),
            Err(Error::NonMonotone { .. })
        ));
    }

    #[test]
    fn unreachable_threshold_gives_infinity() {
        let inf = f64::INFINITY;
        let g = make_scaled_metric(table(&[vec![0.0, inf], vec![1.0, 0.0]]), ScaleFactor::Reciprocal).unwrap();
        let r = luxemburg_distance(&g, 0, 1, &LuxemburgOptions::default()).unwrap();
        assert!(r.value.is_infinite());
        let sym = symmetrized_luxemburg(&g, 0, 1, &LuxemburgOptions::default()).unwrap();
        assert!(sym.is_infinite());
    }

    #[test]
    fn symmetrized_takes_the_larger_direction() {
        let g = make_scaled_metric(table(&[vec![0.0, 1.0], vec![3.0, 0.0]]), ScaleFactor::Reciprocal).unwrap();
        let v = symmetrized_luxemburg(&g, 0, 1, &LuxemburgOptions::default()).unwrap();
        assert!((v.get() - 3.0).abs() <= 1e-9);
    }

    #[test]
    fn threshold_monotonicity_on_convex_gauge() {
        let g = make_scaled_metric(table(&[vec![0.0, 4.0], vec![4.0, 0.0]]), ScaleFactor::Reciprocal).unwrap();
        let mut prev = f64::INFINITY;
        for c in [0.25, 0.5, 1.0, 2.0, 8.0] {
            let opts = LuxemburgOptions {
                threshold: c,
                ..LuxemburgOptions::default()
            };
            let v = luxemburg_distance(&g, 0, 1, &opts).unwrap().value.get();
            assert!((v - 4.0 / c).abs() <= 1e-9);
            assert!(v <= prev);
            prev = v;
        }
    }

    #[test]
    fn works_in_single_precision() {
        let d = DistanceTable::<f32>::from_rows(&[vec![0.0, 2.5], vec![2.5, 0.0]]).unwrap();
        let g = make_scaled_metric(d, ScaleFactor::Reciprocal).unwrap();
        let opts = LuxemburgOptions {
            tol: 1e-4f32,
            lambda_max: 1e6,
            threshold: 1.0,
        };
        let v = luxemburg_distance(&g, 0, 1, &opts).unwrap().value.get();
        assert!((v - 2.5).abs() <= 1e-4);
    }

    #[test]
    fn qpm_check_cases() {
        let d = table(&[vec![0.0, 1.0, 2.0], vec![1.0, 0.0, 1.0], vec![2.0, 1.0, 0.0]]);
        assert!(quasi_pseudometric_check(&d, &[0, 1, 2]).is_clean());
        let bad = table(&[vec![0.0, 1.0, 3.0], vec![1.0, 0.0, 1.0], vec![2.0, 1.0, 0.0]]);
        let r = quasi_pseudometric_check(&bad, &[0, 1, 2]);
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].points, vec![0, 1, 2]);
        let single = table(&[vec![0.0]]);
        assert!(quasi_pseudometric_check(&single, &[0]).is_clean());
    }
}
