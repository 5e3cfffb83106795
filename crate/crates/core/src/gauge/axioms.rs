//! Exhaustive axiom sweeps on a finite point set and scale grid.
//!
//! Split-scale triangles read the left side at the smallest grid scale at or
//! above `t + s`. When `t + s` lies beyond the grid the gauge is evaluated at
//! `t + s` directly (for tabulated gauges this is the last grid entry).

use super::{GaugeSpec, Regime, Sampled};
use crate::error::{Error, Result};
use crate::ext::ExtValue;
use crate::grid::{Profile, ScaleGrid};
use crate::report::{Axiom, AxiomReport};
use crate::scalar::Scalar;

use super::ops::profile_convolve;

/// Sweeps the regime's axioms over `points x grid`.
///
/// Additive regime: QM1, QM2, QM3. Conorm regime: W1 (diagonal, separation,
/// bound below one), W3, W4. Symmetry is recorded in `symmetric` and only
/// produces a violation when the gauge claims it.
///
/// Param conventions: QM2/W3 carry `[t, s, u]` with `u` the scale of the left
/// side; QM3/W4 carry the adjacent pair `[t_k, t_k+1]`; single-scale axioms
/// carry `[t]`.
pub fn check_axioms<T: Scalar>(g: &GaugeSpec<T>, points: &[usize], grid: &ScaleGrid<T>) -> Result<AxiomReport<T>> {
    let s = g.sample(points, grid)?;
    let scales = grid.scales();
    let n = s.n;
    let m = s.m;
    let regime = g.regime();
    let additive = regime.is_additive();

    let mut report = AxiomReport::new(if additive {
        vec![Axiom::QM1, Axiom::QM2, Axiom::QM3]
    } else {
        vec![
            Axiom::W1Diagonal,
            Axiom::W1Separation,
            Axiom::W1Bound,
            Axiom::W3,
            Axiom::W4,
        ]
    });

    // Diagonal, separation and bound.
    for i in 0..n {
        for j in 0..n {
            for (k, &t) in scales.iter().enumerate() {
                let v = s.get(i, j, k);
                if i == j {
                    if !v.is_zero() {
                        let axiom = if additive { Axiom::QM1 } else { Axiom::W1Diagonal };
                        report.push(axiom, vec![points[i]], vec![t], v, ExtValue::zero());
                    }
                } else if !additive {
                    if v.is_zero() && points[i] != points[j] {
                        report.push(
                            Axiom::W1Separation,
                            vec![points[i], points[j]],
                            vec![t],
                            v,
                            ExtValue::zero(),
                        );
                    }
                    if v.get() >= T::one() {
                        report.push(
                            Axiom::W1Bound,
                            vec![points[i], points[j]],
                            vec![t],
                            v,
                            ExtValue::saturating(T::one()),
                        );
                    }
                }
            }
        }
    }

    // Split-scale triangle.
    let tri = if additive { Axiom::QM2 } else { Axiom::W3 };
    for i in 0..n {
        for k in 0..n {
            // Left side per (a, b) split, shared across intermediate points.
            let mut lhs = Vec::with_capacity(m * m);
            for &t in scales {
                for &u in scales {
                    let sum = t + u;
                    lhs.push(match grid.ceil_index(sum) {
                        Some(c) => (s.get(i, k, c), scales[c]),
                        None => (g.eval_unchecked(points[i], points[k], sum), sum),
                    });
                }
            }
            for j in 0..n {
                for a in 0..m {
                    for b in 0..m {
                        let (left, at) = lhs[a * m + b];
                        let right = regime.combine(s.get(i, j, a), s.get(j, k, b));
                        if left > right {
                            report.push(
                                tri,
                                vec![points[i], points[j], points[k]],
                                vec![scales[a], scales[b], at],
                                left,
                                right,
                            );
                        }
                    }
                }
            }
        }
    }

    // Monotonicity in the scale.
    let mono = if additive { Axiom::QM3 } else { Axiom::W4 };
    for i in 0..n {
        for j in 0..n {
            for k in 0..m.saturating_sub(1) {
                let (lo, hi) = (s.get(i, j, k), s.get(i, j, k + 1));
                if hi > lo {
                    report.push(mono, vec![points[i], points[j]], vec![scales[k], scales[k + 1]], hi, lo);
                }
            }
        }
    }

    let asym = first_asymmetry(&s, points, scales);
    report.symmetric = Some(asym.is_none());
    if g.claims_symmetric {
        report.checked.push(Axiom::ClaimedSymmetry);
        if let Some((x, y, t, a, b)) = asym {
            report.push(Axiom::ClaimedSymmetry, vec![x, y], vec![t], a, b);
        }
    }
    report.sort();
    Ok(report)
}

#[allow(clippy::type_complexity)]
fn first_asymmetry<T: Scalar>(
    s: &Sampled<T>,
    points: &[usize],
    scales: &[T],
) -> Option<(usize, usize, T, ExtValue<T>, ExtValue<T>)> {
    for i in 0..s.n {
        for j in 0..s.n {
            for (k, &t) in scales.iter().enumerate() {
                let (a, b) = (s.get(i, j, k), s.get(j, i, k));
                if a != b {
                    return Some((points[i], points[j], t, a, b));
                }
            }
        }
    }
    None
}

/// Convexity sweep for additive gauges: `t * w_t` nonincreasing along the
/// grid, and `w_mu <= (lambda / mu) * w_lambda` for every grid pair
/// `lambda <= mu`.
pub fn convexity_check<T: Scalar>(g: &GaugeSpec<T>, points: &[usize], grid: &ScaleGrid<T>) -> Result<AxiomReport<T>> {
    if !g.regime().is_additive() {
        return Err(Error::WrongRegime { expected: "additive" });
    }
    let s = g.sample(points, grid)?;
    let scales = grid.scales();
    let mut report = AxiomReport::new(vec![Axiom::ConvexScaling, Axiom::ScaleRatio]);
    for i in 0..s.n {
        for j in 0..s.n {
            for k in 0..s.m.saturating_sub(1) {
                let lo = s.get(i, j, k).scale(scales[k]);
                let hi = s.get(i, j, k + 1).scale(scales[k + 1]);
                if hi > lo {
                    report.push(
                        Axiom::ConvexScaling,
                        vec![points[i], points[j]],
                        vec![scales[k], scales[k + 1]],
                        hi,
                        lo,
                    );
                }
            }
            for a in 0..s.m {
                for b in a + 1..s.m {
                    let bound = s.get(i, j, a).scale(scales[a] / scales[b]);
                    let v = s.get(i, j, b);
                    if v > bound {
                        report.push(
                            Axiom::ScaleRatio,
                            vec![points[i], points[j]],
                            vec![scales[a], scales[b]],
                            v,
                            bound,
                        );
                    }
                }
            }
        }
    }
    if g.claims_convex {
        report.checked.push(Axiom::ClaimedConvexity);
        if !report.violations.is_empty() {
            report.push(
                Axiom::ClaimedConvexity,
                vec![],
                vec![],
                ExtValue::zero(),
                ExtValue::zero(),
            );
        }
    }
    report.sort();
    Ok(report)
}

/// Checks `W(x, z)(u) <= (W(x, y) * W(y, z))(u)` at every grid scale `u`, with
/// `*` the grid convolution of [`profile_convolve`]. Params carry `[u]`.
pub fn enriched_triangle_check<T: Scalar>(
    g: &GaugeSpec<T>,
    points: &[usize],
    grid: &ScaleGrid<T>,
) -> Result<AxiomReport<T>> {
    let conorm = match g.regime() {
        Regime::Conorm(c) => c,
        Regime::Additive => return Err(Error::WrongRegime { expected: "conorm" }),
    };
    let s = g.sample(points, grid)?;
    let profile = |i: usize, j: usize| {
        Profile::new(grid.clone(), (0..s.m).map(|k| s.get(i, j, k)).collect()).expect("grid-sized profile")
    };
    let profiles: Vec<Profile<T>> = (0..s.n * s.n).map(|ij| profile(ij / s.n, ij % s.n)).collect();
    let mut report = AxiomReport::new(vec![Axiom::EnrichedTriangle]);
    for i in 0..s.n {
        for j in 0..s.n {
            for k in 0..s.n {
                let conv = profile_convolve(&profiles[i * s.n + j], &profiles[j * s.n + k], conorm)?;
                for (c, &u) in grid.scales().iter().enumerate() {
                    let lhs = s.get(i, k, c);
                    let rhs = conv.values()[c];
                    if lhs > rhs {
                        report.push(
                            Axiom::EnrichedTriangle,
                            vec![points[i], points[j], points[k]],
                            vec![u],
                            lhs,
                            rhs,
                        );
                    }
                }
            }
        }
    }
    report.sort();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conorm::TConorm;
    use crate::distance::DistanceTable;
    use crate::gauge::{make_min_cap, make_ratio, make_tabulated};

    fn ev(v: f64) -> ExtValue<f64> {
        ExtValue::new(v).unwrap()
    }

    #[test]
    fn nonzero_diagonal_is_reported() {
        let grid = ScaleGrid::new(vec![1.0]).unwrap();
        let add = make_tabulated(Regime::Additive, grid.clone(), 1, vec![ev(0.1)]).unwrap();
        let r = check_axioms(&add, &[0], &grid).unwrap();
        assert_eq!(r.violations_of(Axiom::QM1).count(), 1);
        let con = make_tabulated(Regime::Conorm(TConorm::Max), grid.clone(), 1, vec![ev(0.1)]).unwrap();
        let r = check_axioms(&con, &[0], &grid).unwrap();
        assert_eq!(r.violations_of(Axiom::W1Diagonal).count(), 1);
    }

    #[test]
    fn corrupted_entry_is_a_triangle_witness() {
        // Scale-constant metric on a line: clean until one entry is raised.
        let grid = ScaleGrid::new(vec![1.0, 2.0]).unwrap();
        let xs = [0.0f64, 1.0, 2.0];
        let mut vals = Vec::new();
        for x in xs {
            for y in xs {
                for _ in 0..2 {
                    vals.push(ev((x - y).abs()));
                }
            }
        }
        let clean = make_tabulated(Regime::Additive, grid.clone(), 3, vals.clone()).unwrap();
        assert!(check_axioms(&clean, &[0, 1, 2], &grid).unwrap().is_clean());

        // Raise w(0, 2) at the last scale from 2 to 5.
        vals[2 * 2 + 1] = ev(5.0);
        let bad = make_tabulated(Regime::Additive, grid.clone(), 3, vals).unwrap();
        let r = check_axioms(&bad, &[0, 1, 2], &grid).unwrap();
        let hit = r
            .violations_of(Axiom::QM2)
            .find(|v| v.points == vec![0, 1, 2] && v.params[2] == 2.0)
            .expect("triangle witness through the corrupted entry");
        assert_eq!(hit.lhs, ev(5.0));
    }

    #[test]
    fn min_cap_grows_with_scale() {
        let rho = DistanceTable::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let g = make_min_cap(rho).unwrap();
        let grid = ScaleGrid::new(vec![0.5, 0.9]).unwrap();
        let r = convexity_check(&g, &[0, 1], &grid).unwrap();
        let v = r
            .violations_of(Axiom::ConvexScaling)
            .next()
            .expect("lambda * w_lambda increases");
        assert_eq!(v.params, vec![0.5, 0.9]);
    }

    #[test]
    fn constant_positive_gauge_is_not_convex() {
        let grid = ScaleGrid::new(vec![1.0, 2.0]).unwrap();
        let g = make_tabulated(
            Regime::Additive,
            grid.clone(),
            2,
            vec![ev(0.0), ev(0.0), ev(3.0), ev(3.0), ev(3.0), ev(3.0), ev(0.0), ev(0.0)],
        )
        .unwrap();
        assert!(!convexity_check(&g, &[0, 1], &grid).unwrap().is_clean());
    }

    #[test]
    fn convexity_rejects_conorm_regime() {
        let p = DistanceTable::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let g = make_ratio(p).unwrap();
        let grid = ScaleGrid::new(vec![1.0]).unwrap();
        assert!(matches!(
            convexity_check(&g, &[0, 1], &grid),
            Err(Error::WrongRegime { .. })
        ));
    }

    #[test]
    fn enriched_triangle_trivial_on_two_points() {
        let p = DistanceTable::from_rows(&[vec![0.0, 3.0], vec![1.0, 0.0]]).unwrap();
        let g = make_ratio(p).unwrap();
        let grid = ScaleGrid::new(vec![0.5, 1.0, 2.0]).unwrap();
        assert!(enriched_triangle_check(&g, &[0, 1], &grid).unwrap().is_clean());
        // x = z through the other point.
        assert!(enriched_triangle_check(&g, &[0], &grid).unwrap().is_clean());
    }

    #[test]
    fn enriched_triangle_catches_corruption() {
        let grid = ScaleGrid::new(vec![1.0, 2.0]).unwrap();
        let p = DistanceTable::from_rows(&[vec![0.0, 1.0, 2.0], vec![1.0, 0.0, 1.0], vec![2.0, 1.0, 0.0]]).unwrap();
        let tab = make_ratio(p).unwrap().tabulate(&grid);
        assert!(enriched_triangle_check(&tab, &[0, 1, 2], &grid).unwrap().is_clean());
        let mut vals = Vec::new();
        for x in 0..3 {
            for y in 0..3 {
                for &t in grid.scales() {
                    vals.push(tab.evaluate(x, y, t).unwrap());
                }
            }
        }
        // w(0, 2, 2) from 0.5 to 0.9; the split 1 + 1 bounds it by max(0.5, 0.5).
        vals[2 * 2 + 1] = ev(0.9);
        let bad = make_tabulated(Regime::Conorm(TConorm::Max), grid.clone(), 3, vals).unwrap();
        let r = enriched_triangle_check(&bad, &[0, 1, 2], &grid).unwrap();
        assert!(r
            .violations
            .iter()
            .any(|v| v.points == vec![0, 1, 2] && v.params == vec![2.0]));
    }
}
