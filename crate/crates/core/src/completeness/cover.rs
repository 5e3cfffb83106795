use serde::Serialize;

use super::sequence::check_rt;
use crate::error::{Error, Result};
use crate::gauge::{GaugeSpec, Regime};
use crate::grid::ScaleGrid;
use crate::scalar::Scalar;
use crate::topology::{critical_thresholds, Side};

/// Finite cover of a sample by balls of one side.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoverResult<T: Scalar> {
    /// The covered sample, in input order.
    pub points: Vec<usize>,
    pub centers: Vec<usize>,
    pub radius: T,
    pub scale: T,
    pub side: Side,
    pub verified: bool,
}

fn in_ball<T: Scalar>(g: &GaugeSpec<T>, c: usize, p: usize, r: T, t: T, side: Side) -> Result<bool> {
    let fwd = || -> Result<bool> { Ok(g.evaluate(c, p, t)?.get() < r) };
    let bwd = || -> Result<bool> { Ok(g.evaluate(p, c, t)?.get() < r) };
    Ok(match side {
        Side::Forward => fwd()?,
        Side::Backward => bwd()?,
        Side::TwoSided => fwd()? && bwd()?,
    })
}

impl<T: Scalar> CoverResult<T> {
    /// Recomputes membership of every sample point.
    pub fn recheck(&self, g: &GaugeSpec<T>) -> Result<bool> {
        for &p in &self.points {
            let mut covered = false;
            for &c in &self.centers {
                if in_ball(g, c, p, self.radius, self.scale, self.side)? {
                    covered = true;
                    break;
                }
            }
            if !covered {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Greedy net: the first uncovered sample point becomes the next centre.
pub fn greedy_net<T: Scalar>(points: &[usize], g: &GaugeSpec<T>, r: T, t: T, side: Side) -> Result<CoverResult<T>> {
    check_rt(g, r, t)?;
    let mut covered = vec![false; points.len()];
    let mut centers = Vec::new();
    while let Some(first) = covered.iter().position(|c| !c) {
        let c = points[first];
        centers.push(c);
        for (i, &p) in points.iter().enumerate() {
            if !covered[i] && in_ball(g, c, p, r, t, side)? {
                covered[i] = true;
            }
        }
        // The centre lies in its own ball only when the diagonal vanishes.
        covered[first] = true;
    }
    let mut out = CoverResult {
        points: points.to_vec(),
        centers,
        radius: r,
        scale: t,
        side,
        verified: false,
    };
    out.verified = out.recheck(g)?;
    Ok(out)
}

/// A nonempty cell `B+(x_i; s, t/2) n B-(y_j; s, t/2)` whose representative
/// ball misses a member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellFailure {
    pub forward_center: usize,
    pub backward_center: usize,
    pub representative: usize,
    pub witness: usize,
}

/// All cells of a pair of one-sided covers.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CellReport<T: Scalar> {
    pub cover: CoverResult<T>,
    pub cells: usize,
    pub failures: Vec<CellFailure>,
}

/// Admissible split radius for `r`: the conorm's split radius, or `r / 4`
/// in the additive regime.
pub fn split_radius<T: Scalar>(g: &GaugeSpec<T>, r: T) -> T {
    match g.regime() {
        Regime::Additive => r / T::lit(4.0),
        Regime::Conorm(c) => c.split_radius(r),
    }
}

fn combine<T: Scalar>(g: &GaugeSpec<T>, a: T, b: T) -> T {
    match g.regime() {
        Regime::Additive => a + b,
        Regime::Conorm(c) => c.apply(a, b),
    }
}

/// Cell construction without early exit; see [`two_sided_cover_from_onesided`].
pub fn two_sided_cells<T: Scalar>(
    g: &GaugeSpec<T>,
    forward: &CoverResult<T>,
    backward: &CoverResult<T>,
    r: T,
    t: T,
) -> Result<CellReport<T>> {
    check_rt(g, r, t)?;
    let s = forward.radius;
    let half = t / T::lit(2.0);
    if backward.radius != s || forward.scale != half || backward.scale != half {
        return Err(Error::InvalidParameter(format!(
            "one-sided covers must share radius and sit at scale t/2 = {half}"
        )));
    }
    if forward.side != Side::Forward || backward.side != Side::Backward {
        return Err(Error::InvalidParameter(
            "expected a forward and a backward cover".into(),
        ));
    }
    if forward.points != backward.points {
        return Err(Error::InvalidCover("the two covers describe different samples".into()));
    }
    if !(combine(g, s, s) < r) {
        return Err(Error::BadSplit {
            split: s.as_f64(),
            radius: r.as_f64(),
        });
    }
    if !forward.recheck(g)? || !backward.recheck(g)? {
        return Err(Error::InvalidCover("one-sided cover does not cover its sample".into()));
    }
    let mut centers = Vec::new();
    let mut failures = Vec::new();
    let mut cells = 0;
    for &xi in &forward.centers {
        for &yj in &backward.centers {
            let mut cell = Vec::new();
            for &u in &forward.points {
                if g.evaluate(xi, u, half)?.get() < s && g.evaluate(u, yj, half)?.get() < s {
                    cell.push(u);
                }
            }
            let Some(&z) = cell.first() else { continue };
            cells += 1;
            if !centers.contains(&z) {
                centers.push(z);
            }
            for &u in &cell {
                if !in_ball(g, z, u, r, t, Side::TwoSided)? {
                    failures.push(CellFailure {
                        forward_center: xi,
                        backward_center: yj,
                        representative: z,
                        witness: u,
                    });
                }
            }
        }
    }
    let mut cover = CoverResult {
        points: forward.points.clone(),
        centers,
        radius: r,
        scale: t,
        side: Side::TwoSided,
        verified: false,
    };
    cover.verified = failures.is_empty() && cover.recheck(g)?;
    Ok(CellReport { cover, cells, failures })
}

/// Two-sided cover from a forward and a backward cover at `(s, t/2)`.
///
/// Every nonempty cell contributes its first sample point `z` as a centre,
/// and the whole cell must lie in the two-sided ball `B(z; r, t)`. The first
/// cell that does not is returned as [`Error::CellInclusion`].
pub fn two_sided_cover_from_onesided<T: Scalar>(
    g: &GaugeSpec<T>,
    forward: &CoverResult<T>,
    backward: &CoverResult<T>,
    r: T,
    t: T,
) -> Result<CoverResult<T>> {
    let report = two_sided_cells(g, forward, backward, r, t)?;
    if let Some(f) = report.failures.first() {
        return Err(Error::CellInclusion {
            forward_center: f.forward_center,
            backward_center: f.backward_center,
            representative: f.representative,
            witness: f.witness,
        });
    }
    Ok(report.cover)
}

/// One `(r, t)` row of [`heine_borel_report`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HeineBorelEntry<T: Scalar> {
    pub radius: T,
    pub scale: T,
    pub split: T,
    pub forward_centers: Vec<usize>,
    pub backward_centers: Vec<usize>,
    pub composed_centers: Vec<usize>,
    pub direct_centers: Vec<usize>,
    pub composed_verified: bool,
    pub failures: Vec<CellFailure>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HeineBorelReport<T: Scalar> {
    pub entries: Vec<HeineBorelEntry<T>>,
    /// Every composed two-sided cover verified.
    pub all_verified: bool,
}

/// For every critical `(r, t)`: forward and backward greedy nets at
/// `(s, t/2)`, the composed two-sided cover, and a direct two-sided net.
pub fn heine_borel_report<T: Scalar>(
    g: &GaugeSpec<T>,
    points: &[usize],
    grid: &ScaleGrid<T>,
) -> Result<HeineBorelReport<T>> {
    let th = critical_thresholds(g, points, grid)?;
    let mut entries = Vec::new();
    for &t in grid.scales() {
        for &r in &th.radii {
            let s = split_radius(g, r);
            let half = t / T::lit(2.0);
            let forward = greedy_net(points, g, s, half, Side::Forward)?;
            let backward = greedy_net(points, g, s, half, Side::Backward)?;
            let cells = two_sided_cells(g, &forward, &backward, r, t)?;
            let direct = greedy_net(points, g, r, t, Side::TwoSided)?;
            entries.push(HeineBorelEntry {
                radius: r,
                scale: t,
                split: s,
                forward_centers: forward.centers,
                backward_centers: backward.centers,
                composed_centers: cells.cover.centers,
                direct_centers: direct.centers,
                composed_verified: cells.cover.verified,
                failures: cells.failures,
            });
        }
    }
    let all_verified = entries.iter().all(|e| e.composed_verified);
    Ok(HeineBorelReport { entries, all_verified })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::DistanceTable;
    use crate::ext::ExtValue;
    use crate::gauge::{make_ratio, make_tabulated, Regime};
    use crate::TConorm;

    fn ev(v: f64) -> ExtValue<f64> {
        ExtValue::new(v).unwrap()
    }

    fn line(xs: &[f64]) -> GaugeSpec<f64> {
        let d = DistanceTable::from_fn(xs.len(), |i, j| ev((xs[i] - xs[j]).abs()));
        make_ratio(d).unwrap()
    }

    #[test]
    fn large_radius_single_center() {
        let g = line(&[0.0, 1.0, 2.0, 3.0]);
        let c = greedy_net(&g.all_points(), &g, 0.99, 100.0, Side::Forward).unwrap();
        assert_eq!(c.centers, vec![0]);
        assert!(c.verified);
    }

    #[test]
    fn discrete_gauge_needs_every_point() {
        let g = line(&[0.0, 10.0, 20.0]);
        let c = greedy_net(&g.all_points(), &g, 0.1, 1.0, Side::TwoSided).unwrap();
        assert_eq!(c.centers, vec![0, 1, 2]);
        assert!(c.verified);
    }

    #[test]
    fn ratio_cells_hold_on_sampled_reals() {
        let xs = [0.0, 0.3, 0.35, 1.0, 1.1, 2.5, 2.6, 4.0];
        let g = line(&xs);
        let pts = g.all_points();
        let (r, t) = (0.5, 1.0);
        let f = greedy_net(&pts, &g, 0.25, 0.5, Side::Forward).unwrap();
        let b = greedy_net(&pts, &g, 0.25, 0.5, Side::Backward).unwrap();
        let cover = two_sided_cover_from_onesided(&g, &f, &b, r, t).unwrap();
        assert!(cover.verified);
        assert!(cover.centers.len() <= f.centers.len() * b.centers.len());
    }

    #[test]
    fn asymmetric_cell_failure_is_witnessed() {
        let grid = ScaleGrid::new(vec![1.0]).unwrap();
        let g = make_tabulated(
            Regime::Conorm(TConorm::Max),
            grid,
            2,
            vec![ev(0.0), ev(0.0), ev(0.9), ev(0.0)],
        )
        .unwrap();
        let pts = [0, 1];
        let f = greedy_net(&pts, &g, 0.25, 0.5, Side::Forward).unwrap();
        let b = greedy_net(&pts, &g, 0.25, 0.5, Side::Backward).unwrap();
        assert_eq!(f.centers, vec![0]);
        assert_eq!(b.centers, vec![0, 1]);
        let err = two_sided_cover_from_onesided(&g, &f, &b, 0.5, 1.0).unwrap_err();
        match err {
            Error::CellInclusion {
                forward_center,
                backward_center,
                representative,
                witness,
            } => assert_eq!((forward_center, backward_center, representative, witness), (0, 1, 0, 1)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bad_split_is_rejected() {
        let g = line(&[0.0, 1.0]);
        let pts = [0, 1];
        let f = greedy_net(&pts, &g, 0.3, 0.5, Side::Forward).unwrap();
        let b = greedy_net(&pts, &g, 0.3, 0.5, Side::Backward).unwrap();
        assert!(matches!(
            two_sided_cover_from_onesided(&g, &f, &b, 0.3, 1.0),
            Err(Error::BadSplit { .. })
        ));
    }

    #[test]
    fn single_point_report() {
        let g = line(&[0.0, 1.0]);
        let grid = ScaleGrid::new(vec![1.0, 2.0]).unwrap();
        let rep = heine_borel_report(&g, &[1], &grid).unwrap();
        assert!(rep.all_verified);
        for e in &rep.entries {
            assert_eq!(e.forward_centers, vec![1]);
            assert_eq!(e.composed_centers, vec![1]);
            assert_eq!(e.direct_centers, vec![1]);
        }
    }
}
