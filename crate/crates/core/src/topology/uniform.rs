use serde::Serialize;

use super::{critical_thresholds, generate_topology, join_topologies, BallTable, FiniteTopology, Side};
use crate::error::{Error, Result};
use crate::ext::ExtValue;
use crate::gauge::{symmetrize_conorm, GaugeSpec};
use crate::grid::ScaleGrid;
use crate::report::{Axiom, AxiomReport};
use crate::scalar::Scalar;

/// Forward, backward, joined and symmetrized topologies of a conorm gauge.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JoinReport {
    pub tau_plus: FiniteTopology,
    pub tau_minus: FiniteTopology,
    pub join: FiniteTopology,
    pub tau_sym: FiniteTopology,
    pub join_equals_sym: bool,
}

fn require_conorm<T: Scalar>(g: &GaugeSpec<T>) -> Result<crate::conorm::TConorm> {
    g.regime().conorm().ok_or(Error::WrongRegime { expected: "conorm" })
}

fn topology_of<T: Scalar>(table: &BallTable<T>, radii: &[T], side: Side) -> Result<FiniteTopology> {
    generate_topology(&table.all_balls(radii, side), table.carrier())
}

/// Compares the join of the forward and backward topologies with the topology
/// of the conorm-symmetrized gauge.
///
/// Each topology is generated by all of its balls over the critical radii of
/// its own gauge and every grid scale.
pub fn verify_join_equality<T: Scalar>(g: &GaugeSpec<T>, points: &[usize], grid: &ScaleGrid<T>) -> Result<JoinReport> {
    require_conorm(g)?;
    let th = critical_thresholds(g, points, grid)?;
    let table = BallTable::new(g, points, grid)?;
    let tau_plus = topology_of(&table, &th.radii, Side::Forward)?;
    let tau_minus = topology_of(&table, &th.radii, Side::Backward)?;
    let join = join_topologies(&tau_plus, &tau_minus)?;

    let sym = symmetrize_conorm(g)?;
    let sym_th = critical_thresholds(&sym, points, grid)?;
    let sym_table = BallTable::new(&sym, points, grid)?;
    let tau_sym = topology_of(&sym_table, &sym_th.radii, Side::Forward)?;
    let join_equals_sym = join == tau_sym;
    Ok(JoinReport {
        tau_plus,
        tau_minus,
        join,
        tau_sym,
        join_equals_sym,
    })
}

fn small_composites_into<T: Scalar>(
    report: &mut AxiomReport<T>,
    table: &BallTable<T>,
    radii: &[T],
    grid: &ScaleGrid<T>,
    conorm: crate::conorm::TConorm,
) {
    for (k, &t) in grid.scales().iter().enumerate() {
        for &r in radii {
            let small_r = conorm.split_radius(r);
            let small = table.entourage(k, small_r, Side::Forward);
            let big = table.entourage(k, r, Side::Forward);
            let composite = small.compose(&small).expect("same size");
            for (x, z) in composite.pairs() {
                if big.contains(x, z) {
                    continue;
                }
                let y = (0..table.n())
                    .find(|&y| small.contains(x, y) && small.contains(y, z))
                    .expect("composite pair has a middle point");
                report.push(
                    Axiom::QN4,
                    vec![table.point(x), table.point(y), table.point(z)],
                    vec![small_r, t, r],
                    ExtValue::saturating(table.value(x, z, k)),
                    ExtValue::saturating(r),
                );
            }
        }
    }
}

/// `E(r', t) o E(r', t) <= E(r, t)` for every critical `(r, t)`, with `r'` the
/// conorm's split radius.
///
/// Only forward entourages are swept: the backward inclusion is the transpose
/// of the forward one. Violations carry points `[x, y, z]`, params
/// `[r', t, r]`, `lhs = w(x, z, t)` and `rhs = r`.
pub fn small_composite_check<T: Scalar>(
    g: &GaugeSpec<T>,
    points: &[usize],
    grid: &ScaleGrid<T>,
) -> Result<AxiomReport<T>> {
    let conorm = require_conorm(g)?;
    let th = critical_thresholds(g, points, grid)?;
    let table = BallTable::new(g, points, grid)?;
    let mut report = AxiomReport::new(vec![Axiom::QN4]);
    small_composites_into(&mut report, &table, &th.radii, grid, conorm);
    report.sort();
    Ok(report)
}

/// Quasi-uniformity axioms of the forward entourage base.
///
/// QN1 checks the diagonal at every critical `(r, t)` (params `[r, t]`). QN3
/// checks nesting between adjacent radii and adjacent scales, which gives the
/// refinement `E(min r, min t) <= E(r1, t1) n E(r2, t2)` for all pairs by
/// transitivity (params `[r, t, r2, t2]`, points `[x, y]`). QN2 holds by
/// representation. QN4 is [`small_composite_check`].
pub fn quasi_uniformity_report<T: Scalar>(
    g: &GaugeSpec<T>,
    points: &[usize],
    grid: &ScaleGrid<T>,
) -> Result<AxiomReport<T>> {
    let conorm = require_conorm(g)?;
    let th = critical_thresholds(g, points, grid)?;
    let table = BallTable::new(g, points, grid)?;
    let mut report = AxiomReport::new(vec![Axiom::QN1, Axiom::QN2, Axiom::QN3, Axiom::QN4]);
    let scales = grid.scales();
    for (k, &t) in scales.iter().enumerate() {
        for &r in &th.radii {
            for x in 0..table.n() {
                if !table.within(x, x, k, r, Side::Forward) {
                    report.push(
                        Axiom::QN1,
                        vec![table.point(x)],
                        vec![r, t],
                        ExtValue::saturating(table.value(x, x, k)),
                        ExtValue::saturating(r),
                    );
                }
            }
        }
    }
    let nest = |k1: usize, r1: T, k2: usize, r2: T, report: &mut AxiomReport<T>| {
        let inner = table.entourage(k1, r1, Side::Forward);
        let outer = table.entourage(k2, r2, Side::Forward);
        for (x, y) in inner.pairs() {
            if !outer.contains(x, y) {
                report.push(
                    Axiom::QN3,
                    vec![table.point(x), table.point(y)],
                    vec![r1, scales[k1], r2, scales[k2]],
                    ExtValue::saturating(table.value(x, y, k2)),
                    ExtValue::saturating(r2),
                );
            }
        }
    };
    for k in 0..scales.len() {
        for w in th.radii.windows(2) {
            nest(k, w[0], k, w[1], &mut report);
        }
        if k + 1 < scales.len() {
            for &r in &th.radii {
                nest(k, r, k + 1, r, &mut report);
            }
        }
    }
    small_composites_into(&mut report, &table, &th.radii, grid, conorm);
    report.sort();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::DistanceTable;
    use crate::gauge::{make_ratio, make_tabulated, Regime};
    use crate::topology::PointSet;
    use crate::TConorm;

    fn ev(v: f64) -> ExtValue<f64> {
        ExtValue::new(v).unwrap()
    }

    fn two_point(conorm: TConorm) -> GaugeSpec<f64> {
        let grid = ScaleGrid::new(vec![1.0, 2.0]).unwrap();
        let vals: Vec<_> = [0.0, 0.0, 0.0, 0.0, 0.9, 0.9, 0.0, 0.0]
            .iter()
            .map(|&v| ev(v))
            .collect();
        make_tabulated(Regime::Conorm(conorm), grid, 2, vals).unwrap()
    }

    #[test]
    fn two_point_asymmetric_join() {
        let g = two_point(TConorm::Max);
        let grid = ScaleGrid::new(vec![1.0, 2.0]).unwrap();
        let rep = verify_join_equality(&g, &[0, 1], &grid).unwrap();
        let set = |xs: &[usize]| PointSet::from_indices(xs.iter().copied()).unwrap();
        assert_eq!(rep.tau_plus.opens(), &[set(&[]), set(&[1]), set(&[0, 1])]);
        assert_eq!(rep.tau_minus.opens(), &[set(&[]), set(&[0]), set(&[0, 1])]);
        assert_eq!(rep.join, FiniteTopology::discrete(set(&[0, 1])).unwrap());
        assert_eq!(rep.tau_sym, rep.join);
        assert!(rep.join_equals_sym);
        let json = serde_json::to_value(&rep).unwrap();
        assert_eq!(json["tau_plus"], serde_json::json!([[], [1], [0, 1]]));
    }

    #[test]
    fn symmetric_gauge_has_one_topology() {
        let xs: [f64; 4] = [0.0, 1.0, 1.5, 4.0];
        let d = DistanceTable::from_fn(4, |i, j| ev((xs[i] - xs[j]).abs()));
        let g = make_ratio(d).unwrap();
        let grid = ScaleGrid::new(vec![0.5, 1.0, 2.0]).unwrap();
        let rep = verify_join_equality(&g, &[0, 1, 2, 3], &grid).unwrap();
        assert_eq!(rep.tau_plus, rep.tau_minus);
        assert_eq!(rep.tau_plus, rep.tau_sym);
        assert!(rep.join_equals_sym);
    }

    #[test]
    fn ratio_gauge_has_clean_quasi_uniformity() {
        let xs: [f64; 5] = [0.0, 0.5, 1.5, 3.0, 3.25];
        let d = DistanceTable::from_fn(5, |i, j| ev((xs[i] - xs[j]).abs()));
        let g = make_ratio(d).unwrap();
        let grid = ScaleGrid::new(vec![0.5, 1.0, 2.0]).unwrap();
        let pts = g.all_points();
        assert!(small_composite_check(&g, &pts, &grid).unwrap().is_clean());
        let rep = quasi_uniformity_report(&g, &pts, &grid).unwrap();
        assert!(rep.is_clean(), "{:?}", rep.violations);
        let single = quasi_uniformity_report(&g, &[2], &grid).unwrap();
        assert!(single.is_clean());
    }

    #[test]
    fn corrupted_triangle_fails_small_composites_only() {
        // Chain 0 -> 1 -> 2 with small steps, but the long hop is near one.
        let grid = ScaleGrid::new(vec![1.0]).unwrap();
        let vals: Vec<_> = [0.0, 0.1, 0.95, 0.1, 0.0, 0.1, 0.95, 0.1, 0.0]
            .iter()
            .map(|&v| ev(v))
            .collect();
        let g = make_tabulated(Regime::Conorm(TConorm::Max), grid.clone(), 3, vals).unwrap();
        let rep = quasi_uniformity_report(&g, &[0, 1, 2], &grid).unwrap();
        assert!(rep.violations_of(Axiom::QN4).next().is_some());
        assert!(rep.violations_of(Axiom::QN1).next().is_none());
        assert!(rep.violations_of(Axiom::QN3).next().is_none());
        let v = rep.violations_of(Axiom::QN4).next().unwrap();
        assert_eq!(v.points.len(), 3);
        assert_eq!(v.points[1], 1);
    }

    #[test]
    fn split_radius_for_max() {
        assert_eq!(TConorm::Max.split_radius(0.5), 0.25);
        assert!(TConorm::Max.apply(0.25, 0.25) < 0.5);
    }

    #[test]
    fn additive_gauges_are_rejected() {
        let grid = ScaleGrid::new(vec![1.0]).unwrap();
        let g = make_tabulated(Regime::Additive, grid.clone(), 1, vec![ev(0.0)]).unwrap();
        assert!(matches!(
            verify_join_equality(&g, &[0], &grid),
            Err(Error::WrongRegime { .. })
        ));
        assert!(small_composite_check(&g, &[0], &grid).is_err());
    }
}
