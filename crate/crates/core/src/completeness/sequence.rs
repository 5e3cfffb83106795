use serde::Serialize;

use crate::error::{Error, Result};
use crate::gauge::GaugeSpec;
use crate::scalar::Scalar;
use crate::topology::Side;

/// Finite initial segment `x_1, ..., x_N` of a sequence in a gauge universe.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampledSequence {
    points: Vec<usize>,
}

impl SampledSequence {
    pub fn new(points: Vec<usize>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidValue("a sampled sequence needs at least one term".into()));
        }
        Ok(SampledSequence { points })
    }

    pub fn points(&self) -> &[usize] {
        &self.points
    }

    pub fn horizon(&self) -> usize {
        self.points.len()
    }

    /// Largest admissible starting index `ceil(N / 2)`.
    ///
    /// On a finite segment every condition holds from `i0 = N`, so a tail
    /// only counts when it covers at least the second half of the samples.
    pub fn latest_start(&self) -> usize {
        self.points.len().div_ceil(2)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CauchyKind {
    Forward,
    Backward,
    Bi,
    Neither,
}

/// Outcome of [`classify_cauchy`]. Indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CauchyClass {
    pub kind: CauchyKind,
    /// Minimal `i0` for which the forward condition holds on the segment.
    pub forward_start: usize,
    /// Minimal `i0` for the backward condition.
    pub backward_start: usize,
    /// The witness index: the minimal admissible `i0` of the reported kind
    /// (the smaller one for `Bi`), or the first failing start otherwise.
    pub witness_index: usize,
    /// Last violating pair `(i, j)` of each direction, if any.
    pub forward_violation: Option<(usize, usize)>,
    pub backward_violation: Option<(usize, usize)>,
}

/// Minimal `i0` such that `ok(i, j)` holds for all `i0 <= i <= j <= N`,
/// plus the blocking pair with the largest `i`.
fn minimal_start(
    n: usize,
    mut ok: impl FnMut(usize, usize) -> Result<bool>,
) -> Result<(usize, Option<(usize, usize)>)> {
    for i in (0..n).rev() {
        for j in i..n {
            if !ok(i, j)? {
                return Ok((i + 2, Some((i + 1, j + 1))));
            }
        }
    }
    Ok((1, None))
}

/// Forward Cauchy: `w(x_i, x_j, t) < r` whenever `i0 <= i <= j`. Backward
/// swaps the pair. The condition is checked on the sampled segment with
/// `i0 <= ceil(N / 2)`.
pub fn classify_cauchy<T: Scalar>(seq: &SampledSequence, g: &GaugeSpec<T>, r: T, t: T) -> Result<CauchyClass> {
    check_rt(g, r, t)?;
    let x = seq.points();
    let n = x.len();
    let (forward_start, forward_violation) = minimal_start(n, |i, j| Ok(g.evaluate(x[i], x[j], t)?.get() < r))?;
    let (backward_start, backward_violation) = minimal_start(n, |i, j| Ok(g.evaluate(x[j], x[i], t)?.get() < r))?;
    let limit = seq.latest_start();
    let (f, b) = (forward_start <= limit, backward_start <= limit);
    let (kind, witness_index) = match (f, b) {
        (true, true) => (CauchyKind::Bi, forward_start.min(backward_start)),
        (true, false) => (CauchyKind::Forward, forward_start),
        (false, true) => (CauchyKind::Backward, backward_start),
        (false, false) => (CauchyKind::Neither, forward_start.min(backward_start)),
    };
    Ok(CauchyClass {
        kind,
        forward_start,
        backward_start,
        witness_index,
        forward_violation,
        backward_violation,
    })
}

/// Outcome of [`converges_to`]. Indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Convergence {
    pub converges: bool,
    /// Minimal `i0` after which every term lies in the ball.
    pub start: usize,
    /// Last term outside the ball.
    pub witness: Option<usize>,
}

/// `x_i` in the ball of the given side around `x` for all `i >= i0`, with
/// `i0 <= ceil(N / 2)`.
pub fn converges_to<T: Scalar>(
    seq: &SampledSequence,
    g: &GaugeSpec<T>,
    x: usize,
    r: T,
    t: T,
    side: Side,
) -> Result<Convergence> {
    check_rt(g, r, t)?;
    let mut witness = None;
    for (i, &p) in seq.points().iter().enumerate().rev() {
        let fwd = g.evaluate(x, p, t)?.get() < r;
        let bwd = g.evaluate(p, x, t)?.get() < r;
        let inside = match side {
            Side::Forward => fwd,
            Side::Backward => bwd,
            Side::TwoSided => fwd && bwd,
        };
        if !inside {
            witness = Some(i + 1);
            break;
        }
    }
    let start = witness.map_or(1, |w| w + 1);
    Ok(Convergence {
        converges: start <= seq.latest_start(),
        start,
        witness,
    })
}

pub(crate) fn check_rt<T: Scalar>(g: &GaugeSpec<T>, r: T, t: T) -> Result<()> {
    if !(t > T::zero()) || !t.is_finite() {
        return Err(Error::NonPositiveScale(t.as_f64()));
    }
    if !(r > T::zero()) || r.is_nan() || (!g.regime().is_additive() && r > T::one()) {
        return Err(Error::InvalidParameter(format!(
            "radius {r} is not valid for this regime"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::DistanceTable;
    use crate::ext::ExtValue;
    use crate::gauge::{make_ratio, make_tabulated, Regime};
    use crate::grid::ScaleGrid;
    use crate::TConorm;

    fn ev(v: f64) -> ExtValue<f64> {
        ExtValue::new(v).unwrap()
    }

    fn two_point() -> GaugeSpec<f64> {
        let grid = ScaleGrid::new(vec![1.0]).unwrap();
        make_tabulated(
            Regime::Conorm(TConorm::Max),
            grid,
            2,
            vec![ev(0.0), ev(0.0), ev(0.9), ev(0.0)],
        )
        .unwrap()
    }

    fn seq(xs: &[usize]) -> SampledSequence {
        SampledSequence::new(xs.to_vec()).unwrap()
    }

    #[test]
    fn constant_sequence_is_bi_from_one() {
        let c = classify_cauchy(&seq(&[1, 1, 1, 1]), &two_point(), 0.5, 1.0).unwrap();
        assert_eq!(c.kind, CauchyKind::Bi);
        assert_eq!(c.witness_index, 1);
    }

    #[test]
    fn alternating_is_neither() {
        let c = classify_cauchy(&seq(&[0, 1, 0, 1, 0, 1, 0, 1]), &two_point(), 0.5, 1.0).unwrap();
        assert_eq!(c.kind, CauchyKind::Neither);
        assert!(c.forward_violation.is_some() && c.backward_violation.is_some());
    }

    #[test]
    fn block_sequence_is_forward_only() {
        let c = classify_cauchy(&seq(&[0, 0, 0, 0, 1, 1, 1, 1]), &two_point(), 0.5, 1.0).unwrap();
        assert_eq!(c.kind, CauchyKind::Forward);
        assert_eq!(c.forward_start, 1);
        assert_eq!(c.backward_start, 5);
        assert_eq!(c.backward_violation, Some((4, 5)));
    }

    #[test]
    fn decreasing_reals_are_bi() {
        let xs: Vec<f64> = (0..12).map(|k| 10f64.powi(-k)).collect();
        let d = DistanceTable::from_fn(xs.len(), |i, j| ev((xs[i] - xs[j]).abs()));
        let g = make_ratio(d).unwrap();
        let s = seq(&(0..12).collect::<Vec<_>>());
        for r in [0.05, 0.2, 0.5] {
            for t in [0.01, 0.1, 1.0] {
                let c = classify_cauchy(&s, &g, r, t).unwrap();
                assert_eq!(c.kind, CauchyKind::Bi, "r={r} t={t}");
            }
        }
    }

    #[test]
    fn bi_iff_both_directions() {
        let g = two_point();
        for bits in 0u32..256 {
            let xs: Vec<usize> = (0..8).map(|k| (bits >> k & 1) as usize).collect();
            let c = classify_cauchy(&seq(&xs), &g, 0.5, 1.0).unwrap();
            let lim = 4;
            assert_eq!(
                c.kind == CauchyKind::Bi,
                c.forward_start <= lim && c.backward_start <= lim
            );
        }
    }

    #[test]
    fn convergence_cases() {
        let g = two_point();
        for side in Side::ALL {
            assert!(converges_to(&seq(&[1, 1, 1]), &g, 1, 0.5, 1.0, side).unwrap().converges);
        }
        let block = seq(&[0, 0, 1, 1, 1, 1]);
        assert!(converges_to(&block, &g, 0, 0.5, 1.0, Side::Forward).unwrap().converges);
        let back = converges_to(&block, &g, 0, 0.5, 1.0, Side::Backward).unwrap();
        assert!(!back.converges);
        assert_eq!(back.witness, Some(6));
    }

    #[test]
    fn empty_sequence_rejected() {
        assert!(SampledSequence::new(vec![]).is_err());
    }
}
