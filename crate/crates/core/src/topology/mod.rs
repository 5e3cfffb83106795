//! Balls, entourages and topologies of a gauge on a finite point set.
//!
//! Subsets are `u64` bitmasks over universe indices, so every analysis here
//! is limited to universes of at most 64 points.

mod finite;
mod relation;
mod uniform;

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gauge::GaugeSpec;
use crate::grid::ScaleGrid;
use crate::scalar::Scalar;

pub use finite::{generate_topology, join_topologies, FiniteTopology, MAX_TOPOLOGY_POINTS};
pub use relation::Relation;
pub use uniform::{quasi_uniformity_report, small_composite_check, verify_join_equality, JoinReport};

pub const MAX_POINTS: usize = 64;

/// Subset of a universe of at most 64 points.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointSet(u64);

impl PointSet {
    pub fn empty() -> Self {
        PointSet(0)
    }

    /// `{0, 1, ..., n - 1}`.
    pub fn full(n: usize) -> Result<Self> {
        Self::check_size(n)?;
        Ok(if n == MAX_POINTS {
            PointSet(u64::MAX)
        } else {
            PointSet((1u64 << n) - 1)
        })
    }

    pub fn singleton(x: usize) -> Self {
        let mut s = Self::empty();
        s.insert(x);
        s
    }

    pub fn from_indices(xs: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut s = Self::empty();
        for x in xs {
            if x >= MAX_POINTS {
                return Err(Error::TooManyPoints {
                    max: MAX_POINTS,
                    got: x + 1,
                });
            }
            s.insert(x);
        }
        Ok(s)
    }

    pub fn from_bits(bits: u64) -> Self {
        PointSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub(crate) fn check_size(n: usize) -> Result<()> {
        if n > MAX_POINTS {
            return Err(Error::TooManyPoints {
                max: MAX_POINTS,
                got: n,
            });
        }
        Ok(())
    }

    pub fn contains(self, x: usize) -> bool {
        x < MAX_POINTS && self.0 >> x & 1 == 1
    }

    /// # Panics
    /// If `x >= 64`.
    pub fn insert(&mut self, x: usize) {
        assert!(x < MAX_POINTS, "point index {x} exceeds the 64-point limit");
        self.0 |= 1 << x;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        PointSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        PointSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        PointSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Members in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let x = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(x)
        })
    }
}

impl FromIterator<usize> for PointSet {
    /// # Panics
    /// If an index is `>= 64`.
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = PointSet::empty();
        for x in iter {
            s.insert(x);
        }
        s
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for PointSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

/// Which ordered pair a ball or entourage constrains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// `w(x, y, t) < r`.
    Forward,
    /// `w(y, x, t) < r`.
    Backward,
    /// Both.
    #[serde(rename = "sym")]
    TwoSided,
}

impl Side {
    pub const ALL: [Side; 3] = [Side::Forward, Side::Backward, Side::TwoSided];

    pub fn parse(s: &str) -> Option<Side> {
        match s {
            "forward" | "plus" => Some(Side::Forward),
            "backward" | "minus" => Some(Side::Backward),
            "sym" | "two_sided" | "two-sided" => Some(Side::TwoSided),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Side::Forward => "forward",
            Side::Backward => "backward",
            Side::TwoSided => "sym",
        }
    }
}

fn check_radius_scale<T: Scalar>(g: &GaugeSpec<T>, r: T, t: T) -> Result<()> {
    if !(t > T::zero()) || !t.is_finite() {
        return Err(Error::NonPositiveScale(t.as_f64()));
    }
    if !(r > T::zero()) || r.is_nan() {
        return Err(Error::InvalidParameter(format!("radius must be positive, got {r}")));
    }
    if !g.regime().is_additive() && r > T::one() {
        return Err(Error::InvalidParameter(format!(
            "conorm radius must lie in (0, 1], got {r}"
        )));
    }
    PointSet::check_size(g.len())
}

fn within<T: Scalar>(g: &GaugeSpec<T>, x: usize, y: usize, r: T, t: T, side: Side) -> Result<bool> {
    let fwd = || -> Result<bool> { Ok(g.evaluate(x, y, t)?.get() < r) };
    let bwd = || -> Result<bool> { Ok(g.evaluate(y, x, t)?.get() < r) };
    Ok(match side {
        Side::Forward => fwd()?,
        Side::Backward => bwd()?,
        Side::TwoSided => fwd()? && bwd()?,
    })
}

/// Ball of radius `r` at scale `t` around `x`, over the whole universe.
pub fn ball<T: Scalar>(g: &GaugeSpec<T>, x: usize, r: T, t: T, side: Side) -> Result<PointSet> {
    check_radius_scale(g, r, t)?;
    let mut out = PointSet::empty();
    for y in 0..g.len() {
        if within(g, x, y, r, t, side)? {
            out.insert(y);
        }
    }
    Ok(out)
}

/// Basic entourage `E_{r,t}` of the given side, over the whole universe.
pub fn entourage<T: Scalar>(g: &GaugeSpec<T>, r: T, t: T, side: Side) -> Result<Relation> {
    check_radius_scale(g, r, t)?;
    let n = g.len();
    let mut rel = Relation::empty(n)?;
    for x in 0..n {
        for y in 0..n {
            if within(g, x, y, r, t, side)? {
                rel.insert(x, y);
            }
        }
    }
    Ok(rel)
}

/// Radii and scales at which every distinct ball of a finite gauge appears.
#[derive(Clone, Debug, PartialEq)]
pub struct ThresholdSet<T: Scalar> {
    pub radii: Vec<T>,
    pub scales: ScaleGrid<T>,
}

impl<T: Scalar> Serialize for ThresholdSet<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ThresholdSet", 2)?;
        st.serialize_field("radii", &self.radii.iter().map(|r| r.as_f64()).collect::<Vec<_>>())?;
        st.serialize_field(
            "scales",
            &self.scales.scales().iter().map(|r| r.as_f64()).collect::<Vec<_>>(),
        )?;
        st.end()
    }
}

/// Distinct finite positive values, midpoints between consecutive distinct
/// values (zero included) and one radius above the maximum.
///
/// The top radius is `max + 1` in the additive regime and `(max + 1) / 2` in
/// the conorm regime, where radii stay below one.
pub fn critical_thresholds<T: Scalar>(
    g: &GaugeSpec<T>,
    points: &[usize],
    grid: &ScaleGrid<T>,
) -> Result<ThresholdSet<T>> {
    let sampled = g.sample(points, grid)?;
    let mut values: Vec<T> = sampled
        .values()
        .iter()
        .filter(|v| v.is_finite())
        .map(|v| v.get())
        .collect();
    values.push(T::zero());
    Ok(ThresholdSet {
        radii: radii_from_values(values, g.regime().is_additive()),
        scales: grid.clone(),
    })
}

pub(crate) fn radii_from_values<T: Scalar>(mut values: Vec<T>, additive: bool) -> Vec<T> {
    values.sort_by(|a, b| a.partial_cmp(b).expect("finite gauge values"));
    values.dedup();
    let two = T::lit(2.0);
    let mut radii = Vec::new();
    for w in values.windows(2) {
        let mid = w[0] + (w[1] - w[0]) / two;
        if mid > w[0] && mid < w[1] {
            radii.push(mid);
        }
        radii.push(w[1]);
    }
    let max = *values.last().expect("zero is always present");
    let top = if additive {
        max + T::one()
    } else {
        (max + T::one()) / two
    };
    if top > max && (additive || top < T::one()) {
        radii.push(top);
    }
    radii.retain(|r| *r > T::zero());
    radii
}

/// Dense view of one side of a gauge on `points x points x grid`, with balls
/// reported in universe indices.
pub(crate) struct BallTable<T> {
    universe: Vec<usize>,
    n: usize,
    m: usize,
    vals: Vec<T>,
}

impl<T: Scalar> BallTable<T> {
    pub fn new(g: &GaugeSpec<T>, points: &[usize], grid: &ScaleGrid<T>) -> Result<Self> {
        PointSet::check_size(g.len())?;
        let sampled = g.sample(points, grid)?;
        let (n, m) = (sampled.n, sampled.m);
        let mut vals = Vec::with_capacity(n * n * m);
        for i in 0..n {
            for j in 0..n {
                for k in 0..m {
                    vals.push(sampled.get(i, j, k).get());
                }
            }
        }
        Ok(BallTable {
            universe: points.to_vec(),
            n,
            m,
            vals,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn point(&self, i: usize) -> usize {
        self.universe[i]
    }

    pub fn carrier(&self) -> PointSet {
        self.universe.iter().copied().collect()
    }

    pub fn value(&self, i: usize, j: usize, k: usize) -> T {
        self.vals[(i * self.n + j) * self.m + k]
    }

    pub fn within(&self, i: usize, j: usize, k: usize, r: T, side: Side) -> bool {
        match side {
            Side::Forward => self.value(i, j, k) < r,
            Side::Backward => self.value(j, i, k) < r,
            Side::TwoSided => self.value(i, j, k) < r && self.value(j, i, k) < r,
        }
    }

    /// Ball around position `i`, as a set of universe indices.
    pub fn ball(&self, i: usize, k: usize, r: T, side: Side) -> PointSet {
        (0..self.n)
            .filter(|&j| self.within(i, j, k, r, side))
            .map(|j| self.universe[j])
            .collect()
    }

    /// Entourage over positions `0..n`.
    pub fn entourage(&self, k: usize, r: T, side: Side) -> Relation {
        Relation::from_fn(self.n, |i, j| self.within(i, j, k, r, side)).expect("size checked on construction")
    }

    /// Every ball over every centre, radius and scale.
    pub fn all_balls(&self, radii: &[T], side: Side) -> Vec<PointSet> {
        let mut out = Vec::with_capacity(self.n * radii.len() * self.m);
        for i in 0..self.n {
            for k in 0..self.m {
                for &r in radii {
                    out.push(self.ball(i, k, r, side));
                }
            }
        }
        out
    }
}
