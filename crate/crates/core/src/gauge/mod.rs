//! Quasi-modular gauges `w_t(x, y)` over a finite point universe.
//!
//! A gauge lives in one of two regimes. The additive regime takes values in
//! `[0, inf]` and is checked against the split-scale triangle
//! `w_{t+s}(x, z) <= w_t(x, y) + w_s(y, z)`. The conorm regime takes values in
//! `[0, 1)` and aggregates with a [`TConorm`] instead of `+`.
//!
//! Gauges are immutable; combinators ([`opposite`], [`symmetrize_max`],
//! [`symmetrize_conorm`]) wrap their input behind an `Arc`.

mod axioms;
mod constructors;
mod ops;

use std::fmt;
use std::sync::Arc;

pub use axioms::{check_axioms, convexity_check, enriched_triangle_check};
pub use constructors::{
    make_asymmetric_sublinear, make_classical_modular, make_min_cap, make_one_sided_orlicz, make_ratio,
    make_scaled_metric, make_tabulated, one_sided_orlicz_cost, sublinear_cost, Modular, ScaleFactor,
};
pub use ops::{opposite, profile_convolve, symmetrize_conorm, symmetrize_max};

use crate::conorm::TConorm;
use crate::distance::DistanceTable;
use crate::error::{Error, Result};
use crate::ext::ExtValue;
use crate::grid::{Profile, ScaleGrid};
use crate::scalar::{below_one, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    /// Codomain `[0, inf]`, triangle with `+`.
    Additive,
    /// Codomain `[0, 1)`, triangle with the given t-conorm.
    Conorm(TConorm),
}

impl Regime {
    pub fn conorm(self) -> Option<TConorm> {
        match self {
            Regime::Additive => None,
            Regime::Conorm(c) => Some(c),
        }
    }

    pub fn is_additive(self) -> bool {
        self == Regime::Additive
    }

    /// The regime's aggregation: `+` or the conorm.
    pub fn combine<T: Scalar>(self, a: ExtValue<T>, b: ExtValue<T>) -> ExtValue<T> {
        match self {
            Regime::Additive => a + b,
            Regime::Conorm(c) => ExtValue::saturating(c.apply(a.get(), b.get())),
        }
    }
}

/// Values of a tabulated gauge: one profile per ordered pair, flattened.
#[derive(Clone, Debug, PartialEq)]
pub struct Table<T> {
    grid: ScaleGrid<T>,
    n: usize,
    values: Vec<ExtValue<T>>,
}

impl<T: Scalar> Table<T> {
    pub fn grid(&self) -> &ScaleGrid<T> {
        &self.grid
    }

    pub fn entry(&self, x: usize, y: usize, k: usize) -> ExtValue<T> {
        self.values[(x * self.n + y) * self.grid.len() + k]
    }

    pub fn profile(&self, x: usize, y: usize) -> Profile<T> {
        let m = self.grid.len();
        let start = (x * self.n + y) * m;
        Profile::new(self.grid.clone(), self.values[start..start + m].to_vec()).expect("table rows match grid length")
    }
}

/// Where gauge values come from.
#[derive(Clone)]
pub enum Source<T: Scalar> {
    Tabulated(Arc<Table<T>>),
    /// `min{rho(x, y), t}`.
    MinCap(Arc<DistanceTable<T>>),
    /// `p(x, y) / (t + p(x, y))`, clamped below one.
    Ratio(Arc<DistanceTable<T>>),
    /// `g(t) * d(x, y)`.
    ScaledMetric {
        d: Arc<DistanceTable<T>>,
        factor: ScaleFactor<T>,
    },
    /// `rho((x - y) / t)` over vectors.
    ClassicalModular {
        vectors: Arc<Vec<Vec<T>>>,
        rho: Modular<T>,
    },
    /// `w_t(y, x)`.
    Opposite(Arc<GaugeSpec<T>>),
    /// `max{w_t(x, y), w_t(y, x)}`.
    SymmetricMax(Arc<GaugeSpec<T>>),
    /// `w(x, y, t) (+) w(y, x, t)`.
    SymmetricConorm(Arc<GaugeSpec<T>>, TConorm),
}

impl<T: Scalar> fmt::Debug for Source<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Tabulated(t) => write!(f, "Tabulated({} points x {} scales)", t.n, t.grid.len()),
            Source::MinCap(_) => f.write_str("MinCap"),
            Source::Ratio(_) => f.write_str("Ratio"),
            Source::ScaledMetric { factor, .. } => write!(f, "ScaledMetric({factor:?})"),
            Source::ClassicalModular { rho, .. } => write!(f, "ClassicalModular({})", rho.name()),
            Source::Opposite(g) => write!(f, "Opposite({:?})", g.source),
            Source::SymmetricMax(g) => write!(f, "SymmetricMax({:?})", g.source),
            Source::SymmetricConorm(g, c) => write!(f, "SymmetricConorm({:?}, {})", g.source, c.name()),
        }
    }
}

/// A quasi-modular gauge over points `0..n`, with optional labels.
///
/// `claims_symmetric` and `claims_convex` are claims: the checkers verify them
/// and report a violation when they do not hold.
#[derive(Clone, Debug)]
pub struct GaugeSpec<T: Scalar> {
    regime: Regime,
    labels: Arc<Vec<String>>,
    source: Source<T>,
    pub claims_symmetric: bool,
    pub claims_convex: bool,
    warnings: Vec<String>,
}

impl<T: Scalar> GaugeSpec<T> {
    pub(crate) fn from_source(regime: Regime, n: usize, source: Source<T>) -> Self {
        GaugeSpec {
            regime,
            labels: Arc::new((0..n).map(|i| i.to_string()).collect()),
            source,
            claims_symmetric: false,
            claims_convex: false,
            warnings: Vec::new(),
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.len() {
            return Err(Error::InvalidParameter(format!(
                "{} labels for {} points",
                labels.len(),
                self.len()
            )));
        }
        self.labels = Arc::new(labels);
        Ok(self)
    }

    pub(crate) fn with_warning(mut self, w: String) -> Self {
        self.warnings.push(w);
        self
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    pub fn source(&self) -> &Source<T> {
        &self.source
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn all_points(&self) -> Vec<usize> {
        (0..self.len()).collect()
    }

    pub fn point_index(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownPoint(label.to_string()))
    }

    /// Grid a tabulated gauge carries, if any.
    pub fn native_grid(&self) -> Option<&ScaleGrid<T>> {
        match &self.source {
            Source::Tabulated(t) => Some(&t.grid),
            Source::ScaledMetric {
                factor: ScaleFactor::Profile(p),
                ..
            } => Some(p.grid()),
            Source::Opposite(g) | Source::SymmetricMax(g) | Source::SymmetricConorm(g, _) => g.native_grid(),
            _ => None,
        }
    }

    /// `w_t(x, y)`.
    pub fn evaluate(&self, x: usize, y: usize, t: T) -> Result<ExtValue<T>> {
        if !(t > T::zero()) || !t.is_finite() {
            return Err(Error::NonPositiveScale(t.as_f64()));
        }
        for p in [x, y] {
            if p >= self.len() {
                return Err(Error::UnknownPoint(p.to_string()));
            }
        }
        Ok(self.eval_unchecked(x, y, t))
    }

    pub(crate) fn eval_unchecked(&self, x: usize, y: usize, t: T) -> ExtValue<T> {
        match &self.source {
            Source::Tabulated(table) => table.entry(x, y, table.grid.profile_index(t)),
            Source::MinCap(rho) => rho.get(x, y).min(ExtValue::saturating(t)),
            Source::Ratio(p) => ratio_value(p.get(x, y), t),
            Source::ScaledMetric { d, factor } => mul_ext(factor.eval(t), d.get(x, y)),
            Source::ClassicalModular { vectors, rho } => {
                if x == y {
                    return ExtValue::zero();
                }
                let diff: Vec<T> = vectors[x].iter().zip(&vectors[y]).map(|(&a, &b)| (a - b) / t).collect();
                rho.eval(&diff)
            }
            Source::Opposite(g) => g.eval_unchecked(y, x, t),
            Source::SymmetricMax(g) => g.eval_unchecked(x, y, t).max(g.eval_unchecked(y, x, t)),
            Source::SymmetricConorm(g, c) => {
                let v = c.apply(g.eval_unchecked(x, y, t).get(), g.eval_unchecked(y, x, t).get());
                ExtValue::saturating(v.min(below_one()))
            }
        }
    }

    /// Samples the gauge on the grid and returns a tabulated copy over all points.
    pub fn tabulate(&self, grid: &ScaleGrid<T>) -> GaugeSpec<T> {
        let n = self.len();
        let mut values = Vec::with_capacity(n * n * grid.len());
        for x in 0..n {
            for y in 0..n {
                for &t in grid.scales() {
                    values.push(self.eval_unchecked(x, y, t));
                }
            }
        }
        GaugeSpec {
            regime: self.regime,
            labels: self.labels.clone(),
            source: Source::Tabulated(Arc::new(Table {
                grid: grid.clone(),
                n,
                values,
            })),
            claims_symmetric: self.claims_symmetric,
            claims_convex: self.claims_convex,
            warnings: self.warnings.clone(),
        }
    }

    /// Dense sample over `points x points x grid`, positions relative to `points`.
    pub(crate) fn sample(&self, points: &[usize], grid: &ScaleGrid<T>) -> Result<Sampled<T>> {
        for &p in points {
            if p >= self.len() {
                return Err(Error::UnknownPoint(p.to_string()));
            }
        }
        let m = grid.len();
        let mut vals = Vec::with_capacity(points.len() * points.len() * m);
        for &x in points {
            for &y in points {
                for &t in grid.scales() {
                    vals.push(self.eval_unchecked(x, y, t));
                }
            }
        }
        Ok(Sampled {
            n: points.len(),
            m,
            vals,
        })
    }
}

/// `p / (t + p)` with `p = inf` and round-off at one clamped to `1 - eps`.
fn ratio_value<T: Scalar>(p: ExtValue<T>, t: T) -> ExtValue<T> {
    if p.is_infinite() {
        return ExtValue::saturating(below_one());
    }
    let p = p.get();
    ExtValue::saturating((p / (t + p)).min(below_one()))
}

/// Product in `[0, inf]` with `0 * inf = 0`.
pub(crate) fn mul_ext<T: Scalar>(a: ExtValue<T>, b: ExtValue<T>) -> ExtValue<T> {
    if a.is_zero() || b.is_zero() {
        ExtValue::zero()
    } else {
        ExtValue::saturating(a.get() * b.get())
    }
}

/// Gauge values cached on `points x points x grid`.
pub(crate) struct Sampled<T> {
    pub n: usize,
    pub m: usize,
    vals: Vec<ExtValue<T>>,
}

impl<T: Scalar> Sampled<T> {
    pub fn get(&self, i: usize, j: usize, k: usize) -> ExtValue<T> {
        self.vals[(i * self.n + j) * self.m + k]
    }

    pub fn values(&self) -> &[ExtValue<T>] {
        &self.vals
    }
}

/// Free-function form of [`GaugeSpec::evaluate`].
pub fn evaluate<T: Scalar>(g: &GaugeSpec<T>, x: usize, y: usize, t: T) -> Result<ExtValue<T>> {
    g.evaluate(x, y, t)
}
