use std::fmt;
use std::sync::Arc;

use super::{GaugeSpec, Regime, Source, Table};
use crate::conorm::TConorm;
use crate::distance::DistanceTable;
use crate::error::{Error, Result};
use crate::ext::ExtValue;
use crate::grid::{Profile, ScaleGrid};
use crate::luxemburg::quasi_pseudometric_check_with_slack;
use crate::scalar::{below_one, Scalar};

/// Relative slack for validating user-supplied cost tables, which are
/// usually computed in floating point.
const INPUT_SLACK_ULPS: f64 = 16.0;

/// Scale factor `g(t)` of a scaled-metric gauge.
#[derive(Clone, Debug, PartialEq)]
pub enum ScaleFactor<T> {
    /// `g(t) = 1 / t`.
    Reciprocal,
    /// Piecewise-constant `g` read with profile semantics.
    Profile(Profile<T>),
}

impl<T: Scalar> ScaleFactor<T> {
    pub fn eval(&self, t: T) -> ExtValue<T> {
        match self {
            ScaleFactor::Reciprocal => ExtValue::saturating(t.recip()),
            ScaleFactor::Profile(p) => p.eval(t),
        }
    }
}

type ModularFn<T> = dyn Fn(&[T]) -> ExtValue<T> + Send + Sync;

/// Classical modular `rho` on vector differences.
#[derive(Clone)]
pub struct Modular<T> {
    name: String,
    f: Arc<ModularFn<T>>,
}

impl<T: Scalar> Modular<T> {
    pub fn new(name: impl Into<String>, f: impl Fn(&[T]) -> ExtValue<T> + Send + Sync + 'static) -> Self {
        Modular {
            name: name.into(),
            f: Arc::new(f),
        }
    }

    /// `|v|_2 ^ exponent`.
    pub fn euclidean_power(exponent: T) -> Self {
        Modular::new(format!("euclidean^{exponent}"), move |v: &[T]| {
            let norm = v.iter().fold(T::zero(), |acc, &x| acc + x * x).sqrt();
            ExtValue::saturating(norm.powf(exponent))
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, v: &[T]) -> ExtValue<T> {
        (self.f)(v)
    }
}

impl<T> fmt::Debug for Modular<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Modular({})", self.name)
    }
}

fn require_quasi_pseudometric<T: Scalar>(rho: &DistanceTable<T>) -> Result<()> {
    let points: Vec<usize> = (0..rho.len()).collect();
    let slack = T::epsilon() * T::lit(INPUT_SLACK_ULPS);
    let report = quasi_pseudometric_check_with_slack(rho, &points, slack);
    match report.violations.first() {
        None => Ok(()),
        Some(v) => Err(Error::NotQuasiPseudometric {
            axiom: match v.axiom {
                crate::report::Axiom::Reflexivity => "reflexivity",
                _ => "triangle",
            },
            points: v.points.clone(),
            lhs: v.lhs.get().as_f64(),
            rhs: v.rhs.get().as_f64(),
        }),
    }
}

/// `w_t(x, y) = min{rho(x, y), t}` in the additive regime.
pub fn make_min_cap<T: Scalar>(rho: DistanceTable<T>) -> Result<GaugeSpec<T>> {
    require_quasi_pseudometric(&rho)?;
    let n = rho.len();
    let symmetric = rho.is_symmetric();
    let mut g = GaugeSpec::from_source(Regime::Additive, n, Source::MinCap(Arc::new(rho)));
    g.claims_symmetric = symmetric;
    Ok(g)
}

/// `w(x, y, t) = p(x, y) / (t + p(x, y))` in the conorm regime with `max`.
///
/// Infinite `p` would give the forbidden value one; it is clamped to
/// `1 - eps` and a warning is recorded.
pub fn make_ratio<T: Scalar>(p: DistanceTable<T>) -> Result<GaugeSpec<T>> {
    require_quasi_pseudometric(&p)?;
    let n = p.len();
    let infinite = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| p.get(x, y).is_infinite())
        .count();
    let symmetric = p.is_symmetric();
    let mut g = GaugeSpec::from_source(Regime::Conorm(TConorm::Max), n, Source::Ratio(Arc::new(p)));
    g.claims_symmetric = symmetric;
    if infinite > 0 {
        g = g.with_warning(format!(
            "{infinite} infinite distances clamped to 1 - eps in the ratio gauge"
        ));
    }
    Ok(g)
}

/// `w_t = g(t) * d`. Fails when `g` increases somewhere on its grid; claims
/// convexity exactly when `t * g(t)` is nonincreasing there.
pub fn make_scaled_metric<T: Scalar>(d: DistanceTable<T>, factor: ScaleFactor<T>) -> Result<GaugeSpec<T>> {
    require_quasi_pseudometric(&d)?;
    let convex = match &factor {
        ScaleFactor::Reciprocal => true,
        ScaleFactor::Profile(p) => {
            if let Some(i) = p.first_increase() {
                let s = p.grid().scales();
                return Err(Error::IncreasingScaleFactor {
                    lower: s[i].as_f64(),
                    upper: s[i + 1].as_f64(),
                    at_lower: p.values()[i].get().as_f64(),
                    at_upper: p.values()[i + 1].get().as_f64(),
                });
            }
            let scaled: Vec<ExtValue<T>> = p
                .grid()
                .scales()
                .iter()
                .zip(p.values())
                .map(|(&t, &v)| v.scale(t))
                .collect();
            scaled.windows(2).all(|w| w[1] <= w[0])
        }
    };
    let n = d.len();
    let symmetric = d.is_symmetric();
    let mut g = GaugeSpec::from_source(Regime::Additive, n, Source::ScaledMetric { d: Arc::new(d), factor });
    g.claims_symmetric = symmetric;
    g.claims_convex = convex;
    Ok(g)
}

/// `w_t(x, y) = rho((x - y) / t)` over the given vectors.
///
/// `rho(0)` must vanish and `rho` must be nondecreasing along every ray
/// spanned by a pairwise difference (sampled). Convexity along those rays is
/// sampled as well and sets `claims_convex`.
pub fn make_classical_modular<T: Scalar>(rho: Modular<T>, vectors: Vec<Vec<T>>) -> Result<GaugeSpec<T>> {
    let dim = vectors.first().map_or(0, Vec::len);
    if vectors.iter().any(|v| v.len() != dim) {
        return Err(Error::InvalidParameter("vectors have mixed dimensions".into()));
    }
    let at_zero = rho.eval(&vec![T::zero(); dim]);
    if !at_zero.is_zero() {
        return Err(Error::InvalidParameter(format!("rho(0) = {at_zero}, expected 0")));
    }
    let samples: Vec<T> = (0..=16).map(|k| T::lit(k as f64 / 4.0)).collect();
    let mut convex = true;
    for x in &vectors {
        for y in &vectors {
            let dir: Vec<T> = x.iter().zip(y).map(|(&a, &b)| a - b).collect();
            let ray: Vec<ExtValue<T>> = samples
                .iter()
                .map(|&s| rho.eval(&dir.iter().map(|&c| c * s).collect::<Vec<_>>()))
                .collect();
            if let Some(i) = ray.windows(2).position(|w| w[1] < w[0]) {
                return Err(Error::InvalidParameter(format!(
                    "rho decreases along a ray between multiples {} and {}",
                    samples[i],
                    samples[i + 1]
                )));
            }
            for w in ray.windows(3) {
                if w.iter().all(|v| v.is_finite()) {
                    let (a, b, c) = (w[0].get(), w[1].get(), w[2].get());
                    let slack = T::epsilon() * T::lit(64.0) * (a.abs() + c.abs());
                    if a + c + slack < b + b {
                        convex = false;
                    }
                }
            }
        }
    }
    let n = vectors.len();
    let mut g = GaugeSpec::from_source(
        Regime::Additive,
        n,
        Source::ClassicalModular {
            vectors: Arc::new(vectors),
            rho,
        },
    );
    g.claims_convex = convex;
    Ok(g)
}

/// Cost table `rho(x, y) = p(y - x)` for an asymmetric sublinear gauge `p`.
pub fn sublinear_cost<T: Scalar>(vectors: &[Vec<T>], p: impl Fn(&[T]) -> T) -> Result<DistanceTable<T>> {
    let n = vectors.len();
    let mut rows = vec![vec![T::zero(); n]; n];
    for x in 0..n {
        for y in 0..n {
            let diff: Vec<T> = vectors[y].iter().zip(&vectors[x]).map(|(&a, &b)| a - b).collect();
            rows[x][y] = p(&diff);
        }
    }
    DistanceTable::from_rows(&rows)
}

/// Min-cap gauge of the cost `p(y - x)`.
pub fn make_asymmetric_sublinear<T: Scalar>(vectors: &[Vec<T>], p: impl Fn(&[T]) -> T) -> Result<GaugeSpec<T>> {
    make_min_cap(sublinear_cost(vectors, p)?)
}

/// Cost `rho(f, g) = sum_i mu_i * phi((f_i - g_i)_+)` between sampled functions.
pub fn one_sided_orlicz_cost<T: Scalar>(
    functions: &[Vec<T>],
    mu: &[T],
    phi: impl Fn(T) -> T,
) -> Result<DistanceTable<T>> {
    if functions.iter().any(|f| f.len() != mu.len()) {
        return Err(Error::InvalidParameter("functions and masses differ in length".into()));
    }
    let n = functions.len();
    let mut rows = vec![vec![T::zero(); n]; n];
    for a in 0..n {
        for b in 0..n {
            rows[a][b] = functions[a]
                .iter()
                .zip(&functions[b])
                .zip(mu)
                .fold(T::zero(), |acc, ((&f, &g), &m)| acc + m * phi((f - g).max(T::zero())));
        }
    }
    DistanceTable::from_rows(&rows)
}

/// Min-cap gauge of the one-sided Orlicz cost.
///
/// For convex `phi` the cost is superadditive and usually breaks the triangle
/// inequality; the constructor then fails with a witness.
pub fn make_one_sided_orlicz<T: Scalar>(functions: &[Vec<T>], mu: &[T], phi: impl Fn(T) -> T) -> Result<GaugeSpec<T>> {
    make_min_cap(one_sided_orlicz_cost(functions, mu, phi)?)
}

/// Tabulated gauge. `values` is laid out as `[(x * n + y) * m + k]`.
///
/// In the conorm regime a value of exactly one is clamped to `1 - eps` with a
/// warning; values above one are rejected.
pub fn make_tabulated<T: Scalar>(
    regime: Regime,
    grid: ScaleGrid<T>,
    n: usize,
    mut values: Vec<ExtValue<T>>,
) -> Result<GaugeSpec<T>> {
    let m = grid.len();
    if values.len() != n * n * m {
        return Err(Error::InvalidParameter(format!(
            "table has {} values, expected {n} x {n} x {m}",
            values.len()
        )));
    }
    let mut clamped = 0usize;
    if regime.conorm().is_some() {
        for v in &mut values {
            if v.get() > T::one() {
                return Err(Error::InvalidValue(format!("conorm-regime value {v} outside [0, 1)")));
            }
            if v.get() == T::one() {
                *v = ExtValue::saturating(below_one());
                clamped += 1;
            }
        }
    }
    let mut g = GaugeSpec::from_source(regime, n, Source::Tabulated(Arc::new(Table { grid, n, values })));
    if clamped > 0 {
        g = g.with_warning(format!("{clamped} table values equal to 1 clamped to 1 - eps"));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauge::{check_axioms, convexity_check};

    fn ev(v: f64) -> ExtValue<f64> {
        ExtValue::new(v).unwrap()
    }

    fn line(xs: &[f64]) -> DistanceTable<f64> {
        DistanceTable::from_fn(xs.len(), |i, j| ev((xs[i] - xs[j]).abs()))
    }

    #[test]
    fn min_cap_asymmetric_value() {
        let rho = DistanceTable::from_rows(&[vec![0.0, 1.0], vec![f64::INFINITY, 0.0]]).unwrap();
        let g = make_min_cap(rho).unwrap();
        assert_eq!(g.evaluate(0, 1, 0.5).unwrap().get(), 0.5);
        assert_eq!(g.evaluate(1, 0, 0.5).unwrap().get(), 0.5);
        assert!(!g.claims_symmetric);
    }

    #[test]
    fn min_cap_rejects_broken_triangle() {
        let rho = DistanceTable::from_rows(&[vec![0.0, 1.0, 5.0], vec![1.0, 0.0, 1.0], vec![5.0, 1.0, 0.0]]).unwrap();
        match make_min_cap(rho) {
            Err(Error::NotQuasiPseudometric { points, .. }) => assert_eq!(points, vec![0, 1, 2]),
            other => panic!("expected triangle failure, got {other:?}"),
        }
    }

    #[test]
    fn min_cap_of_symmetric_metric_passes_symmetry() {
        let g = make_min_cap(line(&[0.0, 1.0, 4.0])).unwrap();
        assert!(g.claims_symmetric);
        let grid = ScaleGrid::new(vec![0.5, 1.0]).unwrap();
        let report = check_axioms(&g, &g.all_points(), &grid).unwrap();
        assert_eq!(report.symmetric, Some(true));
        assert_eq!(report.violations_of(crate::report::Axiom::ClaimedSymmetry).count(), 0);
    }

    #[test]
    fn ratio_edge_values() {
        let p = DistanceTable::from_rows(&[vec![0.0, 0.0], vec![1.0, 0.0]]).unwrap();
        let g = make_ratio(p).unwrap();
        for t in [0.1, 1.0, 10.0] {
            assert!(g.evaluate(0, 1, t).unwrap().is_zero());
        }
        assert_eq!(g.evaluate(1, 0, 1.0).unwrap().get(), 0.5);
    }

    #[test]
    fn ratio_clamps_infinity_with_warning() {
        let p = DistanceTable::from_rows(&[vec![0.0, f64::INFINITY], vec![1.0, 0.0]]).unwrap();
        let g = make_ratio(p).unwrap();
        assert_eq!(g.evaluate(0, 1, 3.0).unwrap().get(), 1.0 - f64::EPSILON);
        assert_eq!(g.warnings().len(), 1);
    }

    #[test]
    fn scaled_metric_reciprocal() {
        let d = DistanceTable::from_rows(&[vec![0.0, 2.0], vec![2.0, 0.0]]).unwrap();
        let g = make_scaled_metric(d, ScaleFactor::Reciprocal).unwrap();
        assert_eq!(g.evaluate(0, 1, 4.0).unwrap().get(), 0.5);
        assert!(g.claims_convex);
        let grid = ScaleGrid::new(vec![0.5, 1.0, 2.0, 4.0]).unwrap();
        assert!(convexity_check(&g, &g.all_points(), &grid).unwrap().is_clean());
    }

    #[test]
    fn scaled_metric_profile_reciprocal_is_convex() {
        let grid = ScaleGrid::new(vec![0.5, 1.0, 2.0, 4.0]).unwrap();
        let g_prof = Profile::from_fn(grid.clone(), |t| ev(1.0 / t));
        let g = make_scaled_metric(line(&[0.0, 2.0]), ScaleFactor::Profile(g_prof)).unwrap();
        assert!(g.claims_convex);
        assert_eq!(g.evaluate(0, 1, 4.0).unwrap().get(), 0.5);
    }

    #[test]
    fn scaled_metric_rejects_increasing_factor() {
        let grid = ScaleGrid::new(vec![1.0, 2.0, 3.0]).unwrap();
        let g_prof = Profile::new(grid, vec![ev(1.0), ev(2.0), ev(0.5)]).unwrap();
        match make_scaled_metric(line(&[0.0, 1.0]), ScaleFactor::Profile(g_prof)) {
            Err(Error::IncreasingScaleFactor { lower, upper, .. }) => {
                assert_eq!((lower, upper), (1.0, 2.0));
            }
            other => panic!("expected increasing-factor error, got {other:?}"),
        }
    }

    #[test]
    fn scaled_metric_constant_factor_passes_axioms() {
        let grid = ScaleGrid::new(vec![0.5, 1.0, 1.5, 2.0]).unwrap();
        let one = Profile::from_fn(grid.clone(), |_| ev(1.0));
        let g = make_scaled_metric(line(&[0.0, 1.0, 3.0, 3.5]), ScaleFactor::Profile(one)).unwrap();
        assert!(check_axioms(&g, &g.all_points(), &grid).unwrap().is_clean());
        // t * 1 grows with t.
        assert!(!g.claims_convex);
    }

    #[test]
    fn classical_modular_values() {
        let g = make_classical_modular(Modular::euclidean_power(2.0), vec![vec![2.0], vec![0.0]]).unwrap();
        assert_eq!(g.evaluate(0, 1, 2.0).unwrap().get(), 1.0);
        for t in [0.1, 1.0, 5.0] {
            assert!(g.evaluate(1, 1, t).unwrap().is_zero());
        }
        assert!(g.claims_convex);
    }

    #[test]
    fn classical_modular_rejects_nonzero_origin() {
        let rho = Modular::new("shifted", |v: &[f64]| ev(1.0 + v[0].abs()));
        assert!(matches!(
            make_classical_modular(rho, vec![vec![0.0]]),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn classical_abs_matches_reciprocal_scaled_metric() {
        let xs = [0.0, 0.75, 2.0, -1.5];
        let modular =
            make_classical_modular(Modular::euclidean_power(1.0), xs.iter().map(|&x| vec![x]).collect()).unwrap();
        let scaled = make_scaled_metric(line(&xs), ScaleFactor::Reciprocal).unwrap();
        let grid = ScaleGrid::new(vec![0.25, 0.5, 1.0, 3.0, 8.0]).unwrap();
        for x in 0..xs.len() {
            for y in 0..xs.len() {
                for &t in grid.scales() {
                    let a = modular.evaluate(x, y, t).unwrap().get();
                    let b = scaled.evaluate(x, y, t).unwrap().get();
                    assert!((a - b).abs() <= 1e-15 * b.max(1.0), "{a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn tabulated_conorm_clamps_one_and_rejects_above() {
        let grid = ScaleGrid::new(vec![1.0]).unwrap();
        let g = make_tabulated(
            Regime::Conorm(TConorm::Max),
            grid.clone(),
            2,
            vec![ev(0.0), ev(1.0), ev(0.5), ev(0.0)],
        )
        .unwrap();
        assert_eq!(g.evaluate(0, 1, 1.0).unwrap().get(), 1.0 - f64::EPSILON);
        assert_eq!(g.warnings().len(), 1);
        assert!(make_tabulated(
            Regime::Conorm(TConorm::Max),
            grid,
            2,
            vec![ev(0.0), ev(1.5), ev(0.5), ev(0.0)]
        )
        .is_err());
    }

    #[test]
    fn one_sided_orlicz_with_linear_phi_is_a_min_cap_gauge() {
        let fs = vec![vec![0.0, 1.0], vec![1.0, 0.5], vec![2.0, 2.0]];
        let g = make_one_sided_orlicz(&fs, &[1.0, 0.5], |t| t).unwrap();
        // rho(f2, f0) = 1 * 2 + 0.5 * 1
        assert_eq!(g.evaluate(2, 0, 10.0).unwrap().get(), 2.5);
        assert_eq!(g.evaluate(0, 2, 10.0).unwrap().get(), 0.0);
    }

    #[test]
    fn one_sided_orlicz_with_square_breaks_triangle() {
        let fs = vec![vec![2.0], vec![1.0], vec![0.0]];
        assert!(matches!(
            make_one_sided_orlicz(&fs, &[1.0], |t| t * t),
            Err(Error::NotQuasiPseudometric { .. })
        ));
    }
}
