//! Directed graphs with path quasi-distances and edgewise Orlicz energies.

use petgraph::algo::dijkstra;
use petgraph::graph::{DiGraph, NodeIndex};
use serde::Serialize;

use crate::distance::DistanceTable;
use crate::error::{Error, Result};
use crate::ext::ExtValue;
use crate::gauge::make_min_cap;
use crate::gauge::GaugeSpec;
use crate::luxemburg::{luxemburg_inf, LuxemburgOptions, LuxemburgResult};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Edge<T> {
    pub from: usize,
    pub to: usize,
    /// Edge weight in the energies.
    pub mu: T,
    /// Static traversal cost.
    pub cost: T,
}

/// Finite directed graph with positive edge weights and vertex measure.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DirectedGraph<T> {
    vertices: Vec<String>,
    edges: Vec<Edge<T>>,
    measure: Vec<T>,
}

fn positive<T: Scalar>(what: &str, v: T) -> Result<()> {
    if v > T::zero() && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidValue(format!(
            "{what} must be finite and positive, got {v}"
        )))
    }
}

impl<T: Scalar> DirectedGraph<T> {
    pub fn new(vertices: Vec<String>, edges: Vec<Edge<T>>, measure: Vec<T>) -> Result<Self> {
        let n = vertices.len();
        if measure.len() != n {
            return Err(Error::InvalidValue(format!(
                "{n} vertices but {} measure values",
                measure.len()
            )));
        }
        let mut sorted = vertices.clone();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidValue(format!("vertex {} listed twice", w[0])));
        }
        for &m in &measure {
            positive("vertex measure", m)?;
        }
        for e in &edges {
            for v in [e.from, e.to] {
                if v >= n {
                    return Err(Error::UnknownPoint(v.to_string()));
                }
            }
            positive("edge weight mu", e.mu)?;
            positive("edge cost", e.cost)?;
        }
        Ok(DirectedGraph {
            vertices,
            edges,
            measure,
        })
    }

    /// Vertices labelled `0..n`, unit measure, `mu = 1`.
    pub fn from_costs(n: usize, arcs: &[(usize, usize, T)]) -> Result<Self> {
        let edges = arcs
            .iter()
            .map(|&(from, to, cost)| Edge {
                from,
                to,
                mu: T::one(),
                cost,
            })
            .collect();
        DirectedGraph::new((0..n).map(|i| i.to_string()).collect(), edges, vec![T::one(); n])
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge<T>] {
        &self.edges
    }

    pub fn measure(&self) -> &[T] {
        &self.measure
    }

    pub fn vertex_index(&self, label: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v == label)
            .ok_or_else(|| Error::UnknownPoint(label.to_string()))
    }

    pub fn costs(&self) -> Vec<T> {
        self.edges.iter().map(|e| e.cost).collect()
    }

    /// Every edge reversed; weights and costs travel with their edge.
    pub fn transpose(&self) -> Self {
        DirectedGraph {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| Edge {
                    from: e.to,
                    to: e.from,
                    ..*e
                })
                .collect(),
            measure: self.measure.clone(),
        }
    }

    fn check_costs(&self, costs: &[T]) -> Result<()> {
        if costs.len() != self.edges.len() {
            return Err(Error::InvalidValue(format!(
                "{} costs for {} edges",
                costs.len(),
                self.edges.len()
            )));
        }
        costs.iter().try_for_each(|&c| positive("edge cost", c))
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.len() {
            Ok(())
        } else {
            Err(Error::UnknownPoint(v.to_string()))
        }
    }

    fn petgraph(&self, costs: &[T]) -> DiGraph<(), T> {
        let mut pg = DiGraph::with_capacity(self.len(), self.edges.len());
        for _ in 0..self.len() {
            pg.add_node(());
        }
        for (e, &c) in self.edges.iter().zip(costs) {
            pg.add_edge(NodeIndex::new(e.from), NodeIndex::new(e.to), c);
        }
        pg
    }

    fn distances_from(pg: &DiGraph<(), T>, x: usize) -> Vec<ExtValue<T>> {
        let reached = dijkstra(pg, NodeIndex::new(x), None, |e| *e.weight());
        let mut row = vec![ExtValue::infinity(); pg.node_count()];
        for (v, d) in reached {
            row[v.index()] = ExtValue::saturating(d);
        }
        row
    }
}

/// Least total cost of a directed path `x -> y`.
pub fn forward_distance<T: Scalar>(g: &DirectedGraph<T>, costs: &[T], x: usize, y: usize) -> Result<ExtValue<T>> {
    g.check_costs(costs)?;
    g.check_vertex(x)?;
    g.check_vertex(y)?;
    Ok(DirectedGraph::distances_from(&g.petgraph(costs), x)[y])
}

/// Forward distance in the transposed graph.
pub fn backward_distance<T: Scalar>(g: &DirectedGraph<T>, costs: &[T], x: usize, y: usize) -> Result<ExtValue<T>> {
    forward_distance(&g.transpose(), costs, x, y)
}

/// All forward distances, one single-source run per vertex.
pub fn forward_distance_table<T: Scalar>(g: &DirectedGraph<T>, costs: &[T]) -> Result<DistanceTable<T>> {
    g.check_costs(costs)?;
    let pg = g.petgraph(costs);
    let rows: Vec<Vec<ExtValue<T>>> = (0..g.len()).map(|x| DirectedGraph::distances_from(&pg, x)).collect();
    Ok(DistanceTable::from_fn(g.len(), |x, y| rows[x][y]))
}

pub fn backward_distance_table<T: Scalar>(g: &DirectedGraph<T>, costs: &[T]) -> Result<DistanceTable<T>> {
    forward_distance_table(&g.transpose(), costs)
}

/// Min-cap gauge `min{d(x, y), t}` of the forward path distance, labelled by
/// vertex.
pub fn graph_gauge<T: Scalar>(g: &DirectedGraph<T>, costs: &[T]) -> Result<GaugeSpec<T>> {
    make_min_cap(forward_distance_table(g, costs)?)?.with_labels(g.vertices.clone())
}

/// Fraction of ordered pairs `x != y` with `d(x, y) != d(y, x)`.
pub fn asymmetry_index<T: Scalar>(g: &DirectedGraph<T>, costs: &[T]) -> Result<T> {
    let d = forward_distance_table(g, costs)?;
    let n = g.len();
    if n < 2 {
        return Ok(T::zero());
    }
    let mut asym = 0usize;
    for x in 0..n {
        for y in 0..n {
            if x != y && d.get(x, y) != d.get(y, x) {
                asym += 1;
            }
        }
    }
    Ok(T::lit(asym as f64) / T::lit((n * (n - 1)) as f64))
}

/// Edgewise Orlicz function `phi(e, s)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EdgeOrliczFamily<T> {
    /// `s^p`.
    Power { p: T },
    /// `s^p + a(e) s^q`, one `a` per edge.
    DoublePhase { p: T, q: T, a: Vec<T> },
}

impl<T: Scalar> EdgeOrliczFamily<T> {
    pub fn power(p: T) -> Result<Self> {
        check_exponent(p)?;
        Ok(EdgeOrliczFamily::Power { p })
    }

    pub fn double_phase(p: T, q: T, a: Vec<T>) -> Result<Self> {
        check_exponent(p)?;
        if !(q > p) || !q.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "double phase needs q > p, got p = {p}, q = {q}"
            )));
        }
        if let Some(v) = a.iter().find(|v| !(**v >= T::zero()) || !v.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "coefficient a(e) = {v} must be finite and >= 0"
            )));
        }
        Ok(EdgeOrliczFamily::DoublePhase { p, q, a })
    }

    pub fn eval(&self, e: usize, s: T) -> ExtValue<T> {
        let s = s.abs();
        match self {
            EdgeOrliczFamily::Power { p } => ExtValue::saturating(s.powf(*p)),
            EdgeOrliczFamily::DoublePhase { p, q, a } => {
                let low = s.powf(*p);
                let high = if a[e] == T::zero() {
                    T::zero()
                } else {
                    a[e] * s.powf(*q)
                };
                ExtValue::saturating(low + high)
            }
        }
    }

    fn check_edges(&self, m: usize) -> Result<()> {
        match self {
            EdgeOrliczFamily::DoublePhase { a, .. } if a.len() != m => Err(Error::InvalidParameter(format!(
                "{} coefficients for {m} edges",
                a.len()
            ))),
            _ => Ok(()),
        }
    }
}

fn check_exponent<T: Scalar>(p: T) -> Result<()> {
    if p >= T::one() && p.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "exponent must be finite and >= 1, got {p}"
        )))
    }
}

fn check_function<T: Scalar>(g: &DirectedGraph<T>, f: &[T]) -> Result<()> {
    if f.len() < g.len() {
        return Err(Error::MissingValue(g.vertices[f.len()].clone()));
    }
    if f.len() > g.len() {
        return Err(Error::InvalidValue(format!(
            "{} values for {} vertices",
            f.len(),
            g.len()
        )));
    }
    match f.iter().position(|v| !v.is_finite()) {
        Some(i) => Err(Error::InvalidValue(format!("value at {} is not finite", g.vertices[i]))),
        None => Ok(()),
    }
}

/// Per-edge terms `mu(e) phi(e, |grad f(e)|)`.
///
/// Forward and backward differences only differ in sign, so these terms are
/// shared by both energies.
pub fn edge_energies<T: Scalar>(g: &DirectedGraph<T>, f: &[T], phi: &EdgeOrliczFamily<T>) -> Result<Vec<ExtValue<T>>> {
    check_function(g, f)?;
    phi.check_edges(g.edges.len())?;
    Ok(g.edges
        .iter()
        .enumerate()
        .map(|(i, e)| phi.eval(i, f[e.to] - f[e.from]).scale(e.mu))
        .collect())
}

fn sum_ext<T: Scalar>(terms: impl IntoIterator<Item = ExtValue<T>>) -> ExtValue<T> {
    ExtValue::saturating(terms.into_iter().fold(T::zero(), |acc, v| acc + v.get()))
}

/// `sum_e mu(e) phi(e, |f(v) - f(u)|)` over edges `e = u -> v`.
pub fn forward_energy<T: Scalar>(g: &DirectedGraph<T>, f: &[T], phi: &EdgeOrliczFamily<T>) -> Result<ExtValue<T>> {
    check_function(g, f)?;
    phi.check_edges(g.edges.len())?;
    Ok(sum_ext(
        g.edges
            .iter()
            .enumerate()
            .map(|(i, e)| phi.eval(i, f[e.to] - f[e.from]).scale(e.mu)),
    ))
}

/// `sum_e mu(e) phi(e, |f(u) - f(v)|)` over edges `e = u -> v`.
pub fn backward_energy<T: Scalar>(g: &DirectedGraph<T>, f: &[T], phi: &EdgeOrliczFamily<T>) -> Result<ExtValue<T>> {
    check_function(g, f)?;
    phi.check_edges(g.edges.len())?;
    Ok(sum_ext(
        g.edges
            .iter()
            .enumerate()
            .map(|(i, e)| phi.eval(i, f[e.from] - f[e.to]).scale(e.mu)),
    ))
}

/// `inf { lambda > 0 : E+(f / lambda) <= 1 }`.
pub fn energy_luxemburg<T: Scalar>(
    g: &DirectedGraph<T>,
    f: &[T],
    phi: &EdgeOrliczFamily<T>,
    opts: &LuxemburgOptions<T>,
) -> Result<LuxemburgResult<T>> {
    check_function(g, f)?;
    phi.check_edges(g.edges.len())?;
    luxemburg_inf(
        |lambda| {
            let scaled: Vec<T> = f.iter().map(|&v| v / lambda).collect();
            forward_energy(g, &scaled, phi)
        },
        opts,
    )
}

/// Piecewise-constant edge costs: `costs[k]` applies on `[times[k], times[k + 1])`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DynamicCostSchedule<T> {
    times: Vec<T>,
    costs: Vec<Vec<T>>,
}

/// Costs frozen at a query time.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Snapshot<T> {
    pub requested: T,
    /// Listed time whose costs were used.
    pub time: T,
    /// The query fell outside `[times[0], times[last]]`.
    pub clamped: bool,
    pub costs: Vec<T>,
}

impl<T: Scalar> DynamicCostSchedule<T> {
    pub fn new(times: Vec<T>, costs: Vec<Vec<T>>, edges: usize) -> Result<Self> {
        if times.is_empty() {
            return Err(Error::InvalidValue("a cost schedule needs at least one time".into()));
        }
        if times.iter().any(|t| !t.is_finite()) || times.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidValue(
                "schedule times must be finite and strictly increasing".into(),
            ));
        }
        if costs.len() != times.len() {
            return Err(Error::InvalidValue(format!(
                "{} times but {} cost rows",
                times.len(),
                costs.len()
            )));
        }
        for (t, row) in times.iter().zip(&costs) {
            if row.len() != edges {
                return Err(Error::InvalidValue(format!(
                    "time {t} covers {} of {edges} edges",
                    row.len()
                )));
            }
            row.iter().try_for_each(|&c| positive("edge cost", c))?;
        }
        Ok(DynamicCostSchedule { times, costs })
    }

    /// The same costs at every time.
    pub fn constant(costs: Vec<T>) -> Result<Self> {
        let m = costs.len();
        DynamicCostSchedule::new(vec![T::zero()], vec![costs], m)
    }

    pub fn times(&self) -> &[T] {
        &self.times
    }

    pub fn costs(&self) -> &[Vec<T>] {
        &self.costs
    }

    pub fn snapshot(&self, t: T) -> Snapshot<T> {
        let first = self.times[0];
        let last = self.times[self.times.len() - 1];
        let k = self.times.partition_point(|&s| s <= t).saturating_sub(1);
        Snapshot {
            requested: t,
            time: self.times[k],
            clamped: t < first || t > last,
            costs: self.costs[k].clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DynamicDistance<T: Scalar> {
    pub value: ExtValue<T>,
    pub time: T,
    pub clamped: bool,
}

/// Forward distance with the costs frozen at time `t`.
pub fn dynamic_distance<T: Scalar>(
    g: &DirectedGraph<T>,
    schedule: &DynamicCostSchedule<T>,
    t: T,
    x: usize,
    y: usize,
) -> Result<DynamicDistance<T>> {
    let snap = schedule.snapshot(t);
    Ok(DynamicDistance {
        value: forward_distance(g, &snap.costs, x, y)?,
        time: snap.time,
        clamped: snap.clamped,
    })
}
