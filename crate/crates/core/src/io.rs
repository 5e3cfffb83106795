//! JSON documents for gauges, graphs, schedules, measure spaces, Orlicz
//! functions, point functions, sequences and sequence families.
//!
//! Point ids may be JSON strings or numbers; numbers are used by their
//! decimal form. Extended reals accept the strings `"inf"` and `"-inf"`.
//! Objects are read into ordered maps, so output is deterministic.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value};

use crate::completeness::{SampledSequence, TruncatedSequenceFamily};
use crate::conorm::TConorm;
use crate::distance::DistanceTable;
use crate::envelopes::PartialFunction;
use crate::error::{Error, Result};
use crate::ext::ExtValue;
use crate::gauge::{make_min_cap, make_ratio, make_tabulated, GaugeSpec, Regime};
use crate::graph::{DirectedGraph, DynamicCostSchedule, Edge};
use crate::grid::ScaleGrid;
use crate::orlicz::{DiscreteMeasureSpace, MusielakOrlicz, OneSidedPair};
use crate::scalar::Scalar;

/// Parses JSON text; syntax errors carry line and column.
pub fn parse_json(text: &str) -> Result<Value> {
    Ok(serde_json::from_str(text)?)
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_json(&text)
}

/// Deterministic pretty JSON with a trailing newline.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidValue(msg.into())
}

fn field<'a>(obj: &'a Value, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| Error::MissingValue(key.to_string()))
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| invalid(format!("{what} must be a JSON object")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| invalid(format!("{what} must be a JSON array")))
}

/// A point id: a string, or a number used by its decimal form.
pub fn id_string(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(invalid(format!("point id {other} must be a string or a number"))),
    }
}

fn ids(v: &Value, what: &str) -> Result<Vec<String>> {
    let out: Vec<String> = array(v, what)?.iter().map(id_string).collect::<Result<_>>()?;
    let mut sorted = out.clone();
    sorted.sort();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(invalid(format!("{what} lists `{}` twice", w[0])));
    }
    Ok(out)
}

/// A real number, or `"inf"` / `"-inf"` (also `"infinity"`, any case).
pub fn number<T: Scalar>(v: &Value) -> Result<T> {
    match v {
        Value::Number(n) => n
            .as_f64()
            .map(T::lit)
            .ok_or_else(|| invalid(format!("number {n} is out of range"))),
        Value::String(s) => match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "+inf" | "infinity" | "+infinity" => Ok(T::infinity()),
            "-inf" | "-infinity" => Ok(T::neg_infinity()),
            _ => Err(invalid(format!("`{s}` is not a number"))),
        },
        other => Err(invalid(format!("{other} is not a number"))),
    }
}

fn numbers<T: Scalar>(v: &Value, what: &str) -> Result<Vec<T>> {
    array(v, what)?.iter().map(number).collect()
}

fn ext<T: Scalar>(v: &Value) -> Result<ExtValue<T>> {
    ExtValue::new(number(v)?)
}

/// Extended real as JSON: finite numbers stay numbers, infinities become strings.
pub fn ext_json<T: Scalar>(v: ExtValue<T>) -> Value {
    real_json(v.get())
}

pub fn real_json<T: Scalar>(v: T) -> Value {
    if v.is_infinite() {
        Value::String(if v > T::zero() { "inf" } else { "-inf" }.into())
    } else {
        json!(v.as_f64())
    }
}

pub fn pair_key(x: &str, y: &str) -> String {
    format!("{x}|{y}")
}

fn split_pair(key: &str) -> Result<(&str, &str)> {
    key.split_once('|')
        .ok_or_else(|| invalid(format!("key `{key}` is not of the form `x|y`")))
}

fn position(labels: &[String], id: &str) -> Result<usize> {
    labels
        .iter()
        .position(|l| l == id)
        .ok_or_else(|| Error::UnknownPoint(id.to_string()))
}

/// Reads `{"x|y": value}` into an `n x n` table. Diagonal entries default
/// to zero and missing off-diagonal entries to `missing`.
fn pair_table<T: Scalar>(
    v: &Value,
    labels: &[String],
    missing: Option<ExtValue<T>>,
    mut read: impl FnMut(&Value) -> Result<ExtValue<T>>,
) -> Result<DistanceTable<T>> {
    let n = labels.len();
    let mut cells: Vec<Option<ExtValue<T>>> = vec![None; n * n];
    for (key, value) in object(v, "pair table")? {
        let (x, y) = split_pair(key)?;
        let (i, j) = (position(labels, x)?, position(labels, y)?);
        cells[i * n + j] = Some(read(value)?);
    }
    let mut table = DistanceTable::from_fn(n, |_, _| ExtValue::zero());
    for i in 0..n {
        for j in 0..n {
            let v = match cells[i * n + j] {
                Some(v) => v,
                None if i == j => ExtValue::zero(),
                None => missing.ok_or_else(|| Error::MissingValue(pair_key(&labels[i], &labels[j])))?,
            };
            table.set(i, j, v);
        }
    }
    Ok(table)
}

/// A gauge document together with the grid it was given on.
#[derive(Clone, Debug)]
pub struct LoadedGauge<T: Scalar> {
    pub gauge: GaugeSpec<T>,
    pub grid: Option<ScaleGrid<T>>,
}

fn regime_from(v: &Value) -> Result<Regime> {
    let regime = field(v, "regime")?.as_str().unwrap_or_default();
    match regime {
        "additive" => Ok(Regime::Additive),
        "conorm" => {
            let name = v.get("conorm").and_then(Value::as_str).unwrap_or("max");
            TConorm::parse(name)
                .map(Regime::Conorm)
                .ok_or_else(|| invalid(format!("unknown conorm `{name}`")))
        }
        other => Err(invalid(format!(
            "regime must be \"additive\" or \"conorm\", got `{other}`"
        ))),
    }
}

/// Gauge document.
///
/// Tabulated (default `kind`): `{"regime", "conorm"?, "points", "grid",
/// "table": {"x|y": [one value per scale]}}`; missing diagonal profiles are
/// zero. Closed forms: `{"kind": "min_cap" | "ratio", "points", "rho":
/// {"x|y": value}, "grid"?}`; missing off-diagonal distances are `inf`.
pub fn gauge_from_value<T: Scalar>(v: &Value) -> Result<LoadedGauge<T>> {
    let labels = ids(field(v, "points")?, "points")?;
    let grid = match v.get("grid") {
        Some(g) => Some(ScaleGrid::new(numbers(g, "grid")?)?),
        None => None,
    };
    let kind = v.get("kind").and_then(Value::as_str).unwrap_or("tabulated");
    let gauge = match kind {
        "tabulated" => {
            let regime = regime_from(v)?;
            let grid = grid.clone().ok_or_else(|| Error::MissingValue("grid".into()))?;
            let n = labels.len();
            let m = grid.len();
            let mut values = vec![None; n * n];
            for (key, profile) in object(field(v, "table")?, "table")? {
                let (x, y) = split_pair(key)?;
                let (i, j) = (position(&labels, x)?, position(&labels, y)?);
                let row: Vec<ExtValue<T>> = array(profile, key)?.iter().map(ext).collect::<Result<_>>()?;
                if row.len() != m {
                    return Err(invalid(format!(
                        "profile `{key}` has {} values for {m} scales",
                        row.len()
                    )));
                }
                values[i * n + j] = Some(row);
            }
            let mut flat = Vec::with_capacity(n * n * m);
            for i in 0..n {
                for j in 0..n {
                    match values[i * n + j].take() {
                        Some(row) => flat.extend(row),
                        None if i == j => flat.extend(std::iter::repeat_n(ExtValue::zero(), m)),
                        None => return Err(Error::MissingValue(pair_key(&labels[i], &labels[j]))),
                    }
                }
            }
            make_tabulated(regime, grid, n, flat)?
        }
        "min_cap" | "ratio" => {
            let rho = pair_table(field(v, "rho")?, &labels, Some(ExtValue::infinity()), ext)?;
            if kind == "min_cap" {
                make_min_cap(rho)?
            } else {
                make_ratio(rho)?
            }
        }
        other => return Err(invalid(format!("unknown gauge kind `{other}`"))),
    };
    Ok(LoadedGauge {
        gauge: gauge.with_labels(labels)?,
        grid,
    })
}

/// Tabulated document of `g` sampled on `grid`.
pub fn gauge_to_value<T: Scalar>(g: &GaugeSpec<T>, grid: &ScaleGrid<T>) -> Value {
    let labels = g.labels();
    let mut table = BTreeMap::new();
    for x in 0..g.len() {
        for y in 0..g.len() {
            let row: Vec<Value> = grid
                .scales()
                .iter()
                .map(|&t| ext_json(g.eval_unchecked(x, y, t)))
                .collect();
            table.insert(pair_key(&labels[x], &labels[y]), Value::Array(row));
        }
    }
    let mut doc = json!({
        "regime": if g.regime().is_additive() { "additive" } else { "conorm" },
        "points": labels,
        "grid": grid.scales().iter().map(|s| s.as_f64()).collect::<Vec<_>>(),
        "table": table,
    });
    if let Some(c) = g.regime().conorm() {
        doc["conorm"] = json!(c.name());
    }
    doc
}

/// Graph document `{"vertices", "edges": [{"from", "to", "mu"?, "cost"?}],
/// "measure"?: {id: m}}`. `mu`, `cost` and missing measures default to one.
pub fn graph_from_value<T: Scalar>(v: &Value) -> Result<DirectedGraph<T>> {
    let vertices = ids(field(v, "vertices")?, "vertices")?;
    let mut edges = Vec::new();
    for e in array(field(v, "edges")?, "edges")? {
        let from = position(&vertices, &id_string(field(e, "from")?)?)?;
        let to = position(&vertices, &id_string(field(e, "to")?)?)?;
        let opt = |k: &str| e.get(k).map(number::<T>).transpose().map(|x| x.unwrap_or_else(T::one));
        edges.push(Edge {
            from,
            to,
            mu: opt("mu")?,
            cost: opt("cost")?,
        });
    }
    let mut measure = vec![T::one(); vertices.len()];
    if let Some(m) = v.get("measure") {
        for (id, value) in object(m, "measure")? {
            measure[position(&vertices, id)?] = number(value)?;
        }
    }
    DirectedGraph::new(vertices, edges, measure)
}

pub fn graph_to_value<T: Scalar>(g: &DirectedGraph<T>) -> Value {
    let labels = g.vertices();
    let edges: Vec<Value> = g
        .edges()
        .iter()
        .map(|e| {
            json!({
                "from": labels[e.from],
                "to": labels[e.to],
                "mu": e.mu.as_f64(),
                "cost": e.cost.as_f64(),
            })
        })
        .collect();
    let measure: BTreeMap<&String, f64> = labels.iter().zip(g.measure()).map(|(l, m)| (l, m.as_f64())).collect();
    json!({ "vertices": labels, "edges": edges, "measure": measure })
}

/// Identifies an edge by its position in the edge list or as `from->to`
/// (which must be unique).
fn edge_index<T: Scalar>(g: &DirectedGraph<T>, key: &str) -> Result<usize> {
    if let Ok(i) = key.parse::<usize>() {
        return if i < g.edges().len() {
            Ok(i)
        } else {
            Err(Error::UnknownPoint(format!("edge {key}")))
        };
    }
    let (from, to) = key
        .split_once("->")
        .ok_or_else(|| invalid(format!("edge `{key}` is neither an index nor `from->to`")))?;
    let (u, v) = (g.vertex_index(from)?, g.vertex_index(to)?);
    let hits: Vec<usize> = (0..g.edges().len())
        .filter(|&i| g.edges()[i].from == u && g.edges()[i].to == v)
        .collect();
    match hits.as_slice() {
        [i] => Ok(*i),
        [] => Err(Error::UnknownPoint(format!("edge {key}"))),
        _ => Err(invalid(format!("edge `{key}` is ambiguous; use its index"))),
    }
}

/// Schedule document `{"times": [...], "costs": {"time|edge": value}}`.
/// Every edge needs a cost at every listed time.
pub fn schedule_from_value<T: Scalar>(v: &Value, g: &DirectedGraph<T>) -> Result<DynamicCostSchedule<T>> {
    let times: Vec<T> = numbers(field(v, "times")?, "times")?;
    let m = g.edges().len();
    let mut costs: Vec<Vec<Option<T>>> = vec![vec![None; m]; times.len()];
    for (key, value) in object(field(v, "costs")?, "costs")? {
        let (t, e) = split_pair(key)?;
        let t: T = t
            .trim()
            .parse::<f64>()
            .map(T::lit)
            .map_err(|_| invalid(format!("time `{t}` is not a number")))?;
        let k = times
            .iter()
            .position(|&s| s == t)
            .ok_or_else(|| invalid(format!("time {t} in `{key}` is not listed in times")))?;
        costs[k][edge_index(g, e)?] = Some(number(value)?);
    }
    let mut rows = Vec::with_capacity(times.len());
    for (k, row) in costs.into_iter().enumerate() {
        let row: Vec<T> = row
            .into_iter()
            .enumerate()
            .map(|(e, c)| c.ok_or_else(|| Error::MissingValue(format!("{}|{e}", times[k]))))
            .collect::<Result<_>>()?;
        rows.push(row);
    }
    DynamicCostSchedule::new(times, rows, m)
}

/// Space document `{"points": [ids], "mu": {id: mass}}`.
pub fn space_from_value<T: Scalar>(v: &Value) -> Result<DiscreteMeasureSpace<T>> {
    let points = ids(field(v, "points")?, "points")?;
    let mu = function_from_value(field(v, "mu")?, &points)?;
    DiscreteMeasureSpace::new(points, mu)
}

/// Per-point parameters: an array in point order, an object keyed by id, or
/// one number for every point.
fn per_point<T: Scalar>(v: &Value, labels: &[String]) -> Result<Vec<T>> {
    match v {
        Value::Array(_) => {
            let out = numbers(v, "parameters")?;
            if out.len() != labels.len() {
                return Err(invalid(format!("{} parameters for {} points", out.len(), labels.len())));
            }
            Ok(out)
        }
        Value::Object(_) => function_from_value(v, labels),
        _ => Ok(vec![number(v)?; labels.len()]),
    }
}

/// Orlicz document `{"kind": "variable_exponent", "p"}`,
/// `{"kind": "double_phase", "p", "q", "a"}` or
/// `{"kind": "weighted", "w", "inner": {...}}`.
pub fn orlicz_from_value<T: Scalar>(v: &Value, space: &DiscreteMeasureSpace<T>) -> Result<MusielakOrlicz<T>> {
    let labels = space.points();
    let kind = field(v, "kind")?.as_str().unwrap_or_default();
    match kind {
        "variable_exponent" => MusielakOrlicz::variable_exponent(per_point(field(v, "p")?, labels)?),
        "double_phase" => MusielakOrlicz::double_phase(
            number(field(v, "p")?)?,
            number(field(v, "q")?)?,
            per_point(field(v, "a")?, labels)?,
        ),
        "weighted" => MusielakOrlicz::weighted(
            per_point(field(v, "w")?, labels)?,
            orlicz_from_value(field(v, "inner")?, space)?,
        ),
        other => Err(invalid(format!("unknown Orlicz kind `{other}`"))),
    }
}

pub fn one_sided_pair_from_value<T: Scalar>(v: &Value, space: &DiscreteMeasureSpace<T>) -> Result<OneSidedPair<T>> {
    OneSidedPair::new(
        orlicz_from_value(field(v, "psi1")?, space)?,
        orlicz_from_value(field(v, "psi2")?, space)?,
    )
}

/// Function document `{id: value}` defined on every point.
pub fn function_from_value<T: Scalar>(v: &Value, labels: &[String]) -> Result<Vec<T>> {
    let (domain, values) = partial_from_value(v, labels)?;
    let mut out = vec![None; labels.len()];
    for (i, x) in domain.into_iter().zip(values) {
        out[i] = Some(x);
    }
    out.into_iter()
        .zip(labels)
        .map(|(x, l)| x.ok_or_else(|| Error::MissingValue(l.clone())))
        .collect()
}

/// `{id: value}` on a subset, as `(indices, values)` in label order.
pub fn partial_from_value<T: Scalar>(v: &Value, labels: &[String]) -> Result<(Vec<usize>, Vec<T>)> {
    let mut pairs: Vec<(usize, T)> = object(v, "function")?
        .iter()
        .map(|(id, x)| Ok((position(labels, id)?, number(x)?)))
        .collect::<Result<_>>()?;
    pairs.sort_by_key(|p| p.0);
    Ok(pairs.into_iter().unzip())
}

pub fn function_to_value<T: Scalar>(labels: &[String], values: &[Option<T>]) -> Value {
    let map: BTreeMap<&String, Value> = labels
        .iter()
        .zip(values)
        .filter_map(|(l, v)| v.map(|v| (l, real_json(v))))
        .collect();
    json!(map)
}

/// Envelope document `{"points", "distances": {"x|y": d}, "function":
/// {id: value}, "lipschitz"}`. Missing off-diagonal distances are `inf`.
pub fn envelope_problem_from_value<T: Scalar>(
    v: &Value,
) -> Result<(Vec<String>, DistanceTable<T>, PartialFunction<T>)> {
    let labels = ids(field(v, "points")?, "points")?;
    let d = pair_table(field(v, "distances")?, &labels, Some(ExtValue::infinity()), ext)?;
    let (domain, values) = partial_from_value(field(v, "function")?, &labels)?;
    let f = PartialFunction::new(domain, values, number(field(v, "lipschitz")?)?)?;
    Ok((labels, d, f))
}

/// Sequence document `{"space": <gauge document or path>, "sequence": [ids]}`.
/// Relative paths resolve against `base`.
pub fn sequence_from_value<T: Scalar>(v: &Value, base: Option<&Path>) -> Result<(LoadedGauge<T>, SampledSequence)> {
    let space = field(v, "space")?;
    let loaded = match space {
        Value::String(p) => {
            let path = match base {
                Some(b) => b.join(p),
                None => PathBuf::from(p),
            };
            gauge_from_value(&read_json(&path)?)?
        }
        other => gauge_from_value(other)?,
    };
    let labels = loaded.gauge.labels().to_vec();
    let points = array(field(v, "sequence")?, "sequence")?
        .iter()
        .map(|x| position(&labels, &id_string(x)?))
        .collect::<Result<Vec<_>>>()?;
    Ok((loaded, SampledSequence::new(points)?))
}

/// Family document `{"p", "members": [[reals]]}`.
pub fn family_from_value<T: Scalar>(v: &Value) -> Result<TruncatedSequenceFamily<T>> {
    let members = array(field(v, "members")?, "members")?
        .iter()
        .map(|m| numbers(m, "member"))
        .collect::<Result<Vec<Vec<T>>>>()?;
    TruncatedSequenceFamily::new(number(field(v, "p")?)?, members)
}

/// Rows as CSV with a header of labels; infinities print as `inf`.
pub fn table_csv<T: Scalar>(labels: &[String], d: &DistanceTable<T>) -> String {
    let mut out = String::from("from");
    for l in labels {
        out.push(',');
        out.push_str(l);
    }
    out.push('\n');
    for (i, l) in labels.iter().enumerate() {
        out.push_str(l);
        for j in 0..labels.len() {
            let v = d.get(i, j);
            out.push(',');
            if v.is_infinite() {
                out.push_str("inf");
            } else {
                out.push_str(&v.get().as_f64().to_string());
            }
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO_POINT: &str = r#"{
        "regime": "conorm", "conorm": "max",
        "points": ["a", "b"], "grid": [1.0],
        "table": {"a|a": [0], "a|b": [0], "b|a": [0.9], "b|b": [0]}
    }"#;

    #[test]
    fn tabulated_gauge_round_trip() {
        let loaded = gauge_from_value::<f64>(&parse_json(TWO_POINT).unwrap()).unwrap();
        let g = &loaded.gauge;
        assert_eq!(g.labels(), ["a", "b"]);
        assert_eq!(g.evaluate(1, 0, 1.0).unwrap().get(), 0.9);
        let grid = loaded.grid.unwrap();
        let doc = gauge_to_value(g, &grid);
        let again = gauge_from_value::<f64>(&doc).unwrap();
        assert_eq!(gauge_to_value(&again.gauge, &grid), doc);
    }

    #[test]
    fn inf_strings_and_defaults() {
        let text = r#"{"regime": "additive", "points": [1, 2], "grid": [1, 2],
            "table": {"1|2": ["inf", 3], "2|1": [1, "Infinity"]}}"#;
        let g = gauge_from_value::<f64>(&parse_json(text).unwrap()).unwrap().gauge;
        assert!(g.evaluate(0, 1, 1.0).unwrap().is_infinite());
        assert!(g.evaluate(0, 0, 2.0).unwrap().is_zero());
        assert_eq!(g.labels(), ["1", "2"]);
    }

    #[test]
    fn missing_pair_is_reported() {
        let text = r#"{"regime": "additive", "points": ["a", "b"], "grid": [1], "table": {"a|b": [1]}}"#;
        assert!(
            matches!(gauge_from_value::<f64>(&parse_json(text).unwrap()), Err(Error::MissingValue(k)) if k == "b|a")
        );
    }

    #[test]
    fn malformed_json_has_position() {
        let err = parse_json("{\"regime\": \n  additive}").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 2"), "{msg}");
    }

    #[test]
    fn closed_form_gauges() {
        let text = r#"{"kind": "min_cap", "points": ["a", "b"], "rho": {"a|b": 2}}"#;
        let g = gauge_from_value::<f64>(&parse_json(text).unwrap()).unwrap().gauge;
        assert_eq!(g.evaluate(0, 1, 5.0).unwrap().get(), 2.0);
        assert_eq!(g.evaluate(1, 0, 5.0).unwrap().get(), 5.0);
    }

    #[test]
    fn graph_and_schedule() {
        let text = r#"{"vertices": ["a", "b", "c"],
            "edges": [{"from": "a", "to": "b", "mu": 2, "cost": 1}, {"from": "b", "to": "c", "cost": 3}],
            "measure": {"a": 0.5}}"#;
        let g = graph_from_value::<f64>(&parse_json(text).unwrap()).unwrap();
        assert_eq!(g.edges()[1].mu, 1.0);
        assert_eq!(g.measure(), [0.5, 1.0, 1.0]);
        let back = graph_from_value::<f64>(&graph_to_value(&g)).unwrap();
        assert_eq!(back, g);
        let sched = r#"{"times": [0, 1], "costs": {"0|0": 1, "0|b->c": 3, "1|a->b": 2, "1|1": 6}}"#;
        let s = schedule_from_value(&parse_json(sched).unwrap(), &g).unwrap();
        assert_eq!(s.costs()[1], vec![2.0, 6.0]);
        let partial = r#"{"times": [0], "costs": {"0|0": 1}}"#;
        assert!(matches!(
            schedule_from_value(&parse_json(partial).unwrap(), &g),
            Err(Error::MissingValue(_))
        ));
    }

    #[test]
    fn space_orlicz_function() {
        let space =
            space_from_value::<f64>(&parse_json(r#"{"points": ["x", "y"], "mu": {"x": 1, "y": 2}}"#).unwrap()).unwrap();
        let phi = orlicz_from_value(
            &parse_json(r#"{"kind": "weighted", "w": [1, 3], "inner": {"kind": "double_phase", "p": 1, "q": 2, "a": {"x": 0, "y": 1}}}"#).unwrap(),
            &space,
        )
        .unwrap();
        assert_eq!(phi.eval(1, 2.0).get(), 3.0 * (2.0 + 4.0));
        let f = function_from_value::<f64>(&parse_json(r#"{"y": -1, "x": 2}"#).unwrap(), space.points()).unwrap();
        assert_eq!(f, vec![2.0, -1.0]);
        assert!(function_from_value::<f64>(&parse_json(r#"{"x": 2}"#).unwrap(), space.points()).is_err());
        let ve = orlicz_from_value(&parse_json(r#"{"kind": "variable_exponent", "p": 2}"#).unwrap(), &space).unwrap();
        assert_eq!(ve, MusielakOrlicz::variable_exponent(vec![2.0, 2.0]).unwrap());
    }

    #[test]
    fn sequence_and_family() {
        let doc = format!(r#"{{"space": {TWO_POINT}, "sequence": ["a", "b", "b"]}}"#);
        let (_, seq) = sequence_from_value::<f64>(&parse_json(&doc).unwrap(), None).unwrap();
        assert_eq!(seq.points(), [0, 1, 1]);
        let fam = family_from_value::<f64>(&parse_json(r#"{"p": 2, "members": [[1, 0.5], [0]]}"#).unwrap()).unwrap();
        assert_eq!(fam.members()[1], vec![0.0, 0.0]);
    }

    #[test]
    fn csv_output() {
        let d = DistanceTable::from_rows(&[vec![0.0, 1.5], vec![f64::INFINITY, 0.0]]).unwrap();
        let csv = table_csv(&["a".to_string(), "b".to_string()], &d);
        assert_eq!(csv, "from,a,b\na,0,1.5\nb,inf,0\n");
    }
}
